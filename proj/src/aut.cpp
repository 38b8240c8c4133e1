#include "xnr/aut.hpp"

#include <algorithm>
#include <set>

#include "xnr/errors.hpp"
#include "xnr/rng.hpp"

namespace xnr {

namespace {

Fe b1_of(const CurveParams& params, const Fe& gamma, const Fe& delta) {
  return (frobenius(delta, params.n - params.r) + frobenius(delta, params.r)) * gamma;
}

Aut raw_aut(const CurveParams& params, Fe gamma, Fe delta, Fe mu) {
  Aut a;
  a.lambda = gamma * frobenius(gamma, 1);
  a.b1 = b1_of(params, gamma, delta);
  a.gamma = std::move(gamma);
  a.delta = std::move(delta);
  a.mu = std::move(mu);
  return a;
}

Aut compose_raw(const CurveParams& params, const Aut& a, const Aut& b) {
  return raw_aut(params, a.gamma * b.gamma, a.gamma * b.delta + a.delta, a.lambda * b.mu + a.b1 * b.delta + a.mu);
}

Aut inverse_raw(const CurveParams& params, const Aut& a) {
  const Fe gi = inv(a.gamma);
  const Fe s = frobenius(a.delta, params.n - params.r) + frobenius(a.delta, params.r);
  return raw_aut(params, gi, -(a.delta * gi), (s * a.delta - a.mu) / a.lambda);
}

bool on_curve_dm(const CurveParams& params, const Fe& delta, const Fe& mu) {
  return on_curve(params, AffinePoint{delta, mu});
}

std::string describe(const Aut& a) {
  return "(gamma #" + std::to_string(a.gamma.index()) + ", delta #" + std::to_string(a.delta.index()) +
         ", mu #" + std::to_string(a.mu.index()) + ")";
}

}  // namespace

BigInt h_order(const CurveParams& params) {
  return ipow(params.q(), params.n % 2 == 1 ? 1 : 2) - 1;
}

Aut make_aut(const CurveParams& params, const Fe& gamma, const Fe& delta, const Fe& mu) {
  if (gamma.is_zero()) throw InvalidArgument("gamma_nonzero", "gamma must be nonzero");
  if (!pow(gamma, h_order(params)).is_one()) {
    throw InvalidArgument("gamma_order", "gamma^" + h_order(params).str() + " != 1");
  }
  if (!on_curve_dm(params, delta, mu)) {
    throw InvalidArgument("point_on_curve", "(delta, mu) is not a point of the curve");
  }
  return raw_aut(params, gamma, delta, mu);
}

Aut identity_aut(const CurveParams& params) {
  const FieldCtx& f = *params.field;
  return raw_aut(params, f.one(), f.zero(), f.zero());
}

AffinePoint apply_unchecked(const Aut& a, const AffinePoint& pt) {
  return {a.gamma * pt.x + a.delta, a.lambda * pt.y + a.b1 * pt.x + a.mu};
}

AffinePoint apply(const CurveParams& params, const Aut& a, const AffinePoint& pt) {
  AffinePoint img = apply_unchecked(a, pt);
  if (!on_curve(params, img)) {
    throw Falsification("image of (#" + std::to_string(pt.x.index()) + ", #" + std::to_string(pt.y.index()) +
                        ") under " + describe(a) + " is off the curve");
  }
  return img;
}

Aut compose(const CurveParams& params, const Aut& a, const Aut& b) {
  Aut c = compose_raw(params, a, b);
  if (!on_curve_dm(params, c.delta, c.mu)) {
    throw Falsification("composition " + describe(a) + " o " + describe(b) + " has (delta, mu) off the curve");
  }
  return c;
}

Aut inverse(const CurveParams& params, const Aut& a) {
  Aut b = inverse_raw(params, a);
  if (!on_curve_dm(params, b.delta, b.mu)) {
    throw Falsification("inverse of " + describe(a) + " has (delta, mu) off the curve");
  }
  return b;
}

std::vector<Fe> h_gammas(const CurveParams& params) {
  const FieldCtx& f = *params.field;
  const BigInt h = h_order(params);
  const Fe g0 = pow(mult_generator(f), (f.qn() - 1) / h);
  std::vector<Fe> out;
  Fe cur = f.one();
  for (BigInt k = 0; k < h; ++k) {
    out.push_back(cur);
    cur *= g0;
  }
  std::sort(out.begin(), out.end(), [](const Fe& a, const Fe& b) { return a.index() < b.index(); });
  return out;
}

// ---------------------------------------------------------------------------

GroupTable::GroupTable(const CurveParams& params, std::uint64_t max_order)
    : params_(params), points_([&] {
        const BigInt order = params.qpow(2 * params.n - 1) * h_order(params);
        if (order > max_order) {
          throw BudgetExceeded("group of order " + order.str() + " exceeds budget " + std::to_string(max_order));
        }
        return PointSet(params);
      }()),
      gammas_(h_gammas(params)) {
  for (std::uint64_t i = 0; i < gammas_.size(); ++i) gamma_pos_.emplace(gammas_[i].index(), i);
}

Aut GroupTable::at(std::uint64_t i) const {
  const std::uint64_t np = points_.count();
  const AffinePoint pt = points_.point(i % np);
  return raw_aut(params_, gammas_.at(i / np), pt.x, pt.y);
}

std::optional<std::uint64_t> GroupTable::index_of(const Fe& gamma, const Fe& delta, const Fe& mu) const {
  const auto g = gamma_pos_.find(gamma.index());
  if (g == gamma_pos_.end()) return std::nullopt;
  const auto pi = points_.index_of(AffinePoint{delta, mu});
  if (!pi) return std::nullopt;
  return g->second * points_.count() + *pi;
}

std::vector<Aut> enumerate_group(const CurveParams& params, std::uint64_t max_order) {
  const GroupTable table(params, max_order);
  std::vector<Aut> out;
  out.reserve(table.size());
  for (std::uint64_t i = 0; i < table.size(); ++i) out.push_back(table.at(i));
  return out;
}

// ---------------------------------------------------------------------------

GenusMismatch genus_mismatch(const CurveParams& params) {
  GenusMismatch gm;
  gm.genus = stats(params).genus;
  const BigInt Q = params.qpow(params.n);
  gm.field_size = Q;
  const BigInt& g = gm.genus;

  for (BigInt np = Q;; np *= Q) {
    const BigInt gh = (np * np - np) / 2;
    if (gh == g) gm.hermitian_match = true;
    if (gh >= g) break;
  }
  for (BigInt np = params.p();; np *= params.p()) {
    const BigInt gh = (np * np - np) / 2;
    if (gh == g) gm.loose_hermitian_n = np;
    if (gh >= g) break;
  }

  // Q = p^e with e odd >= 3 gives n0 = p^{(e-1)/2} and Q = p·n0^2.
  const unsigned e = params.m() * params.n;
  const bool odd_power = e % 2 == 1 && e >= 3;
  const BigInt n0 = odd_power ? ipow(BigInt(params.p()), (e - 1) / 2) : BigInt(0);
  if (params.p() == 2 && odd_power) {
    gm.dls_applicable = true;
    gm.dls_match = n0 * (Q - 1) == g;
  }
  if (params.p() == 3 && odd_power) {
    gm.dlr_applicable = true;
    gm.dlr_match = 3 * n0 * (Q - 1) * (Q + n0 + 1) / 2 == g;
  }
  return gm;
}

bool GroupReport::ok() const {
  return order_ok && identity_ok && closure_ok && inverses_ok && N_normal_ok && H_cyclic_ok && complement_ok &&
         sylow_ok && lambda_ok && action_ok && uniqueness_ok.value_or(true) && compose_law_ok && precondition_ok;
}

GroupReport verify_group_structure(const CurveParams& params, const GroupOptions& opts) {
  GroupReport rep;
  const std::uint32_t p = params.p();
  const CurveStats st = stats(params);
  rep.precondition_lhs = params.qpow(2 * params.n - 1);
  rep.precondition_rhs = params.qpow(params.r) * (params.qpow(params.n - 1) - 1) + 1;
  rep.precondition_ok = rep.precondition_lhs > rep.precondition_rhs && rep.precondition_rhs == 2 * st.genus + 1;
  rep.genus = genus_mismatch(params);
  rep.expected_order = params.qpow(2 * params.n - 1) * h_order(params);

  const GroupTable G(params, opts.max_order);
  const PointSet& pts = G.points();
  const std::uint64_t np = pts.count();
  const std::uint64_t order = G.size();
  rep.order_G = order;
  rep.order_ok = rep.order_G == rep.expected_order;
  rep.exhaustive = order <= opts.exhaustive_limit;

  auto fail = [&](const std::string& what) {
    if (rep.counterexample.empty()) rep.counterexample = what;
  };

  const Aut id = identity_aut(params);
  rep.identity_ok = G.index_of(id).has_value();
  if (!rep.identity_ok) fail("identity missing from the enumerated set");

  rep.lambda_ok = true;
  for (const auto& g : G.gammas()) {
    if (!in_subfield(g * frobenius(g, 1), 1)) {
      rep.lambda_ok = false;
      fail("gamma^{q+1} not in GF(q) for gamma #" + std::to_string(g.index()));
      break;
    }
  }

  // N = {γ = 1}, H = {(δ, μ) = (0, 0)}.
  const std::uint64_t origin = *pts.index_of(AffinePoint{params.field->zero(), params.field->zero()});
  std::uint64_t n_count = 0, h_count = 0, both = 0;
  for (std::uint64_t gi = 0; gi < G.gammas().size(); ++gi) {
    const bool in_n = G.gammas()[gi].is_one();
    for (std::uint64_t pi = 0; pi < np; ++pi) {
      const bool in_h = pi == origin;
      n_count += in_n;
      h_count += in_h;
      both += in_n && in_h;
    }
  }
  rep.order_N = n_count;
  rep.order_H = h_count;
  rep.complement_ok = both == 1 && rep.order_N * rep.order_H == rep.order_G;
  if (!rep.complement_ok) fail("N and H do not form a semidirect decomposition");
  rep.sylow_ok = is_power_of(rep.order_N, p) && rep.order_H % p != 0;
  if (!rep.sylow_ok) fail("N is not a Sylow p-subgroup");
  const BigInt h = h_order(params);
  rep.H_cyclic_ok = std::any_of(G.gammas().begin(), G.gammas().end(),
                                [&](const Fe& g) { return BigInt(mult_order(g)) == h; }) &&
                    rep.order_H == h;
  if (!rep.H_cyclic_ok) fail("H is not cyclic of order " + h.str());

  // Action on the affine points: each map is a permutation.
  {
    const bool all = order * np <= (std::uint64_t{1} << 22);
    Rng rng(derive_seed(opts.seed, "aut/action"));
    const std::uint64_t count = all ? order : std::min<std::uint64_t>(order, 64);
    const bool tables = order * np <= (std::uint64_t{1} << 20);
    std::set<std::vector<std::uint64_t>> seen;
    rep.action_ok = true;
    for (std::uint64_t k = 0; k < count && rep.action_ok; ++k) {
      const std::uint64_t i = all ? k : rng.below(order);
      const Aut a = G.at(i);
      std::vector<std::uint64_t> image(np);
      std::vector<bool> hit(np, false);
      for (std::uint64_t pi = 0; pi < np; ++pi) {
        const auto j = pts.index_of(apply_unchecked(a, pts.point(pi)));
        if (!j || hit[*j]) {
          rep.action_ok = false;
          fail(std::string(j ? "map is not injective: " : "image off the curve: ") + describe(a));
          break;
        }
        hit[*j] = true;
        image[pi] = *j;
      }
      if (tables) seen.insert(std::move(image));
    }
    if (tables && rep.action_ok) {
      rep.uniqueness_ok = seen.size() == order;
      if (!*rep.uniqueness_ok) fail("two parameter triples give the same map");
    }
  }

  // Closure and normality of N.
  {
    Rng rng(derive_seed(opts.seed, "aut/closure"));
    rep.closure_ok = true;
    rep.N_normal_ok = true;
    const std::uint64_t n_gi = static_cast<std::uint64_t>(
        std::find_if(G.gammas().begin(), G.gammas().end(), [](const Fe& g) { return g.is_one(); }) -
        G.gammas().begin());
    auto closure_pair = [&](std::uint64_t i, std::uint64_t j) {
      const Aut c = compose_raw(params, G.at(i), G.at(j));
      if (!G.index_of(c)) {
        rep.closure_ok = false;
        fail("closure: element #" + std::to_string(i) + " o #" + std::to_string(j) + " not in G");
      }
    };
    auto normal_pair = [&](std::uint64_t i, std::uint64_t k) {
      const Aut g = G.at(i);
      const Aut nk = G.at(n_gi * np + k);
      const Aut c = compose_raw(params, compose_raw(params, g, nk), inverse_raw(params, g));
      if (!c.gamma.is_one() || !G.index_of(c)) {
        rep.N_normal_ok = false;
        fail("normality: conjugate of N element #" + std::to_string(k) + " by #" + std::to_string(i) +
             " leaves N");
      }
    };
    if (rep.exhaustive) {
      for (std::uint64_t i = 0; i < order && rep.closure_ok; ++i) {
        for (std::uint64_t j = 0; j < order && rep.closure_ok; ++j) closure_pair(i, j);
      }
      for (std::uint64_t i = 0; i < order && rep.N_normal_ok; ++i) {
        for (std::uint64_t k = 0; k < np && rep.N_normal_ok; ++k) normal_pair(i, k);
      }
      rep.pair_checks = order * order + order * np;
    } else {
      for (std::uint64_t s = 0; s < opts.samples && rep.closure_ok; ++s) closure_pair(rng.below(order), rng.below(order));
      for (std::uint64_t s = 0; s < opts.samples && rep.N_normal_ok; ++s) normal_pair(rng.below(order), rng.below(np));
      rep.pair_checks = 2 * opts.samples;
    }
  }

  // Inverses, for every element.
  rep.inverses_ok = true;
  for (std::uint64_t i = 0; i < order && rep.inverses_ok; ++i) {
    const Aut a = G.at(i);
    const Aut b = inverse_raw(params, a);
    if (!G.index_of(b) || !(compose_raw(params, a, b) == id) || !(compose_raw(params, b, a) == id)) {
      rep.inverses_ok = false;
      fail("inverse of element #" + std::to_string(i) + " is missing or wrong");
    }
  }

  // The closed-form composition law against pointwise composition.
  {
    Rng rng(derive_seed(opts.seed, "aut/compose"));
    rep.compose_law_ok = true;
    rep.compose_law_exhaustive = order * order * np <= (std::uint64_t{1} << 20);
    auto check_pair = [&](std::uint64_t i, std::uint64_t j, bool all_points) {
      const Aut a = G.at(i), b = G.at(j);
      Aut c;
      try {
        c = compose(params, a, b);
      } catch (const Falsification& e) {
        rep.compose_law_ok = false;
        fail(e.what());
        return;
      }
      const std::uint64_t k_max = all_points ? np : 16;
      for (std::uint64_t k = 0; k < k_max; ++k) {
        const AffinePoint pt = pts.point(all_points ? k : rng.below(np));
        ++rep.compose_point_checks;
        if (!(apply_unchecked(c, pt) == apply_unchecked(a, apply_unchecked(b, pt)))) {
          rep.compose_law_ok = false;
          fail("composition law disagrees with pointwise composition for #" + std::to_string(i) + " o #" +
               std::to_string(j));
          return;
        }
      }
    };
    if (rep.compose_law_exhaustive) {
      for (std::uint64_t i = 0; i < order && rep.compose_law_ok; ++i) {
        for (std::uint64_t j = 0; j < order && rep.compose_law_ok; ++j) check_pair(i, j, true);
      }
      rep.compose_pairs = order * order;
    } else {
      const bool all_points = np <= 512;
      for (std::uint64_t s = 0; s < opts.samples && rep.compose_law_ok; ++s) {
        const std::uint64_t i = rng.below(order);
        check_pair(i, rng.below(order), all_points);
      }
      rep.compose_pairs = opts.samples;
    }
  }
  return rep;
}

}  // namespace xnr
