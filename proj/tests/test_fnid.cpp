#include "doctest.h"

#include <set>

#include "xnr/errors.hpp"
#include "xnr/fnid.hpp"
#include "xnr/poly2.hpp"
#include "xnr/rng.hpp"

using namespace xnr;

namespace {

struct T {
  std::int64_t c;
  int x, y;
};

Poly2 poly(std::uint32_t p, std::initializer_list<T> terms) {
  Poly2 f(p);
  for (const T& t : terms) f.add_term({t.x, t.y}, t.c);
  return f;
}

const CurveParams& c232() {
  static const CurveParams c = make_curve(2, 1, 3, 2);
  return c;
}

}  // namespace

TEST_CASE("Bezout pairs") {
  auto check = [](unsigned n, unsigned r, unsigned a, unsigned b) {
    const BezoutPair bp = bezout_alpha_beta(n, r);
    CHECK(bp.alpha == a);
    CHECK(bp.beta == b);
    CHECK(static_cast<long>((n - r) * bp.alpha) - static_cast<long>(bp.beta * n) == 1);
  };
  check(3, 2, 1, 0);
  check(5, 3, 3, 1);
  check(4, 3, 1, 0);
  check(7, 4, 5, 2);
  check(9, 5, 7, 3);
}

TEST_CASE("Poly2 arithmetic") {
  const Poly2 a = poly(3, {{1, 1, 0}, {2, 0, 1}});
  const Poly2 b = poly(3, {{1, 1, 0}, {1, 0, 1}});
  CHECK((a + b) == poly(3, {{2, 1, 0}}));
  CHECK((a - a).is_zero());
  CHECK((a * b) == poly(3, {{1, 2, 0}, {3 % 3, 1, 1}, {2, 0, 2}}));
  CHECK(a.frobenius_scaled(3) == poly(3, {{1, 3, 0}, {2, 0, 3}}));
  CHECK(a.times_monomial(2, 1) == poly(3, {{1, 3, 1}, {2, 2, 2}}));
  CHECK(poly(2, {{1, 0, 4}, {1, 3, 1}}).y_degree() == 4);
  CHECK(poly(2, {{1, 6, 0}, {1, 0, 2}}).to_string() == "x^6 + y^2");
}

TEST_CASE("defining polynomials at q=2, n=3, r=2") {
  const auto& c = c232();
  CHECK(build_fn(c, Fn::z0) == poly(2, {{1, 0, 2}, {1, 3, 0}}));
  CHECK(build_fn(c, Fn::z) == poly(2, {{1, 0, 4}, {1, 6, 0}, {1, 5, 0}, {1, 1, 1}}));
  CHECK(build_fn(c, Fn::w) == build_fn(c, Fn::z0));
  CHECK_THROWS(definition(c, Fn::x));
}

TEST_CASE("normal form") {
  const auto& c = c232();
  CHECK(normal_form(c, poly(2, {{1, 0, 1}})) == poly(2, {{1, 0, 1}}));
  CHECK(normal_form(c, poly(2, {{1, 0, 4}})) == poly(2, {{1, 6, 0}, {1, 5, 0}, {1, 3, 0}, {1, 0, 2}, {1, 0, 1}}));
  // The curve equation itself.
  CHECK(normal_form(c, poly(2, {{1, 0, 1}, {1, 0, 2}, {1, 0, 4}, {1, 3, 0}, {1, 5, 0}, {1, 6, 0}})).is_zero());

  const CurveParams c3 = make_curve(3, 1, 3, 2);
  const Poly2 rel = poly(3, {{1, 0, 1}, {1, 0, 3}, {1, 0, 9}, {-1, 4, 0}, {-1, 10, 0}, {-1, 12, 0}});
  CHECK(normal_form(c3, rel).is_zero());
  CHECK(normal_form(c3, rel * poly(3, {{1, 7, 5}})).is_zero());
}

TEST_CASE("normal form keeps values at rational points and reduces the y-degree") {
  for (const CurveParams& c : {c232(), make_curve(3, 1, 3, 2), make_curve(2, 1, 4, 3)}) {
    const BigInt D = c.qpow(c.n - 1);
    Rng rng(derive_seed(11, "test/nf"));
    const auto pts = enumerate_points(c);
    for (int trial = 0; trial < 6; ++trial) {
      Poly2 f(c.p());
      for (int k = 0; k < 4; ++k) {
        f.add_term({BigInt(rng.below(40)), BigInt(rng.below(60))}, static_cast<std::int64_t>(1 + rng.below(c.p() - 1 + 1)));
      }
      const Poly2 g = normal_form(c, f);
      CHECK(g.y_degree() < D);
      for (std::size_t i = 0; i < pts.size(); i += 5) CHECK(g.eval(pts[i].x, pts[i].y) == f.eval(pts[i].x, pts[i].y));
    }
  }
}

TEST_CASE("normal form term budget") {
  const CurveParams c = make_curve(2, 1, 4, 3);
  CHECK_THROWS_AS(normal_form(c, poly(2, {{1, 0, 1 << 12}}), 10), BudgetExceeded);
}

TEST_CASE("extension points") {
  const auto& c = c232();
  // K = 1: every x0 of GF(8) lies under a rational point.
  for (std::uint64_t i = 0; i < c.field->size(); ++i) {
    const auto pt = extension_point(c, 1, c.field->element(i));
    REQUIRE(pt.has_value());
    CHECK(on_curve(c, *pt));
  }

  // K = 2 over GF(64): 16 solvable x0, 8 of them outside GF(8), 4 points
  // above each (independent oracle, tests/oracles/derive.py).
  const FieldRef ext = extension_field(c, 2);
  const TraceSolver solver(c, ext);
  CHECK(solver.kernel().size() == 2);
  int solvable = 0, nonrational = 0;
  for (std::uint64_t i = 0; i < ext->size(); ++i) {
    const Fe x0 = ext->element(i);
    const auto pt = extension_point(c, 2, x0);
    if (!pt) continue;
    ++solvable;
    nonrational += in_subfield(x0, 3) ? 0 : 1;
    std::set<std::uint64_t> ys;
    for (std::uint64_t k = 0; k < 4; ++k) {
      const Fe y = solver.coset_member(pt->y, k);
      CHECK(additive_trace(y, c.n) == eval_terms(fr_exponents(c), x0));
      ys.insert(y.index());
    }
    CHECK(ys.size() == 4);
  }
  CHECK(solvable == 16);
  CHECK(nonrational == 8);
}

TEST_CASE("no off-base points over GF(q^{2n}) for q = 3, n = 4") {
  // Oracle: 81 solvable x0 in GF(3^8), all inside GF(3^4).
  const CurveParams c = make_curve(3, 1, 4, 3);
  SampleOptions only2;
  only2.max_K = 2;
  CHECK_THROWS_AS(sample_extension_points(c, only2), BudgetExceeded);
  const auto pts = sample_extension_points(c, SampleOptions{});
  CHECK(pts.size() == 32);
  for (const auto& pt : pts) CHECK(pt.x.ctx().n() == 12);
}

TEST_CASE("sampled points are seeded and off the base field") {
  const auto& c = c232();
  SampleOptions o;
  o.seed = derive_seed(5, "fnid/EQ3");
  const auto a = sample_extension_points(c, o);
  const auto b = sample_extension_points(c, o);
  REQUIRE(a.size() == 32);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK_FALSE(in_subfield(a[i].x, 3));
    CHECK(additive_trace(a[i].y, c.n) == eval_terms(fr_exponents(c), a[i].x));
  }
}

TEST_CASE("identities in characteristic 2") {
  for (const CurveParams& c : {c232(), make_curve(2, 1, 4, 3)}) {
    for (IdentityId id : {IdentityId::EQ3, IdentityId::ZQN, IdentityId::WQN, IdentityId::TQN}) {
      CAPTURE(to_string(id));
      CHECK_FALSE(has_variants(c, id));
      const IdentityReport sym = verify_identity(c, id, Mode::symbolic);
      CHECK(sym.used == Mode::symbolic);
      CHECK_FALSE(sym.downgraded);
      REQUIRE(sym.verified.has_value());
      CHECK(*sym.verified == Variant::printed);
      const IdentityReport smp = verify_identity(c, id, Mode::sampled);
      CHECK(smp.samples == 32);
      CHECK(smp.ok());
    }
  }
}

TEST_CASE("odd characteristic: the sign-adjusted w and t identities hold") {
  const CurveParams c = make_curve(3, 1, 3, 2);
  for (IdentityId id : {IdentityId::EQ3, IdentityId::ZQN}) {
    CHECK_FALSE(has_variants(c, id));
    CHECK(verify_identity(c, id, Mode::symbolic).verified == Variant::printed);
  }
  for (IdentityId id : {IdentityId::WQN, IdentityId::TQN}) {
    CAPTURE(to_string(id));
    CHECK(has_variants(c, id));
    for (Mode mode : {Mode::symbolic, Mode::sampled}) {
      const IdentityReport rep = verify_identity(c, id, mode);
      REQUIRE(rep.variants.size() == 2);
      CHECK_FALSE(rep.variants[0].holds);
      CHECK_FALSE(rep.variants[0].witness.empty());
      CHECK(rep.variants[1].holds);
      CHECK(rep.verified == Variant::adjusted);
    }
  }
}

TEST_CASE("functions agree with their polynomials at rational points") {
  const CurveParams c = make_curve(3, 1, 3, 2);
  const auto pts = enumerate_points(c);
  for (Fn f : {Fn::z0, Fn::z, Fn::w, Fn::t}) {
    const Poly2 poly = build_fn(c, f, Variant::adjusted);
    for (std::size_t i = 0; i < pts.size(); i += 11) {
      CHECK(poly.eval(pts[i].x, pts[i].y) == eval_fn(c, f, Variant::adjusted, pts[i].x, pts[i].y));
    }
  }
}

TEST_CASE("pole orders by dominance") {
  const auto& c = c232();
  const ValuationLedger l = derive_pole_orders(c, Variant::printed);
  CHECK(l.at(Fn::x).pole == 4);
  CHECK(l.at(Fn::x).status == PoleStatus::paper_claimed);
  CHECK(l.at(Fn::y).pole == 6);

  const PoleEntry& z = l.at(Fn::z);
  CHECK(z.status == PoleStatus::dominance_verified);
  CHECK(std::multiset<BigInt>(z.valuations.begin(), z.valuations.end()) ==
        std::multiset<BigInt>{-72, -52, -44, -38, -48, -24});
  CHECK(z.min_valuation == -72);
  CHECK(z.pole == 9);

  const PoleEntry& w = l.at(Fn::w);
  CHECK(w.min_valuation == -80);
  CHECK(w.dominant_term.find("x^20") != std::string::npos);
  CHECK(w.pole == 10);

  const PoleEntry& t = l.at(Fn::t);
  CHECK(t.min_valuation == -104);
  CHECK(std::find(t.valuations.begin(), t.valuations.end(), BigInt(-74)) != t.valuations.end());
  CHECK(t.pole == 13);
}

TEST_CASE("pole orders match the semigroup generators") {
  struct Case {
    std::uint32_t p;
    unsigned m, n, r;
    Variant v;
  };
  for (const Case& k : {Case{2, 1, 4, 3, Variant::printed}, Case{3, 1, 3, 2, Variant::adjusted},
                        Case{2, 1, 5, 3, Variant::printed}, Case{2, 2, 3, 2, Variant::printed},
                        Case{5, 1, 3, 2, Variant::adjusted}, Case{3, 1, 5, 3, Variant::adjusted}}) {
    const CurveParams c = make_curve(k.p, k.m, k.n, k.r);
    CAPTURE(k.p);
    CAPTURE(k.n);
    const ValuationLedger l = derive_pole_orders(c, k.v);
    for (Fn f : {Fn::x, Fn::y, Fn::z, Fn::w, Fn::t}) {
      CHECK(l.at(f).status != PoleStatus::failed);
      CHECK(l.at(f).pole == expected_pole(c, f));
    }
  }
}

TEST_CASE("dominance alone does not pick the variant in odd characteristic") {
  // Valuations ignore signs, so the printed right-hand sides give the same
  // poles; only the identity checks tell the variants apart.
  const CurveParams c = make_curve(3, 1, 3, 2);
  const ValuationLedger printed = derive_pole_orders(c, Variant::printed);
  const ValuationLedger adjusted = derive_pole_orders(c, Variant::adjusted);
  for (Fn f : {Fn::z, Fn::w, Fn::t}) CHECK(printed.at(f).pole == adjusted.at(f).pole);
  CHECK(adjusted.at(Fn::w).pole == 30);
  CHECK(adjusted.at(Fn::t).pole == 64);
  CHECK_FALSE(verify_identity(c, IdentityId::TQN, Mode::symbolic).variants[0].holds);
}
