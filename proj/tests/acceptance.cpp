// Acceptance gate: one PASS/FAIL line per criterion, exit 1 if any fails.
// Tolerance is zero everywhere (exact arithmetic); only runtimes have limits.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "xnr/aut.hpp"
#include "xnr/curve.hpp"
#include "xnr/fnid.hpp"
#include "xnr/numsg.hpp"
#include "xnr/report.hpp"

using namespace xnr;

namespace {

constexpr double kPointsSeconds = 5.0;
constexpr double kSemigroupSeconds = 10.0;
constexpr double kSymbolicSecondsPerConfig = 300.0;
constexpr double kGroupSeconds = 60.0;
constexpr std::uint64_t kComposeSamples = 10'000;

struct Config {
  std::uint32_t p;
  unsigned m, n, r;
};

const std::vector<Config> kConfigs{{2, 1, 3, 2}, {2, 1, 4, 3}, {3, 1, 3, 2}, {2, 2, 3, 2}, {2, 1, 5, 3}};

CurveParams curve(const Config& c) { return make_curve(c.p, c.m, c.n, c.r); }

std::string name(const Config& c) {
  return "(" + std::to_string(c.p) + "," + std::to_string(c.m) + "," + std::to_string(c.n) + "," +
         std::to_string(c.r) + ")";
}

class Gate {
 public:
  void run(int id, const std::string& title, const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail += std::string(" exception: ") + e.what();
      ok = false;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    all_ok_ = all_ok_ && ok;
  }
  bool ok() const { return all_ok_; }

 private:
  bool all_ok_ = true;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  Gate gate;

  gate.run(1, "point counts", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::uint64_t> affine{32, 128, 243, 1024, 512};
    bool ok = true;
    for (std::size_t i = 0; i < kConfigs.size(); ++i) {
      const CurveParams c = curve(kConfigs[i]);
      const BigInt got = count_points(c);
      const BigInt N = got + 1;
      const bool row = got == affine[i] && got == c.qpow(2 * c.n - 1) && N == stats(c).n_points;
      d += " " + name(kConfigs[i]) + "=" + got.str() + "/" + N.str();
      ok = ok && row;
    }
    const double secs = seconds_since(t0);
    if (secs >= kPointsSeconds) d += " too slow";
    return ok && secs < kPointsSeconds;
  });

  gate.run(2, "f_r takes values in GF(q) on every element", [](std::string& d) {
    bool ok = true;
    for (const Config& k : kConfigs) {
      const CurveParams c = curve(k);
      const auto fr = fr_exponents(c);
      std::uint64_t bad = 0;
      for (std::uint64_t i = 0; i < c.field->size(); ++i) {
        if (!in_subfield(eval_terms(fr, c.field->element(i)), 1)) ++bad;
      }
      d += " " + name(k) + ":" + std::to_string(c.field->size() - bad) + "/" + std::to_string(c.field->size());
      ok = ok && bad == 0;
    }
    return ok;
  });

  gate.run(3, "semigroup suite", [](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const Config& k : kConfigs) {
      const CurveParams c = curve(k);
      const auto g = hp_generators(c.q(), c.n, c.r);
      const std::vector<BigInt> seq(g.begin(), g.end());
      const Semigroup s = Semigroup::sieve(seq);
      const SgInvariants inv = invariants(s);
      const TelescopicTrace tr = telescopic_check(seq);
      const auto chain = hp_expected_d_chain(c.q(), c.n, c.r);
      const BigInt genus = c.qpow(c.r) * (c.qpow(c.n - 1) - 1) / 2;
      const bool row = inv.gap_count == genus && inv.frobenius == 2 * genus - 1 && inv.symmetric && tr.telescopic &&
                       std::equal(tr.d.begin(), tr.d.end(), chain.begin()) && closed_forms(seq).sieve_agrees;
      d += " " + name(k) + ":g=" + inv.gap_count.str();
      ok = ok && row;
    }
    const double secs = seconds_since(t0);
    if (secs >= kSemigroupSeconds) d += " too slow";
    return ok && secs < kSemigroupSeconds;
  });

  gate.run(4, "Castle criterion", [](std::string& d) {
    bool ok = true;
    for (const Config& k : kConfigs) {
      const CurveParams c = curve(k);
      const auto g = hp_generators(c.q(), c.n, c.r);
      const Semigroup s = Semigroup::sieve({g.begin(), g.end()});
      const bool row = castle_check(s, c.qpow(c.n), stats(c).n_points);
      d += " " + s.multiplicity().str() + "*" + c.qpow(c.n).str() + "+1=" + stats(c).n_points.str();
      ok = ok && row;
    }
    return ok;
  });

  gate.run(5, "identities (symbolic where mandated)", [](std::string& d) {
    bool ok = true;
    for (const Config& k : {Config{2, 1, 3, 2}, Config{2, 1, 4, 3}, Config{3, 1, 3, 2}}) {
      const CurveParams c = curve(k);
      const auto t0 = std::chrono::steady_clock::now();
      d += " " + name(k) + ":";
      for (IdentityId id : {IdentityId::EQ3, IdentityId::ZQN, IdentityId::WQN, IdentityId::TQN}) {
        const IdentityReport rep = verify_identity(c, id, Mode::symbolic);
        const bool row = rep.used == Mode::symbolic && rep.ok();
        d += std::string(to_string(id)) + "=" + (rep.verified ? std::string(to_string(*rep.verified)) : "none") + ",";
        ok = ok && row;
      }
      const double secs = seconds_since(t0);
      if (secs >= kSymbolicSecondsPerConfig) {
        d += "too slow";
        ok = false;
      }
    }
    return ok;
  });

  gate.run(6, "pole orders equal the semigroup generators", [](std::string& d) {
    bool ok = true;
    for (const Config& k : kConfigs) {
      const CurveParams c = curve(k);
      const IdentityReport tqn = verify_identity(c, IdentityId::TQN, Mode::sampled);
      if (!tqn.verified) return false;
      const ValuationLedger l = derive_pole_orders(c, *tqn.verified);
      const auto g = hp_generators(c.q(), c.n, c.r);
      const std::vector<BigInt> got{l.at(Fn::x).pole, l.at(Fn::y).pole, l.at(Fn::w).pole, l.at(Fn::z).pole,
                                    l.at(Fn::t).pole};
      bool row = std::equal(got.begin(), got.end(), g.begin());
      for (Fn f : {Fn::x, Fn::y, Fn::z, Fn::w, Fn::t}) {
        row = row && l.at(f).status != PoleStatus::failed && l.at(f).pole == expected_pole(c, f);
      }
      d += " " + name(k) + ":(" + l.at(Fn::x).pole.str() + "," + l.at(Fn::y).pole.str() + "," +
           l.at(Fn::z).pole.str() + "," + l.at(Fn::w).pole.str() + "," + l.at(Fn::t).pole.str() + ")";
      ok = ok && row;
    }
    return ok;
  });

  std::vector<GroupReport> groups;
  const std::vector<Config> group_configs{{2, 1, 3, 2}, {3, 1, 3, 2}, {2, 1, 4, 3}};
  gate.run(7, "automorphism group structure", [&](std::string& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::uint64_t> orders{32, 486, 384};
    bool ok = true;
    for (std::size_t i = 0; i < group_configs.size(); ++i) {
      const CurveParams c = curve(group_configs[i]);
      GroupOptions opts;
      opts.samples = kComposeSamples;
      groups.push_back(verify_group_structure(c, opts));
      const GroupReport& g = groups.back();
      const bool row = g.ok() && g.order_G == orders[i] && g.exhaustive && g.closure_ok && g.inverses_ok &&
                       g.N_normal_ok && g.complement_ok && g.sylow_ok && g.precondition_ok;
      d += " " + name(group_configs[i]) + ":|G|=" + g.order_G.str() + ",|N|=" + g.order_N.str() +
           ",|H|=" + g.order_H.str();
      ok = ok && row;
    }
    const double secs = seconds_since(t0);
    if (secs >= kGroupSeconds) d += " too slow";
    return ok && secs < kGroupSeconds;
  });

  gate.run(8, "composition law agrees with pointwise composition", [&](std::string& d) {
    if (groups.size() != group_configs.size()) return false;
    const GroupReport& small = groups[0];
    bool ok = small.compose_law_ok && small.compose_law_exhaustive && small.compose_pairs == 32 * 32;
    d += " (2,1,3,2):" + std::to_string(small.compose_pairs) + " pairs exhaustive";
    for (std::size_t i = 1; i < groups.size(); ++i) {
      const GroupReport& g = groups[i];
      ok = ok && g.compose_law_ok && g.compose_pairs >= kComposeSamples;
      d += " " + name(group_configs[i]) + ":" + std::to_string(g.compose_pairs) + " pairs";
    }
    return ok;
  });

  gate.run(9, "determinism of report --mode full --seed 7", [](std::string& d) {
    RunConfig cfg;
    cfg.mode = RunMode::full;
    cfg.seed = 7;
    const std::string a = run_report(cfg).doc.dump(2);
    const std::string b = run_report(cfg).doc.dump(2);
    d += " " + std::to_string(a.size()) + " bytes";
    return a == b;
  });

  return gate.ok() ? 0 : 1;
}
