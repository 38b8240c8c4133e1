#include "xnr/numsg.hpp"

#include <algorithm>
#include <string>


#include "xnr/errors.hpp"

namespace xnr {

namespace {

BigInt gcd_all(const std::vector<BigInt>& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  return g;
}

}  // namespace

Semigroup Semigroup::sieve(std::vector<BigInt> gens, const SieveOptions& opts) {
  if (gens.empty()) throw InvalidArgument("nonempty", "semigroup needs at least one generator");
  for (const auto& g : gens) {
    if (g <= 0) throw InvalidArgument("positive", "generators must be positive (got " + g.str() + ")");
  }
  if (gcd_all(gens) != 1) {
    throw InvalidArgument("gcd_one", "gcd of generators is " + gcd_all(gens).str() +
                                         ", Frobenius number undefined");
  }
  std::sort(gens.begin(), gens.end());

  Semigroup s;
  s.gens_ = gens;
  s.multiplicity_ = gens.front();

  const BigInt a1 = gens.front();
  BigInt start = gens.size() > 1 ? a1 * gens[1] : a1;
  if (start > BigInt(opts.max_bound)) start = BigInt(opts.max_bound);
  std::uint64_t bound = to_u64(start);
  const std::uint64_t run_needed = to_u64(a1);

  for (;;) {
    std::vector<std::uint64_t> small;
    for (const auto& g : gens) {
      if (g <= BigInt(bound)) small.push_back(g.convert_to<std::uint64_t>());
    }
    std::vector<std::uint8_t> member(bound + 1, 0);
    member[0] = 1;
    std::uint64_t run = 1;
    std::uint64_t run_start = 0;
    bool closed = run >= run_needed;
    for (std::uint64_t v = 1; v <= bound && !closed; ++v) {
      for (std::uint64_t g : small) {
        if (g > v) break;
        if (member[v - g]) {
          member[v] = 1;
          break;
        }
      }
      if (member[v]) {
        if (++run >= run_needed) closed = true;
      } else {
        run = 0;
        run_start = v + 1;
      }
    }
    if (closed) {
      // Everything from run_start on is a member; fill the rest of the table.
      for (std::uint64_t v = run_start; v <= bound; ++v) member[v] = 1;
      s.member_ = std::move(member);
      s.bound_ = bound;
      for (std::uint64_t v = 0; v < run_start; ++v) {
        if (!s.member_[v]) s.gaps_.push_back(v);
      }
      s.frobenius_ = s.gaps_.empty() ? BigInt(-1) : BigInt(s.gaps_.back());
      return s;
    }
    if (bound >= opts.max_bound) {
      throw BudgetExceeded("semigroup sieve needs more than " + std::to_string(opts.max_bound) + " entries");
    }
    bound = std::min<std::uint64_t>(opts.max_bound, bound * 2);
  }
}

bool Semigroup::contains(const BigInt& v) const {
  if (v < 0) return false;
  if (v > BigInt(bound_)) return true;
  return member_[v.convert_to<std::uint64_t>()] != 0;
}

std::vector<BigInt> Semigroup::minimal_generators() const {
  std::vector<BigInt> out;
  for (const auto& g : gens_) {
    if (!out.empty() && out.back() == g) continue;
    bool decomposable = false;
    // g = s + (g - s) with 0 < s <= g/2, both members.
    if (g <= BigInt(bound_)) {
      const auto gv = g.convert_to<std::uint64_t>();
      for (std::uint64_t s = 1; s <= gv / 2; ++s) {
        if (member_[s] && member_[gv - s]) {
          decomposable = true;
          break;
        }
      }
    } else {
      // Above the table every integer is a member; any member s < g with
      // g - s nonzero decomposes g.
      decomposable = gens_.front() < g;
    }
    if (!decomposable) out.push_back(g);
  }
  return out;
}

SgInvariants invariants(const Semigroup& s) {
  SgInvariants inv;
  inv.gap_count = s.genus();
  inv.frobenius = s.frobenius();
  inv.multiplicity = s.multiplicity();
  bool sym = true;
  for (BigInt v = 0; v <= inv.frobenius; ++v) {
    if (s.contains(v) == s.contains(inv.frobenius - v)) {
      sym = false;
      break;
    }
  }
  inv.symmetric = sym;
  return inv;
}

TelescopicTrace telescopic_check(const std::vector<BigInt>& seq) {
  if (seq.empty()) throw InvalidArgument("nonempty", "empty sequence");
  if (gcd_all(seq) != 1) throw InvalidArgument("gcd_one", "sequence gcd must be 1");
  TelescopicTrace tr;
  BigInt g = 0;
  for (const auto& a : seq) {
    g = boost::multiprecision::gcd(g, a);
    tr.d.push_back(g);
  }
  tr.checks.push_back(true);
  tr.literal_checks.push_back(true);
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] % tr.d[i] != 0) throw std::logic_error("d_i does not divide a_i");
    const BigInt target = seq[i] / tr.d[i];
    std::vector<BigInt> prev, cur;
    for (std::size_t j = 0; j < i; ++j) prev.push_back(seq[j] / tr.d[i - 1]);
    for (std::size_t j = 0; j <= i; ++j) cur.push_back(seq[j] / tr.d[i]);
    tr.checks.push_back(Semigroup::sieve(prev).contains(target));
    tr.literal_checks.push_back(Semigroup::sieve(cur).contains(target));
  }
  tr.telescopic = std::all_of(tr.checks.begin(), tr.checks.end(), [](bool b) { return b; });
  tr.literal_telescopic =
      std::all_of(tr.literal_checks.begin(), tr.literal_checks.end(), [](bool b) { return b; });
  return tr;
}

ClosedForms closed_forms(const std::vector<BigInt>& seq) {
  const TelescopicTrace tr = telescopic_check(seq);
  if (!tr.telescopic) throw InvalidArgument("telescopic", "closed forms need a telescopic sequence");
  ClosedForms cf;
  cf.l_g = -seq.front();  // d_0 = 0
  for (std::size_t i = 1; i < seq.size(); ++i) cf.l_g += (tr.d[i - 1] / tr.d[i] - 1) * seq[i];
  if ((cf.l_g + 1) % 2 != 0) {
    throw Falsification("l_g = " + cf.l_g.str() + " is even; telescopic sequence not symmetric");
  }
  cf.genus = (cf.l_g + 1) / 2;
  const Semigroup s = Semigroup::sieve(seq);
  cf.sieve_agrees = cf.l_g == s.frobenius() && cf.genus == s.genus();
  return cf;
}

std::array<BigInt, 5> hp_generators(const BigInt& q, unsigned n, unsigned r) {
  auto Q = [&](unsigned k) { return ipow(q, k); };
  return {Q(n - 1), Q(n - 1) + Q(r - 1), Q(n) + Q(n - r), Q(2 * r - 1) + Q(n - r - 1),
          Q(2 * r) - Q(n) + Q(r) + 1};
}

std::array<BigInt, 5> hp_expected_d_chain(const BigInt& q, unsigned n, unsigned r) {
  auto Q = [&](unsigned k) { return ipow(q, k); };
  return {Q(n - 1), Q(r - 1), Q(n - r), Q(n - r - 1), BigInt(1)};
}

bool castle_check(const Semigroup& s, const BigInt& field_size, const BigInt& n_points) {
  return invariants(s).symmetric && s.multiplicity() * field_size + 1 == n_points;
}

bool gcd_identity(const BigInt& q, unsigned n, unsigned r) {
  if (2 * r < n) throw InvalidArgument("two_r_ge_n", "gcd identity needs 2r >= n");
  const BigInt g = boost::multiprecision::gcd(ipow(q, n) - 1, ipow(q, 2 * r - n) - 1);
  const BigInt expected = n % 2 == 1 ? BigInt(q - 1) : BigInt(q * q - 1);
  return g == expected;
}

}  // namespace xnr
