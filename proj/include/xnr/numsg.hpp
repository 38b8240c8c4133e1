#pragma once

// Numerical semigroups: membership sieve, gaps and Frobenius number,
// telescopic sequences and their closed forms, and the Castle criterion.

#include <array>
#include <cstdint>
#include <vector>

#include "xnr/bigint.hpp"

namespace xnr {

struct SieveOptions {
  // Largest membership table we are willing to allocate.
  std::uint64_t max_bound = std::uint64_t{1} << 30;
};

class Semigroup {
 public:
  /// Sieves ⟨gens⟩. The table starts at a1·a2 (two smallest generators) and is
  /// doubled until it contains a run of a1 consecutive members, after which
  /// every integer is a member. Throws InvalidArgument if gcd(gens) != 1.
  static Semigroup sieve(std::vector<BigInt> gens, const SieveOptions& opts = {});

  /// Generators as given, sorted ascending (duplicates kept).
  const std::vector<BigInt>& generators() const { return gens_; }
  /// Size of the membership table minus one.
  std::uint64_t bound() const { return bound_; }

  bool contains(const BigInt& v) const;
  const std::vector<std::uint64_t>& gaps() const { return gaps_; }
  /// Largest gap, or -1 for ⟨1⟩.
  BigInt frobenius() const { return frobenius_; }
  BigInt multiplicity() const { return multiplicity_; }
  BigInt genus() const { return BigInt(gaps_.size()); }

  /// Generators that are not sums of two nonzero members, deduplicated.
  std::vector<BigInt> minimal_generators() const;

 private:
  std::vector<BigInt> gens_;
  std::vector<std::uint8_t> member_;
  std::uint64_t bound_ = 0;
  std::vector<std::uint64_t> gaps_;
  BigInt frobenius_;
  BigInt multiplicity_;
};

struct SgInvariants {
  BigInt gap_count;
  BigInt frobenius;
  BigInt multiplicity;
  bool symmetric = false;
};

/// symmetric ⇔ s ∈ S xor F - s ∈ S for every 0 ≤ s ≤ F.
SgInvariants invariants(const Semigroup& s);

struct TelescopicTrace {
  std::vector<BigInt> d;  // d_1..d_m
  // checks[i] (i ≥ 1) : a_{i+1}/d_{i+1} ∈ ⟨a_1/d_i, ..., a_i/d_i⟩; checks[0] = true.
  std::vector<bool> checks;
  // Same test against ⟨a_1/d_{i+1}, ..., a_{i+1}/d_{i+1}⟩ (the set containing the
  // element itself); kept so the two readings can be reported side by side.
  std::vector<bool> literal_checks;
  bool telescopic = false;
  bool literal_telescopic = false;
};

TelescopicTrace telescopic_check(const std::vector<BigInt>& seq);

struct ClosedForms {
  BigInt l_g;
  BigInt genus;
  bool sieve_agrees = false;  // l_g == Frobenius and genus == gap count
};

/// l_g = Σ (d_{i-1}/d_i - 1)·a_i with d_0 = 0, genus = (l_g + 1)/2.
/// Requires a telescopic sequence; throws Falsification if l_g is even.
ClosedForms closed_forms(const std::vector<BigInt>& seq);

/// (q^{n-1}, q^{n-1}+q^{r-1}, q^n+q^{n-r}, q^{2r-1}+q^{n-r-1}, q^{2r}-q^n+q^r+1).
std::array<BigInt, 5> hp_generators(const BigInt& q, unsigned n, unsigned r);

/// (q^{n-1}, q^{r-1}, q^{n-r}, q^{n-r-1}, 1): the gcd chain of hp_generators
/// when n >= 3.
std::array<BigInt, 5> hp_expected_d_chain(const BigInt& q, unsigned n, unsigned r);

/// Symmetric and multiplicity·field_size + 1 == n_points.
bool castle_check(const Semigroup& s, const BigInt& field_size, const BigInt& n_points);

/// gcd(q^n - 1, q^{2r-n} - 1) equals q - 1 (n odd) or q^2 - 1 (n even).
bool gcd_identity(const BigInt& q, unsigned n, unsigned r);

}  // namespace xnr
