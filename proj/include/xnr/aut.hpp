#pragma once

// The automorphisms (x, y) ↦ (γx + δ, γ^{q+1}y + (δ^{q^{n-r}} + δ^{q^r})γx + μ)
// fixing P_∞, with γ in the cyclic group of order q^{2-(n mod 2)} - 1 and
// (δ, μ) an affine rational point. Composition is (a∘b)(P) = a(b(P)).

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "xnr/bigint.hpp"
#include "xnr/curve.hpp"
#include "xnr/ff.hpp"

namespace xnr {

struct Aut {
  Fe gamma;
  Fe delta;
  Fe mu;
  Fe lambda;  // γ^{q+1}
  Fe b1;      // (δ^{q^{n-r}} + δ^{q^r})·γ

  friend bool operator==(const Aut& a, const Aut& b) {
    return a.gamma == b.gamma && a.delta == b.delta && a.mu == b.mu;
  }
};

/// Order of the γ-group: q - 1 for n odd, q^2 - 1 for n even.
BigInt h_order(const CurveParams& params);

/// Throws InvalidArgument with constraint "gamma_nonzero", "gamma_order" or
/// "point_on_curve".
Aut make_aut(const CurveParams& params, const Fe& gamma, const Fe& delta, const Fe& mu);
Aut identity_aut(const CurveParams& params);

/// Image of P; throws Falsification if it leaves the curve.
AffinePoint apply(const CurveParams& params, const Aut& a, const AffinePoint& pt);
/// Image of P without the on-curve assertion.
AffinePoint apply_unchecked(const Aut& a, const AffinePoint& pt);

/// a∘b by the closed-form law; throws Falsification if (δ, μ) leaves the curve.
Aut compose(const CurveParams& params, const Aut& a, const Aut& b);
Aut inverse(const CurveParams& params, const Aut& a);

/// All γ with γ^h = 1, ascending by field index.
std::vector<Fe> h_gammas(const CurveParams& params);

/// The enumerated group as an indexed table: index = γ-index·#points + point index.
class GroupTable {
 public:
  GroupTable(const CurveParams& params, std::uint64_t max_order);

  const CurveParams& params() const { return params_; }
  const PointSet& points() const { return points_; }
  const std::vector<Fe>& gammas() const { return gammas_; }
  std::uint64_t size() const { return gammas_.size() * points_.count(); }
  Aut at(std::uint64_t i) const;
  /// Index of an element with these parameters, or none if it is not in G.
  std::optional<std::uint64_t> index_of(const Fe& gamma, const Fe& delta, const Fe& mu) const;
  std::optional<std::uint64_t> index_of(const Aut& a) const { return index_of(a.gamma, a.delta, a.mu); }

 private:
  CurveParams params_;
  PointSet points_;
  std::vector<Fe> gammas_;
  std::unordered_map<std::uint64_t, std::uint64_t> gamma_pos_;
};

/// Throws BudgetExceeded when |G| > max_order.
std::vector<Aut> enumerate_group(const CurveParams& params, std::uint64_t max_order = std::uint64_t{1} << 16);

struct GenusMismatch {
  BigInt genus;
  BigInt field_size;  // q^n, the field of definition
  bool hermitian_match = false;
  bool dls_applicable = false;
  bool dls_match = false;
  bool dlr_applicable = false;
  bool dlr_match = false;
  // Hermitian genus with n' any power of p (not just of q^n); informational.
  std::optional<BigInt> loose_hermitian_n;

  bool mismatch() const { return !hermitian_match && !dls_match && !dlr_match; }
};

/// Compares the genus with the Hermitian, Suzuki (DLS) and Ree (DLR) genera
/// over GF(q^n).
GenusMismatch genus_mismatch(const CurveParams& params);

struct GroupOptions {
  std::uint64_t max_order = std::uint64_t{1} << 16;  // enumeration budget
  std::uint64_t exhaustive_limit = 512;              // |G| for exhaustive pair checks
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
};

struct GroupReport {
  BigInt order_G, order_N, order_H;
  BigInt expected_order;
  bool exhaustive = false;
  std::uint64_t pair_checks = 0;  // closure / normality pairs examined

  bool order_ok = false;
  bool identity_ok = false;
  bool closure_ok = false;
  bool inverses_ok = false;
  bool N_normal_ok = false;
  bool H_cyclic_ok = false;
  bool complement_ok = false;  // N ∩ H = {id} and |N|·|H| = |G|
  bool sylow_ok = false;       // |N| a power of p, gcd(|H|, p) = 1
  bool lambda_ok = false;      // γ^{q+1} ∈ GF(q)
  bool action_ok = false;      // every map permutes the affine points
  std::optional<bool> uniqueness_ok;  // distinct parameters, distinct maps

  bool compose_law_ok = false;
  bool compose_law_exhaustive = false;
  std::uint64_t compose_pairs = 0;
  std::uint64_t compose_point_checks = 0;

  BigInt precondition_lhs, precondition_rhs;  // q^{2n-1} > q^r(q^{n-1}-1)+1
  bool precondition_ok = false;
  GenusMismatch genus;

  std::string counterexample;

  bool ok() const;
};

GroupReport verify_group_structure(const CurveParams& params, const GroupOptions& opts = {});

}  // namespace xnr
