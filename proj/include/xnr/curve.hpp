#pragma once

// The curves T_n(y) = f_r(x) over GF(q^n): parameter validation, the
// polynomial f_r, rational affine points and the closed-form statistics.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "xnr/bigint.hpp"
#include "xnr/ff.hpp"

namespace xnr {

struct CurveParams {
  FieldRef field;
  unsigned n = 0;
  unsigned r = 0;

  std::uint32_t p() const { return field->p(); }
  unsigned m() const { return field->m(); }
  const BigInt& q() const { return field->q(); }
  /// q^k for k >= 0.
  BigInt qpow(unsigned k) const { return ipow(field->q(), k); }
};

/// Checks n >= 2, gcd(n, r) = 1 and the admissible range of r; the field must
/// be GF(q^n) for the same n. Throws InvalidArgument naming the constraint.
CurveParams validate_params(const FieldRef& field, unsigned n, unsigned r);

/// Builds the field and validates in one step.
CurveParams make_curve(std::uint32_t p, unsigned m, unsigned n, unsigned r,
                       const FieldOptions& opts = {});

/// Smallest r >= n/2 coprime to n (r = 1 for n = 2).
unsigned canonical_r(unsigned n);

/// All r admissible for n, ascending.
std::vector<unsigned> admissible_r(unsigned n);

struct FrTerm {
  BigInt exponent;
  std::uint32_t coeff = 0;  // in [1, p)

  friend bool operator==(const FrTerm&, const FrTerm&) = default;
};

/// Sparse form of f_r. For n > 2 this is the explicit two-sum expansion; for
/// n = 2 it is the reduction of T_n(x^{1+q^r}) modulo x^{q^n} - x. Sorted by
/// exponent, zero coefficients dropped.
std::vector<FrTerm> fr_exponents(const CurveParams& params);

/// T_n(x^{1+q^r}) reduced modulo x^{q^n} - x (e ↦ e - (q^n - 1) while
/// e >= q^n), like terms collected mod p. Valid for every n.
std::vector<FrTerm> reduced_trace_exponents(const CurveParams& params);

/// True when f_r is the zero polynomial (n = 2 in characteristic 2).
bool fr_vanishes(const CurveParams& params);

/// Σ coeff·a^exponent; `a` may live in any field of characteristic p.
Fe eval_terms(std::span<const FrTerm> terms, const Fe& a);

/// f_r(a); throws Falsification if the value is not in GF(q).
Fe eval_fr(const CurveParams& params, const Fe& a);

/// All y in GF(q^n) with T_n(y) = c, ascending by index. c must lie in GF(q).
std::vector<Fe> fiber(const CurveParams& params, const Fe& c);

struct AffinePoint {
  Fe x;
  Fe y;
  friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

bool on_curve(const CurveParams& params, const AffinePoint& pt);

struct CurveStats {
  BigInt degree;
  BigInt genus;
  BigInt n_points;  // affine points + 1
};

CurveStats stats(const CurveParams& params);

struct EnumOptions {
  BigInt max_points = BigInt(1) << 24;
  bool override_budget = false;
};

/// Table of the GF(q^n)-rational affine points. Only the q^n values of f_r and
/// the trace fibres are stored; points are addressed by a dense index ordered
/// by x (enumeration order) and then by y.
class PointSet {
 public:
  explicit PointSet(const CurveParams& params);

  const CurveParams& params() const { return params_; }
  std::uint64_t count() const { return offsets_.back(); }

  AffinePoint point(std::uint64_t index) const;
  std::optional<std::uint64_t> index_of(const AffinePoint& pt) const;
  /// Indices (field enumeration order) of the y with T_n(y) = c.
  const std::vector<std::uint64_t>& fiber_of(const Fe& c) const;
  const Fe& fr_at(std::uint64_t x_index) const { return fr_values_[x_index]; }

  void for_each(const std::function<void(const AffinePoint&)>& fn) const;

 private:
  CurveParams params_;
  std::vector<Fe> fr_values_;
  // trace value (as GF(q^n) index) -> sorted y indices
  std::vector<std::vector<std::uint64_t>> buckets_;
  std::vector<std::uint64_t> bucket_of_value_;
  std::vector<std::uint64_t> x_bucket_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint64_t> empty_;
};

/// Throws BudgetExceeded when q^{2n-1} > opts.max_points (unless overridden).
void check_point_budget(const CurveParams& params, const EnumOptions& opts);

std::vector<AffinePoint> enumerate_points(const CurveParams& params, const EnumOptions& opts = {});
void for_each_point(const CurveParams& params, const std::function<void(const AffinePoint&)>& fn,
                    const EnumOptions& opts = {});
BigInt count_points(const CurveParams& params, const EnumOptions& opts = {});

/// x^{q^{n-r}+1} - x^{q^n+q^{n-r}}, the right-hand side of the second plane model.
Fe eval_model2_rhs(const CurveParams& params, const Fe& a);

/// Number of (x, w) in GF(q^n)^2 with T_n(w) = model2 rhs(x).
BigInt model2_point_count(const CurveParams& params, const EnumOptions& opts = {});

}  // namespace xnr
