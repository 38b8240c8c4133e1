#pragma once

// Sparse bivariate polynomials over GF(p) and reduction modulo the curve
// relation T_n(y) = f_r(x).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "xnr/bigint.hpp"
#include "xnr/curve.hpp"
#include "xnr/ff.hpp"

namespace xnr {

struct Mono {
  BigInt x;
  BigInt y;
  friend bool operator<(const Mono& a, const Mono& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
  friend bool operator==(const Mono& a, const Mono& b) { return a.x == b.x && a.y == b.y; }
};

class Poly2 {
 public:
  using Map = std::map<Mono, std::uint32_t>;

  explicit Poly2(std::uint32_t p) : p_(p) {}
  static Poly2 monomial(std::uint32_t p, std::int64_t coeff, BigInt x, BigInt y);

  std::uint32_t p() const { return p_; }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Set by NormalFormer on its outputs: every y-exponent < q^{n-1}.
  bool normal() const { return normal_; }
  void set_normal(bool v) { normal_ = v; }

  void add_term(const Mono& m, std::int64_t coeff);
  Poly2& operator+=(const Poly2& rhs);
  Poly2& operator-=(const Poly2& rhs);
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
  friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  friend bool operator==(const Poly2& a, const Poly2& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }

  Poly2 scaled(std::int64_t k) const;
  Poly2 times_monomial(const BigInt& x, const BigInt& y) const;
  /// f^{pk} for pk a power of p: exponents scale, coefficients are fixed by
  /// the Frobenius of GF(p).
  Poly2 frobenius_scaled(const BigInt& pk) const;

  BigInt y_degree() const;
  Fe eval(const Fe& x, const Fe& y) const;
  std::string to_string() const;

 private:
  std::uint32_t p_;
  Map terms_;
  bool normal_ = false;
};

/// Reduces polynomials to y-degree < q^{n-1} using
/// y^{q^{n-1}} = f_r(x) - Σ_{i<n-1} y^{q^i}. Normal forms of y^{p^k} are
/// memoised, so one instance should be reused across related reductions.
class NormalFormer {
 public:
  explicit NormalFormer(const CurveParams& params, std::size_t term_budget = 5'000'000);

  Poly2 reduce(const Poly2& f);
  const BigInt& y_bound() const { return d_; }
  std::size_t term_budget() const { return budget_; }

 private:
  const Poly2& y_pow_p(unsigned k);
  Poly2 y_pow(const BigInt& e);
  void divide(Poly2& f);
  void check_budget(std::size_t n) const;

  CurveParams params_;
  std::size_t budget_;
  BigInt d_;        // q^{n-1}
  Poly2 relation_;  // f_r(x) - Σ_{i<n-1} y^{q^i}
  std::vector<Poly2> ypow_;  // ypow_[k] = NF(y^{p^k})
};

Poly2 normal_form(const CurveParams& params, const Poly2& f, std::size_t term_budget = 5'000'000);

}  // namespace xnr
