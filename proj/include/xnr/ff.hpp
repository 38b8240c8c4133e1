#pragma once

// Finite field tower GF(p) ⊆ GF(q) ⊆ GF(q^n), q = p^m.
//
// Elements of GF(q^n) are coefficient vectors over GF(p) modulo one monic
// irreducible polynomial of degree m·n (the lexicographically smallest one,
// coefficients compared from the x^{mn-1} term down). GF(q) is never built
// separately: it is the fixed field of a ↦ a^q.
//
// Elements are enumerated in odometer order (constant coefficient fastest);
// `Fe::index()` and `FieldCtx::element(i)` convert between the two views.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "xnr/bigint.hpp"

namespace xnr {

class FieldCtx;
class Fe;
using FieldRef = std::shared_ptr<const FieldCtx>;
using Coeffs = boost::container::small_vector<std::uint32_t, 12>;

inline std::span<const std::uint32_t> view(const Coeffs& c) { return {c.data(), c.size()}; }

struct FieldOptions {
  // Largest p^{mn} accepted by build_field.
  std::uint64_t max_field_size = std::uint64_t{1} << 32;
};

class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  std::uint32_t p() const { return p_; }
  unsigned m() const { return m_; }
  unsigned n() const { return n_; }
  unsigned degree() const { return m_ * n_; }

  /// Monic modulus, low-to-high coefficients, size degree()+1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  const BigInt& q() const { return q_; }
  const BigInt& qn() const { return qn_; }
  std::uint64_t q_u64() const { return q_word_; }
  std::uint64_t size() const { return size_word_; }

  Fe zero() const;
  Fe one() const;
  Fe from_int(std::int64_t v) const;
  Fe element(std::uint64_t index) const;
  Fe from_coeffs(std::span<const std::uint32_t> coeffs) const;
  /// The polynomial variable x, i.e. the class of x modulo the modulus.
  Fe generator_x() const;

  bool same_field(const FieldCtx& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_ && m_ == other.m_;
  }

  // Raw kernels on coefficient vectors; exposed for the linear-algebra code
  // in the curve/fnid modules.
  void mul_into(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                Coeffs& out) const;
  void frobenius_p_into(std::span<const std::uint32_t> a, Coeffs& out) const;

 private:
  friend FieldRef build_field(std::uint32_t, unsigned, unsigned, const FieldOptions&);
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  unsigned m_ = 0;
  unsigned n_ = 0;
  std::vector<std::uint32_t> modulus_;
  BigInt q_;
  BigInt qn_;
  std::uint64_t q_word_ = 0;
  std::uint64_t size_word_ = 0;
  // frob_rows_[i] = x^{i·p} mod modulus.
  std::vector<Coeffs> frob_rows_;
};

class Fe {
 public:
  Fe() = default;
  Fe(FieldRef field, Coeffs coeffs);

  const FieldRef& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }
  std::span<const std::uint32_t> coeffs() const { return {c_.data(), c_.size()}; }

  bool valid() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  std::uint64_t index() const;

  Fe& operator+=(const Fe& rhs);
  Fe& operator-=(const Fe& rhs);
  Fe& operator*=(const Fe& rhs);
  Fe& operator/=(const Fe& rhs);

  friend Fe operator+(Fe a, const Fe& b) { return a += b; }
  friend Fe operator-(Fe a, const Fe& b) { return a -= b; }
  friend Fe operator*(Fe a, const Fe& b) { return a *= b; }
  friend Fe operator/(Fe a, const Fe& b) { return a /= b; }
  friend Fe operator-(const Fe& a);
  friend bool operator==(const Fe& a, const Fe& b);
  friend bool operator!=(const Fe& a, const Fe& b) { return !(a == b); }

  Fe scaled(std::uint32_t k) const;

 private:
  void check_same(const Fe& other) const;

  FieldRef field_;
  Coeffs c_;
};

/// Builds GF(p^{mn}) as GF(q^n), q = p^m. n = 1 is permitted here.
FieldRef build_field(std::uint32_t p, unsigned m, unsigned n, const FieldOptions& opts = {});

enum class ArithOp { add, sub, mul, div };
Fe arith(const Fe& a, const Fe& b, ArithOp op);

Fe pow(const Fe& a, const BigInt& e);
Fe pow(const Fe& a, std::uint64_t e);
Fe inv(const Fe& a);
Fe neg(const Fe& a);

/// a^{q^i}.
Fe frobenius(const Fe& a, unsigned i);
/// a^p.
Fe frobenius_p(const Fe& a);

/// a + a^q + ... + a^{q^{terms-1}}.
Fe additive_trace(const Fe& a, unsigned terms);
/// Relative trace from GF(q^n) to GF(q), n taken from the element's field.
Fe trace_n(const Fe& a);

/// a^{q^e} == a.
bool in_subfield(const Fe& a, unsigned e);

/// First element (in enumeration order) of multiplicative order qn - 1.
Fe mult_generator(const FieldCtx& ctx);

/// Multiplicative order of a nonzero element.
std::uint64_t mult_order(const Fe& a);

/// Distinct prime divisors, ascending (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t v);
bool is_prime(std::uint64_t v);

namespace upoly {
// Dense polynomials over GF(p), low-to-high coefficients, no trailing zeros.
using Poly = std::vector<std::uint32_t>;
bool is_irreducible(const Poly& f, std::uint32_t p);
}  // namespace upoly

}  // namespace xnr
