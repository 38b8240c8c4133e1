#include "xnr/ff.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "xnr/errors.hpp"

namespace xnr {

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || v > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    throw std::overflow_error("integer " + v.str() + " does not fit in 64 bits");
  }
  return v.convert_to<std::uint64_t>();
}

bool is_power_of(const BigInt& v, std::uint32_t p) {
  if (v <= 0) return false;
  BigInt x = v;
  while (x % p == 0) x /= p;
  return x == 1;
}

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

namespace upoly {
namespace {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p prime: a^{p-2}
  std::uint64_t result = 1, b = a % p;
  std::uint64_t e = p - 2;
  while (e) {
    if (e & 1) result = result * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

Poly rem(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - f.size();
    for (std::size_t j = 0; j <= df; ++j) {
      a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * f[j] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return rem(std::move(prod), f, p);
}

Poly powmod(Poly base, std::uint64_t e, const Poly& f, std::uint32_t p) {
  Poly result{1};
  base = rem(std::move(base), f, p);
  while (e) {
    if (e & 1) result = mulmod(result, base, f, p);
    e >>= 1;
    if (e) base = mulmod(base, base, f, p);
  }
  return result;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible(const Poly& f_in, std::uint32_t p) {
  Poly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t d = f.size() - 1;
  if (d == 1) return true;
  const Poly x{0, 1};
  // h[k] = x^{p^k} mod f
  std::vector<Poly> h{x};
  for (std::size_t k = 1; k <= d; ++k) h.push_back(powmod(h.back(), p, f, p));
  auto minus_x = [&](Poly g) {
    if (g.size() < 2) g.resize(2, 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    return g;
  };
  if (!minus_x(h[d]).empty()) return false;
  for (std::uint64_t l : prime_factors(d)) {
    Poly g = gcd(minus_x(h[d / l]), f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace upoly

// ---------------------------------------------------------------------------

FieldRef build_field(std::uint32_t p, unsigned m, unsigned n, const FieldOptions& opts) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw InvalidArgument("p_prime", "p must be prime (got " + std::to_string(p) + ")");
  }
  if (m == 0 || n == 0) {
    throw InvalidArgument("degree_positive", "field degree m*n must be positive");
  }
  const unsigned d = m * n;
  const BigInt size = ipow(BigInt(p), d);
  if (size > BigInt(opts.max_field_size)) {
    throw BudgetExceeded("field size " + size.str() + " exceeds budget " +
                         std::to_string(opts.max_field_size));
  }

  // Smallest monic irreducible of degree d in lex order (x^{d-1} coefficient
  // most significant) == odometer order with the constant term fastest.
  upoly::Poly cand(d + 1, 0);
  cand[d] = 1;
  for (;;) {
    if (upoly::is_irreducible(cand, p)) break;
    std::size_t i = 0;
    while (i < d && ++cand[i] == p) cand[i++] = 0;
    if (i == d) throw std::logic_error("no irreducible polynomial found");
  }

  auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
  ctx->p_ = p;
  ctx->m_ = m;
  ctx->n_ = n;
  ctx->modulus_ = cand;
  ctx->q_ = ipow(BigInt(p), m);
  ctx->qn_ = size;
  ctx->q_word_ = to_u64(ctx->q_);
  ctx->size_word_ = to_u64(size);

  // Rows of the p-power map: (x^i)^p = (x^p)^i.
  Coeffs xvar(d, 0);
  if (d > 1) {
    xvar[1] = 1;
  } else {
    // GF(p) itself: x ≡ -modulus[0].
    xvar[0] = (p - cand[0]) % p;
  }
  Coeffs xpow(d, 0);
  xpow[0] = 1;
  Coeffs tmp;
  for (std::uint32_t e = p; e != 0; e >>= 1) {
    if (e & 1u) {
      ctx->mul_into(view(xpow), view(xvar), tmp);
      xpow = tmp;
    }
    if (e >> 1) {
      ctx->mul_into(view(xvar), view(xvar), tmp);
      xvar = tmp;
    }
  }
  // xpow = x^p; row i = (x^p)^i
  Coeffs row(d, 0);
  row[0] = 1;
  for (unsigned i = 0; i < d; ++i) {
    ctx->frob_rows_.push_back(row);
    ctx->mul_into(view(row), view(xpow), tmp);
    row = tmp;
  }
  return ctx;
}

void FieldCtx::mul_into(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                        Coeffs& out) const {
  const unsigned d = degree();
  const std::uint64_t p = p_;
  std::uint64_t buf[128];
  std::vector<std::uint64_t> big;
  std::uint64_t* t = buf;
  const std::size_t len = 2 * d - 1;
  if (len > 128) {
    big.assign(len, 0);
    t = big.data();
  } else {
    std::fill(buf, buf + len, 0);
  }
  for (unsigned i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) t[i + j] = (t[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  }
  for (std::size_t i = len; i-- > d;) {
    const std::uint64_t c = t[i];
    if (c == 0) continue;
    const std::size_t shift = i - d;
    for (unsigned j = 0; j < d; ++j) {
      t[shift + j] = (t[shift + j] + (p - c) * modulus_[j]) % p;
    }
    t[i] = 0;
  }
  out.assign(d, 0);
  for (unsigned i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(t[i]);
}

void FieldCtx::frobenius_p_into(std::span<const std::uint32_t> a, Coeffs& out) const {
  const unsigned d = degree();
  const std::uint64_t p = p_;
  std::uint64_t acc[64];
  std::vector<std::uint64_t> big;
  std::uint64_t* t = acc;
  if (d > 64) {
    big.assign(d, 0);
    t = big.data();
  } else {
    std::fill(acc, acc + d, 0);
  }
  for (unsigned i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    const Coeffs& row = frob_rows_[i];
    for (unsigned j = 0; j < d; ++j) t[j] = (t[j] + std::uint64_t{a[i]} * row[j]) % p;
  }
  out.assign(d, 0);
  for (unsigned j = 0; j < d; ++j) out[j] = static_cast<std::uint32_t>(t[j]);
}

Fe FieldCtx::zero() const { return Fe(shared_from_this(), Coeffs(degree(), 0)); }

Fe FieldCtx::one() const {
  Coeffs c(degree(), 0);
  c[0] = 1;
  return Fe(shared_from_this(), std::move(c));
}

Fe FieldCtx::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  Coeffs c(degree(), 0);
  c[0] = static_cast<std::uint32_t>(r);
  return Fe(shared_from_this(), std::move(c));
}

Fe FieldCtx::element(std::uint64_t index) const {
  if (index >= size_word_) throw std::out_of_range("field element index out of range");
  Coeffs c(degree(), 0);
  for (unsigned i = 0; i < degree(); ++i) {
    c[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return Fe(shared_from_this(), std::move(c));
}

Fe FieldCtx::from_coeffs(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() != degree()) throw std::invalid_argument("coefficient vector has wrong length");
  Coeffs c(coeffs.begin(), coeffs.end());
  for (auto& v : c) v %= p_;
  return Fe(shared_from_this(), std::move(c));
}

Fe FieldCtx::generator_x() const {
  if (degree() == 1) return from_int(static_cast<std::int64_t>(p_ - modulus_[0]));
  Coeffs c(degree(), 0);
  c[1] = 1;
  return Fe(shared_from_this(), std::move(c));
}

// ---------------------------------------------------------------------------

Fe::Fe(FieldRef field, Coeffs coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  if (!field_) throw std::invalid_argument("null field");
  if (c_.size() != field_->degree()) throw std::invalid_argument("coefficient vector has wrong length");
  for (auto v : c_) {
    if (v >= field_->p()) throw std::invalid_argument("coefficient out of range");
  }
}

void Fe::check_same(const Fe& other) const {
  if (!field_ || !other.field_) throw std::invalid_argument("uninitialised field element");
  if (field_ != other.field_ && !field_->same_field(*other.field_)) {
    throw InvalidArgument("context_mismatch", "field elements belong to different fields");
  }
}

bool Fe::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t v) { return v == 0; });
}

bool Fe::is_one() const {
  if (c_.empty() || c_[0] != 1) return false;
  return std::all_of(c_.begin() + 1, c_.end(), [](std::uint32_t v) { return v == 0; });
}

std::uint64_t Fe::index() const {
  std::uint64_t idx = 0;
  for (std::size_t i = c_.size(); i-- > 0;) idx = idx * field_->p() + c_[i];
  return idx;
}

Fe& Fe::operator+=(const Fe& rhs) {
  check_same(rhs);
  const std::uint32_t p = field_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::uint32_t s = c_[i] + rhs.c_[i];
    c_[i] = s >= p ? s - p : s;
  }
  return *this;
}

Fe& Fe::operator-=(const Fe& rhs) {
  check_same(rhs);
  const std::uint32_t p = field_->p();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    c_[i] = c_[i] >= rhs.c_[i] ? c_[i] - rhs.c_[i] : c_[i] + p - rhs.c_[i];
  }
  return *this;
}

Fe& Fe::operator*=(const Fe& rhs) {
  check_same(rhs);
  Coeffs out;
  field_->mul_into(coeffs(), rhs.coeffs(), out);
  c_ = std::move(out);
  return *this;
}

Fe& Fe::operator/=(const Fe& rhs) {
  check_same(rhs);
  return *this *= inv(rhs);
}

Fe operator-(const Fe& a) {
  Fe r = a;
  const std::uint32_t p = a.field_->p();
  for (auto& v : r.c_) v = v == 0 ? 0 : p - v;
  return r;
}

bool operator==(const Fe& a, const Fe& b) {
  a.check_same(b);
  return a.c_ == b.c_;
}

Fe Fe::scaled(std::uint32_t k) const {
  Fe r = *this;
  const std::uint64_t p = field_->p();
  k %= field_->p();
  for (auto& v : r.c_) v = static_cast<std::uint32_t>(std::uint64_t{v} * k % p);
  return r;
}

// ---------------------------------------------------------------------------

Fe arith(const Fe& a, const Fe& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw std::logic_error("unknown op");
}

Fe pow(const Fe& a, const BigInt& e) {
  if (e < 0) return pow(inv(a), BigInt(-e));
  if (e == 0) return a.ctx().one();
  if (a.is_zero()) return a;
  // Nonzero elements have order dividing qn - 1.
  const BigInt reduced = e % (a.ctx().qn() - 1);
  Fe result = a.ctx().one();
  Fe base = a;
  const unsigned bits = reduced == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(reduced)) + 1;
  for (unsigned i = 0; i < bits; ++i) {
    if (boost::multiprecision::bit_test(reduced, i)) result *= base;
    if (i + 1 < bits) base *= base;
  }
  return result;
}

Fe pow(const Fe& a, std::uint64_t e) { return pow(a, BigInt(e)); }

Fe inv(const Fe& a) {
  if (a.is_zero()) throw std::domain_error("division by zero in finite field");
  return pow(a, a.ctx().qn() - 2);
}

Fe neg(const Fe& a) { return -a; }

Fe frobenius_p(const Fe& a) {
  Coeffs out;
  a.ctx().frobenius_p_into(a.coeffs(), out);
  return Fe(a.field(), std::move(out));
}

Fe frobenius(const Fe& a, unsigned i) {
  const FieldCtx& ctx = a.ctx();
  const unsigned steps = (ctx.m() * i) % ctx.degree();
  Coeffs cur(a.coeffs().begin(), a.coeffs().end());
  Coeffs next;
  for (unsigned s = 0; s < steps; ++s) {
    ctx.frobenius_p_into(view(cur), next);
    std::swap(cur, next);
  }
  return Fe(a.field(), std::move(cur));
}

Fe additive_trace(const Fe& a, unsigned terms) {
  Fe acc = a.ctx().zero();
  Fe cur = a;
  for (unsigned i = 0; i < terms; ++i) {
    acc += cur;
    if (i + 1 < terms) cur = frobenius(cur, 1);
  }
  return acc;
}

Fe trace_n(const Fe& a) { return additive_trace(a, a.ctx().n()); }

bool in_subfield(const Fe& a, unsigned e) { return frobenius(a, e) == a; }

std::uint64_t mult_order(const Fe& a) {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative order");
  std::uint64_t order = a.ctx().size() - 1;
  for (std::uint64_t l : prime_factors(order)) {
    while (order % l == 0 && pow(a, order / l).is_one()) order /= l;
  }
  return order;
}

Fe mult_generator(const FieldCtx& ctx) {
  const std::uint64_t group = ctx.size() - 1;
  const auto primes = prime_factors(group);
  for (std::uint64_t i = 1; i < ctx.size(); ++i) {
    Fe g = ctx.element(i);
    bool ok = true;
    for (std::uint64_t l : primes) {
      if (pow(g, group / l).is_one()) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("no multiplicative generator found");
}

}  // namespace xnr
