#include "xnr/poly2.hpp"

#include <sstream>

#include "xnr/errors.hpp"

namespace xnr {

namespace {

std::uint32_t residue(std::int64_t c, std::uint32_t p) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r);
}

}  // namespace

Poly2 Poly2::monomial(std::uint32_t p, std::int64_t coeff, BigInt x, BigInt y) {
  Poly2 f(p);
  f.add_term(Mono{std::move(x), std::move(y)}, coeff);
  return f;
}

void Poly2::add_term(const Mono& m, std::int64_t coeff) {
  if (m.x < 0 || m.y < 0) throw std::invalid_argument("negative exponent in Poly2");
  const std::uint32_t c = residue(coeff, p_);
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second = (it->second + c) % p_;
    if (it->second == 0) terms_.erase(it);
  }
  normal_ = false;
}

Poly2& Poly2::operator+=(const Poly2& rhs) {
  if (rhs.p_ != p_) throw std::invalid_argument("Poly2 characteristic mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly2& Poly2::operator-=(const Poly2& rhs) {
  if (rhs.p_ != p_) throw std::invalid_argument("Poly2 characteristic mismatch");
  for (const auto& [m, c] : rhs.terms_) add_term(m, static_cast<std::int64_t>(p_ - c));
  return *this;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("Poly2 characteristic mismatch");
  Poly2 out(a.p_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(Mono{ma.x + mb.x, ma.y + mb.y},
                   static_cast<std::int64_t>(std::uint64_t{ca} * cb % a.p_));
    }
  }
  return out;
}

Poly2 Poly2::scaled(std::int64_t k) const {
  Poly2 out(p_);
  const std::uint32_t c = residue(k, p_);
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, static_cast<std::uint32_t>(std::uint64_t{v} * c % p_));
  return out;
}

Poly2 Poly2::times_monomial(const BigInt& x, const BigInt& y) const {
  Poly2 out(p_);
  for (const auto& [m, v] : terms_) out.terms_.emplace(Mono{m.x + x, m.y + y}, v);
  return out;
}

Poly2 Poly2::frobenius_scaled(const BigInt& pk) const {
  if (!is_power_of(pk, p_)) throw std::invalid_argument("Frobenius scaling needs a power of p");
  Poly2 out(p_);
  for (const auto& [m, v] : terms_) out.terms_.emplace(Mono{m.x * pk, m.y * pk}, v);
  return out;
}

BigInt Poly2::y_degree() const {
  BigInt d = -1;
  for (const auto& [m, v] : terms_) {
    if (m.y > d) d = m.y;
  }
  return d;
}

Fe Poly2::eval(const Fe& x, const Fe& y) const {
  Fe acc = x.ctx().zero();
  for (const auto& [m, v] : terms_) acc += (pow(x, m.x) * pow(y, m.y)).scaled(v);
  return acc;
}

std::string Poly2::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, v] = *it;
    if (!first) os << " + ";
    first = false;
    bool wrote = false;
    if (v != 1 || (m.x == 0 && m.y == 0)) {
      os << v;
      wrote = true;
    }
    if (m.x != 0) {
      os << (wrote ? "*" : "") << "x";
      if (m.x != 1) os << "^" << m.x;
      wrote = true;
    }
    if (m.y != 0) {
      os << (wrote ? "*" : "") << "y";
      if (m.y != 1) os << "^" << m.y;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

NormalFormer::NormalFormer(const CurveParams& params, std::size_t term_budget)
    : params_(params), budget_(term_budget), d_(params.qpow(params.n - 1)), relation_(params.p()) {
  for (const auto& t : fr_exponents(params)) relation_.add_term(Mono{t.exponent, 0}, t.coeff);
  for (unsigned i = 0; i + 1 < params.n; ++i) relation_.add_term(Mono{0, params.qpow(i)}, -1);
}

void NormalFormer::check_budget(std::size_t n) const {
  if (n > budget_) {
    throw BudgetExceeded("normal form exceeded " + std::to_string(budget_) + " terms");
  }
}

void NormalFormer::divide(Poly2& f) {
  // Work keyed by (y, x) so the largest y-degree is always at the back.
  std::map<std::pair<BigInt, BigInt>, std::uint32_t> work;
  const std::uint32_t p = params_.p();
  Poly2 done(p);
  for (const auto& [m, c] : f.terms()) {
    if (m.y < d_) {
      done.add_term(m, c);
    } else {
      work.emplace(std::make_pair(m.y, m.x), c);
    }
  }
  while (!work.empty()) {
    auto it = std::prev(work.end());
    const BigInt y = it->first.first;
    const BigInt x = it->first.second;
    const std::uint32_t c = it->second;
    work.erase(it);
    const BigInt rest = y - d_;
    for (const auto& [rm, rc] : relation_.terms()) {
      const BigInt ny = rest + rm.y;
      const BigInt nx = x + rm.x;
      const auto coeff = static_cast<std::uint32_t>(std::uint64_t{c} * rc % p);
      if (ny < d_) {
        done.add_term(Mono{nx, ny}, coeff);
      } else {
        auto [wit, inserted] = work.try_emplace(std::make_pair(ny, nx), coeff);
        if (!inserted) {
          wit->second = (wit->second + coeff) % p;
          if (wit->second == 0) work.erase(wit);
        }
      }
    }
    check_budget(work.size() + done.size());
  }
  f = std::move(done);
}

const Poly2& NormalFormer::y_pow_p(unsigned k) {
  const std::uint32_t p = params_.p();
  if (ypow_.empty()) ypow_.push_back(Poly2::monomial(p, 1, 0, 1));
  while (ypow_.size() <= k) {
    Poly2 next = ypow_.back().frobenius_scaled(BigInt(p));
    if (next.y_degree() >= d_) divide(next);
    next.set_normal(true);
    check_budget(next.size());
    ypow_.push_back(std::move(next));
  }
  return ypow_[k];
}

Poly2 NormalFormer::y_pow(const BigInt& e) {
  const std::uint32_t p = params_.p();
  if (e < d_) return Poly2::monomial(p, 1, 0, e);
  Poly2 acc = Poly2::monomial(p, 1, 0, 0);
  BigInt rest = e;
  unsigned k = 0;
  while (rest != 0) {
    const auto digit = static_cast<unsigned>(rest % p);
    rest /= p;
    for (unsigned i = 0; i < digit; ++i) {
      acc = acc * y_pow_p(k);
      if (acc.y_degree() >= d_) divide(acc);
      check_budget(acc.size());
    }
    ++k;
  }
  return acc;
}

Poly2 NormalFormer::reduce(const Poly2& f) {
  const std::uint32_t p = params_.p();
  if (f.p() != p) throw std::invalid_argument("Poly2 characteristic mismatch");
  Poly2 out(p);
  // Group by y-exponent so each NF(y^b) is computed once.
  std::map<BigInt, std::vector<std::pair<BigInt, std::uint32_t>>> by_y;
  for (const auto& [m, c] : f.terms()) by_y[m.y].emplace_back(m.x, c);
  for (const auto& [y, xs] : by_y) {
    if (y < d_) {
      for (const auto& [x, c] : xs) out.add_term(Mono{x, y}, c);
      continue;
    }
    const Poly2 ny = y_pow(y);
    for (const auto& [x, c] : xs) {
      for (const auto& [m, v] : ny.terms()) {
        out.add_term(Mono{m.x + x, m.y}, static_cast<std::int64_t>(std::uint64_t{v} * c % p));
      }
      check_budget(out.size());
    }
  }
  out.set_normal(true);
  return out;
}

Poly2 normal_form(const CurveParams& params, const Poly2& f, std::size_t term_budget) {
  NormalFormer nf(params, term_budget);
  return nf.reduce(f);
}

}  // namespace xnr
