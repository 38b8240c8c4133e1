#include "xnr/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "xnr/errors.hpp"

namespace xnr {

CurveParams validate_params(const FieldRef& field, unsigned n, unsigned r) {
  if (!field) throw std::invalid_argument("null field");
  if (n < 2) throw InvalidArgument("n_at_least_2", "n must be at least 2 (got " + std::to_string(n) + ")");
  if (field->n() != n) {
    throw InvalidArgument("field_degree", "field is GF(q^" + std::to_string(field->n()) +
                                              ") but n = " + std::to_string(n));
  }
  if (std::gcd(n, r) != 1) {
    throw InvalidArgument("gcd_n_r", "gcd(" + std::to_string(n) + ", " + std::to_string(r) +
                                         ") = " + std::to_string(std::gcd(n, r)) + " != 1");
  }
  const unsigned lo = n == 2 ? 1 : (n + 1) / 2;
  const unsigned hi = n == 2 ? 1 : n - 1;
  if (r < lo || r > hi) {
    throw InvalidArgument("r_range", "r = " + std::to_string(r) + " outside [" + std::to_string(lo) +
                                         ", " + std::to_string(hi) + "] for n = " + std::to_string(n));
  }
  return CurveParams{field, n, r};
}

CurveParams make_curve(std::uint32_t p, unsigned m, unsigned n, unsigned r, const FieldOptions& opts) {
  if (n < 2) throw InvalidArgument("n_at_least_2", "n must be at least 2 (got " + std::to_string(n) + ")");
  return validate_params(build_field(p, m, n, opts), n, r);
}

unsigned canonical_r(unsigned n) {
  if (n < 2) throw InvalidArgument("n_at_least_2", "n must be at least 2");
  if (n == 2) return 1;
  if (n % 2 == 1) return (n + 1) / 2;
  if (n % 4 == 0) return n / 2 + 1;
  return n / 2 + 2;
}

std::vector<unsigned> admissible_r(unsigned n) {
  if (n < 2) return {};
  if (n == 2) return {1};
  std::vector<unsigned> out;
  for (unsigned r = (n + 1) / 2; r <= n - 1; ++r) {
    if (std::gcd(n, r) == 1) out.push_back(r);
  }
  return out;
}

namespace {

std::vector<FrTerm> collect(const std::map<BigInt, std::uint64_t>& acc, std::uint32_t p) {
  std::vector<FrTerm> out;
  for (const auto& [e, c] : acc) {
    const auto v = static_cast<std::uint32_t>(c % p);
    if (v != 0) out.push_back({e, v});
  }
  return out;
}

}  // namespace

std::vector<FrTerm> reduced_trace_exponents(const CurveParams& params) {
  const BigInt qn = params.qpow(params.n);
  const BigInt base = 1 + params.qpow(params.r);
  std::map<BigInt, std::uint64_t> acc;
  for (unsigned i = 0; i < params.n; ++i) {
    BigInt e = base * params.qpow(i);
    if (e >= qn) e = (e - 1) % (qn - 1) + 1;  // repeated e -> e - (q^n - 1)
    acc[e] += 1;
  }
  return collect(acc, params.p());
}

std::vector<FrTerm> fr_exponents(const CurveParams& params) {
  if (params.n == 2) return reduced_trace_exponents(params);
  const unsigned n = params.n, r = params.r;
  std::map<BigInt, std::uint64_t> acc;
  for (unsigned i = 0; i + r < n; ++i) acc[(1 + params.qpow(r)) * params.qpow(i)] += 1;
  for (unsigned i = 0; i < r; ++i) acc[(1 + params.qpow(n - r)) * params.qpow(i)] += 1;
  return collect(acc, params.p());
}

bool fr_vanishes(const CurveParams& params) { return fr_exponents(params).empty(); }

Fe eval_terms(std::span<const FrTerm> terms, const Fe& a) {
  Fe acc = a.ctx().zero();
  for (const auto& t : terms) acc += pow(a, t.exponent).scaled(t.coeff);
  return acc;
}

Fe eval_fr(const CurveParams& params, const Fe& a) {
  const Fe v = eval_terms(fr_exponents(params), a);
  if (!in_subfield(v, 1)) {
    throw Falsification("f_r(a) not in GF(q) at a = #" + std::to_string(a.index()));
  }
  return v;
}

std::vector<Fe> fiber(const CurveParams& params, const Fe& c) {
  if (!in_subfield(c, 1)) throw InvalidArgument("fiber_value_in_Fq", "fiber value must lie in GF(q)");
  std::vector<Fe> out;
  const FieldCtx& ctx = *params.field;
  for (std::uint64_t i = 0; i < ctx.size(); ++i) {
    Fe y = ctx.element(i);
    if (trace_n(y) == c) out.push_back(std::move(y));
  }
  return out;
}

bool on_curve(const CurveParams& params, const AffinePoint& pt) {
  return additive_trace(pt.y, params.n) == eval_terms(fr_exponents(params), pt.x);
}

CurveStats stats(const CurveParams& params) {
  const unsigned n = params.n, r = params.r;
  CurveStats s;
  s.degree = params.qpow(n - 1) + params.qpow(r - 1);
  s.genus = params.qpow(r) * (params.qpow(n - 1) - 1) / 2;
  s.n_points = params.qpow(2 * n - 1) + 1;
  return s;
}

// ---------------------------------------------------------------------------

PointSet::PointSet(const CurveParams& params) : params_(params) {
  const FieldCtx& ctx = *params.field;
  const std::uint64_t size = ctx.size();
  const auto terms = fr_exponents(params);

  bucket_of_value_.assign(size, UINT64_MAX);
  for (std::uint64_t i = 0; i < size; ++i) {
    const Fe y = ctx.element(i);
    const std::uint64_t t = trace_n(y).index();
    if (bucket_of_value_[t] == UINT64_MAX) {
      bucket_of_value_[t] = buckets_.size();
      buckets_.emplace_back();
    }
    buckets_[bucket_of_value_[t]].push_back(i);
  }

  fr_values_.reserve(size);
  x_bucket_.reserve(size);
  offsets_.reserve(size + 1);
  offsets_.push_back(0);
  for (std::uint64_t i = 0; i < size; ++i) {
    Fe v = eval_terms(terms, ctx.element(i));
    if (!in_subfield(v, 1)) {
      throw Falsification("f_r(a) not in GF(q) at a = #" + std::to_string(i));
    }
    const std::uint64_t b = bucket_of_value_[v.index()];
    x_bucket_.push_back(b);
    offsets_.push_back(offsets_.back() + (b == UINT64_MAX ? 0 : buckets_[b].size()));
    fr_values_.push_back(std::move(v));
  }
}

AffinePoint PointSet::point(std::uint64_t index) const {
  if (index >= count()) throw std::out_of_range("point index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const std::uint64_t x = static_cast<std::uint64_t>(it - offsets_.begin()) - 1;
  const auto& ys = buckets_[x_bucket_[x]];
  const FieldCtx& ctx = *params_.field;
  return {ctx.element(x), ctx.element(ys[index - offsets_[x]])};
}

std::optional<std::uint64_t> PointSet::index_of(const AffinePoint& pt) const {
  const std::uint64_t x = pt.x.index();
  const std::uint64_t b = x_bucket_[x];
  if (b == UINT64_MAX) return std::nullopt;
  const auto& ys = buckets_[b];
  const std::uint64_t y = pt.y.index();
  const auto it = std::lower_bound(ys.begin(), ys.end(), y);
  if (it == ys.end() || *it != y) return std::nullopt;
  return offsets_[x] + static_cast<std::uint64_t>(it - ys.begin());
}

const std::vector<std::uint64_t>& PointSet::fiber_of(const Fe& c) const {
  const std::uint64_t b = bucket_of_value_[c.index()];
  return b == UINT64_MAX ? empty_ : buckets_[b];
}

void PointSet::for_each(const std::function<void(const AffinePoint&)>& fn) const {
  const FieldCtx& ctx = *params_.field;
  for (std::uint64_t x = 0; x < ctx.size(); ++x) {
    if (x_bucket_[x] == UINT64_MAX) continue;
    const Fe xe = ctx.element(x);
    for (std::uint64_t y : buckets_[x_bucket_[x]]) fn(AffinePoint{xe, ctx.element(y)});
  }
}

void check_point_budget(const CurveParams& params, const EnumOptions& opts) {
  const BigInt expected = params.qpow(2 * params.n - 1);
  if (!opts.override_budget && expected > opts.max_points) {
    throw BudgetExceeded("point enumeration of " + expected.str() + " points exceeds budget " +
                         opts.max_points.str());
  }
}

std::vector<AffinePoint> enumerate_points(const CurveParams& params, const EnumOptions& opts) {
  check_point_budget(params, opts);
  std::vector<AffinePoint> out;
  PointSet(params).for_each([&](const AffinePoint& pt) { out.push_back(pt); });
  return out;
}

void for_each_point(const CurveParams& params, const std::function<void(const AffinePoint&)>& fn,
                    const EnumOptions& opts) {
  check_point_budget(params, opts);
  PointSet(params).for_each(fn);
}

BigInt count_points(const CurveParams& params, const EnumOptions& opts) {
  check_point_budget(params, opts);
  return PointSet(params).count();
}

Fe eval_model2_rhs(const CurveParams& params, const Fe& a) {
  const BigInt qnr = params.qpow(params.n - params.r);
  return pow(a, qnr + 1) - pow(a, params.qpow(params.n) + qnr);
}

BigInt model2_point_count(const CurveParams& params, const EnumOptions& opts) {
  check_point_budget(params, opts);
  const FieldCtx& ctx = *params.field;
  std::vector<std::uint64_t> hist(ctx.size(), 0);
  for (std::uint64_t i = 0; i < ctx.size(); ++i) ++hist[trace_n(ctx.element(i)).index()];
  BigInt total = 0;
  for (std::uint64_t i = 0; i < ctx.size(); ++i) {
    total += hist[eval_model2_rhs(params, ctx.element(i)).index()];
  }
  return total;
}

}  // namespace xnr
