#pragma once

// The functions x, y, z0, z, w, t of the function field, the identities
// their q^n-th powers satisfy, and pole orders at P_∞ derived from those
// identities by valuation dominance.
//
// Each function and each identity right-hand side is kept as a short list of
// terms coeff·x^a·y^b·f^{p^k} (f a previously defined function). The same list
// drives the symbolic check (expansion into Poly2 plus normal form), the
// sampled check (evaluation at points over an extension field) and the
// dominance argument (one valuation per term).
//
// In odd characteristic w and t come in two variants: `printed` follows the
// displayed definitions and identities literally; `adjusted` flips the signs
// that the telescoping computation requires (correction sum built from
// x^{q^{n-r}+1} - x^{q^n+q^{n-r}} with a plus sign, and t = z^q - x^..·w - x^..·z).
// In characteristic 2 the two coincide.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xnr/bigint.hpp"
#include "xnr/curve.hpp"
#include "xnr/ff.hpp"
#include "xnr/poly2.hpp"

namespace xnr {

enum class Fn { x, y, z0, z, w, t };
enum class Variant { printed, adjusted };
enum class IdentityId { EQ3, ZQN, WQN, TQN };
enum class Mode { symbolic, sampled };

std::string_view to_string(Fn f);
std::string_view to_string(Variant v);
std::string_view to_string(IdentityId id);
std::string_view to_string(Mode m);

struct BezoutPair {
  unsigned alpha = 0;
  unsigned beta = 0;
};

/// Least alpha >= 1 (equivalently least beta >= 0) with (n-r)·alpha - beta·n = 1.
BezoutPair bezout_alpha_beta(unsigned n, unsigned r);

struct ExprTerm {
  std::int64_t coeff = 1;
  BigInt x_exp = 0;
  BigInt y_exp = 0;
  std::optional<Fn> ref;  // multiplies by ref^{ref_pow}
  BigInt ref_pow = 1;     // a power of p
};
using Expr = std::vector<ExprTerm>;

/// Defining expression of z0, z, w or t (x and y are primitive and throw).
Expr definition(const CurveParams& params, Fn f, Variant v = Variant::printed);

/// subject^{q^n} = rhs.
struct IdentityClaim {
  IdentityId id;
  Variant variant;
  Fn subject;
  Expr rhs;
};

IdentityClaim identity_claim(const CurveParams& params, IdentityId id, Variant v = Variant::printed);

/// Identity whose subject is f (y: EQ3, z: ZQN, w: WQN, t: TQN).
IdentityId identity_for(Fn f);

/// True when the adjusted variant differs from the printed one (odd p, and
/// the function or identity involves w or t).
bool has_variants(const CurveParams& params, IdentityId id);

/// Expanded sparse polynomial of a named function (not reduced).
Poly2 build_fn(const CurveParams& params, Fn f, Variant v = Variant::printed);

/// Expanded sparse polynomial of an expression.
Poly2 expand(const CurveParams& params, const Expr& e, Variant v = Variant::printed);

/// Value of a named function at (x, y), computed from the defining
/// expressions with pow; the point may lie in any extension field.
Fe eval_fn(const CurveParams& params, Fn f, Variant v, const Fe& x, const Fe& y);
Fe eval_expr(const CurveParams& params, const Expr& e, Variant v, const Fe& x, const Fe& y);

// ---------------------------------------------------------------------------
// Points over GF(q^{nK}).

/// Solves T_n(y) = c over an extension GF(q^{nK}) as a GF(p)-linear system.
class TraceSolver {
 public:
  TraceSolver(const CurveParams& params, FieldRef ext);

  const FieldRef& field() const { return ext_; }
  /// One solution, or none when c is outside the image.
  std::optional<Fe> solve(const Fe& c) const;
  /// GF(p)-basis of the kernel of y ↦ T_n(y) on the extension.
  const std::vector<Fe>& kernel() const { return kernel_; }
  /// The i-th element of y0 + kernel in base-p counting order.
  Fe coset_member(const Fe& y0, std::uint64_t i) const;

 private:
  unsigned n_;
  FieldRef ext_;
  std::uint32_t p_;
  unsigned dim_;
  std::vector<std::vector<std::uint32_t>> cols_;  // image of each basis vector
  std::vector<Fe> kernel_;
};

/// GF(q^{nK}) with the same p and m as params.
FieldRef extension_field(const CurveParams& params, unsigned K);

/// Point of the curve over GF(q^{nK}) above x0, or none. x0 must live in a
/// field of degree m·n·K with the same characteristic.
std::optional<AffinePoint> extension_point(const CurveParams& params, unsigned K, const Fe& x0);

struct SampleOptions {
  unsigned K = 2;
  unsigned max_K = 3;  // next degree tried when GF(q^{nK}) has too few points
  std::size_t count = 32;
  std::size_t per_x0 = 4;  // coset members taken above each x0
  std::uint64_t seed = 0;
};

/// Curve points over GF(q^{nK}) with x not in GF(q^n), chosen by a seeded
/// stream; K runs from opts.K to opts.max_K until `count` points are found
/// (for odd p and n = 4, GF(q^{2n}) has none). Fields above 2^16 elements get
/// 2^16 random draws per degree. Throws BudgetExceeded ("no extension point
/// found") if every degree comes up short.
std::vector<AffinePoint> sample_extension_points(const CurveParams& params, const SampleOptions& opts);

// ---------------------------------------------------------------------------
// Identity verification.

struct VariantResult {
  Variant variant = Variant::printed;
  bool holds = false;
  std::string witness;  // first failing sample or leading residual term
};

struct IdentityReport {
  IdentityId id = IdentityId::EQ3;
  Mode requested = Mode::symbolic;
  Mode used = Mode::symbolic;
  bool downgraded = false;
  std::size_t samples = 0;
  std::vector<VariantResult> variants;
  std::optional<Variant> verified;  // printed preferred when both hold
  std::string note;

  bool ok() const { return verified.has_value(); }
};

struct VerifyOptions {
  std::size_t term_budget = 5'000'000;
  SampleOptions sampling;
};

IdentityReport verify_identity(const CurveParams& params, IdentityId id, Mode mode,
                               const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Pole orders at P_∞.

enum class PoleStatus { paper_claimed, dominance_verified, failed };
std::string_view to_string(PoleStatus s);

struct PoleEntry {
  Fn name = Fn::x;
  BigInt pole = 0;
  PoleStatus status = PoleStatus::failed;
  std::optional<IdentityId> source;
  Variant variant = Variant::printed;
  std::vector<BigInt> valuations;  // per merged right-hand term, self term dropped
  BigInt min_valuation = 0;
  std::string dominant_term;
  bool unique_min = false;
  std::optional<BigInt> naive_pole_bound;  // from the defining expression
  std::string detail;
};

class ValuationLedger {
 public:
  void set(PoleEntry e) { entries_[e.name] = std::move(e); }
  bool has(Fn f) const { return entries_.count(f) != 0; }
  const PoleEntry& at(Fn f) const { return entries_.at(f); }
  const std::map<Fn, PoleEntry>& entries() const { return entries_; }

 private:
  std::map<Fn, PoleEntry> entries_;
};

/// Dominance argument on the identity for f. z/w/t need the earlier entries
/// (t uses v(w)); x is recorded as paper-claimed.
PoleEntry pole_order_check(const CurveParams& params, Fn f, Variant v, const ValuationLedger& known);

/// x, y, z, w, t in order, using variant v for w and t.
ValuationLedger derive_pole_orders(const CurveParams& params, Variant v);

/// q^{n-1}, q^{n-1}+q^{r-1}, q^{2r-1}+q^{n-r-1}, q^n+q^{n-r}, q^{2r}-q^n+q^r+1.
BigInt expected_pole(const CurveParams& params, Fn f);

}  // namespace xnr
