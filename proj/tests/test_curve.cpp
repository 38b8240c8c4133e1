#include "doctest.h"

#include <algorithm>
#include <set>

#include "xnr/curve.hpp"
#include "xnr/errors.hpp"

using namespace xnr;

TEST_CASE("parameter validation") {
  const FieldRef f3 = build_field(2, 1, 3);
  CHECK_NOTHROW(validate_params(f3, 3, 2));
  CHECK_THROWS_AS(validate_params(f3, 3, 1), InvalidArgument);  // r < ⌈n/2⌉
  const FieldRef f4 = build_field(2, 1, 4);
  CHECK_THROWS_AS(validate_params(f4, 4, 2), InvalidArgument);  // gcd(4, 2) = 2
  CHECK_NOTHROW(validate_params(f4, 4, 3));
  CHECK_THROWS_AS(validate_params(f4, 3, 2), InvalidArgument);  // field is GF(q^4), not GF(q^3)
  CHECK_THROWS_AS(make_curve(2, 1, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(make_curve(2, 1, 3, 3), InvalidArgument);
  try {
    make_curve(4, 1, 3, 2);
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("p must be prime") != std::string::npos);
  }
}

TEST_CASE("canonical and admissible r") {
  CHECK(canonical_r(2) == 1);
  CHECK(canonical_r(3) == 2);
  CHECK(canonical_r(4) == 3);
  CHECK(canonical_r(5) == 3);
  CHECK(canonical_r(6) == 5);
  CHECK(canonical_r(8) == 5);
  CHECK(canonical_r(10) == 7);
  CHECK(admissible_r(2) == std::vector<unsigned>{1});
  CHECK(admissible_r(5) == std::vector<unsigned>{3, 4});
  CHECK(admissible_r(9) == std::vector<unsigned>{5, 7, 8});
  for (unsigned n = 2; n <= 20; ++n) {
    const auto rs = admissible_r(n);
    CHECK(std::find(rs.begin(), rs.end(), canonical_r(n)) != rs.end());
  }
}

TEST_CASE("f_r exponents") {
  auto exps = [](const CurveParams& c) {
    std::set<std::pair<BigInt, std::uint32_t>> s;
    for (const auto& t : fr_exponents(c)) s.insert({t.exponent, t.coeff});
    return s;
  };
  using S = std::set<std::pair<BigInt, std::uint32_t>>;
  CHECK(exps(make_curve(2, 1, 3, 2)) == S{{3, 1}, {5, 1}, {6, 1}});
  CHECK(exps(make_curve(3, 1, 3, 2)) == S{{4, 1}, {10, 1}, {12, 1}});
  const CurveParams deg = make_curve(2, 1, 2, 1);
  CHECK(fr_exponents(deg).empty());
  CHECK(fr_vanishes(deg));
  CHECK_FALSE(fr_vanishes(make_curve(3, 1, 2, 1)));
}

TEST_CASE("f_r values") {
  const CurveParams c2 = make_curve(2, 1, 3, 2);
  CHECK(eval_fr(c2, c2.field->zero()).is_zero());
  CHECK(eval_fr(c2, c2.field->one()).is_one());
  const CurveParams c3 = make_curve(3, 1, 3, 2);
  CHECK(eval_fr(c3, c3.field->one()).is_zero());

  for (const auto& c : {c2, c3, make_curve(2, 2, 3, 2), make_curve(2, 1, 5, 4), make_curve(5, 1, 2, 1)}) {
    const FieldCtx& f = *c.field;
    const BigInt e = 1 + c.qpow(c.r);
    for (std::uint64_t i = 0; i < f.size(); ++i) {
      const Fe a = f.element(i);
      const Fe v = eval_fr(c, a);
      CHECK(in_subfield(v, 1));
      CHECK(v == trace_n(pow(a, e)));
    }
  }
}

TEST_CASE("trace fibres") {
  const CurveParams c = make_curve(2, 1, 3, 2);
  const FieldCtx& f = *c.field;
  const auto zero_fibre = fiber(c, f.zero());
  REQUIRE(zero_fibre.size() == 4);
  for (const Fe& y : zero_fibre) CHECK((y * y * y * y + y * y + y).is_zero());
  CHECK(fiber(c, f.one()).size() == 4);

  const CurveParams c3 = make_curve(3, 1, 3, 2);
  for (std::uint64_t v = 0; v < 3; ++v) CHECK(fiber(c3, c3.field->from_int(static_cast<std::int64_t>(v))).size() == 9);
}

TEST_CASE("curve statistics") {
  auto check = [](CurveParams c, int d, int g, int n) {
    const CurveStats st = stats(c);
    CHECK(st.degree == d);
    CHECK(st.genus == g);
    CHECK(st.n_points == n);
  };
  check(make_curve(2, 1, 3, 2), 6, 6, 33);
  check(make_curve(3, 1, 3, 2), 12, 36, 244);
  check(make_curve(2, 1, 4, 3), 12, 28, 129);
  check(make_curve(2, 1, 2, 1), 3, 1, 9);
}

TEST_CASE("point enumeration") {
  // Affine counts from the independent oracle (tests/oracles/derive.py).
  struct Case {
    std::uint32_t p;
    unsigned m, n, r;
    std::uint64_t affine;
  };
  for (const Case& k : {Case{2, 1, 3, 2, 32}, Case{2, 1, 4, 3, 128}, Case{3, 1, 3, 2, 243}, Case{2, 2, 3, 2, 1024},
                        Case{2, 1, 5, 3, 512}, Case{2, 1, 2, 1, 8}}) {
    const CurveParams c = make_curve(k.p, k.m, k.n, k.r);
    CAPTURE(k.p);
    CAPTURE(k.n);
    const auto pts = enumerate_points(c);
    CHECK(pts.size() == k.affine);
    CHECK(count_points(c) == k.affine);
    CHECK(model2_point_count(c) == k.affine);
    CHECK(std::all_of(pts.begin(), pts.end(), [&](const AffinePoint& pt) { return on_curve(c, pt); }));
    const PointSet set(c);
    CHECK(set.count() == k.affine);
    for (std::uint64_t i = 0; i < set.count(); i += 7) CHECK(set.index_of(set.point(i)) == i);
  }
}

TEST_CASE("points come out ordered by x then y") {
  const CurveParams c = make_curve(2, 1, 3, 2);
  const auto pts = enumerate_points(c);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto a = std::pair{pts[i - 1].x.index(), pts[i - 1].y.index()};
    const auto b = std::pair{pts[i].x.index(), pts[i].y.index()};
    CHECK(a < b);
  }
}

TEST_CASE("second model") {
  const CurveParams c = make_curve(2, 1, 3, 2);
  for (std::uint64_t i = 0; i < c.field->size(); ++i) CHECK(eval_model2_rhs(c, c.field->element(i)).is_zero());
}

TEST_CASE("enumeration budget") {
  const CurveParams c = make_curve(2, 1, 5, 3);
  EnumOptions small;
  small.max_points = 100;
  CHECK_THROWS_AS(check_point_budget(c, small), BudgetExceeded);
  CHECK_THROWS_AS(count_points(c, small), BudgetExceeded);
  small.override_budget = true;
  CHECK(count_points(c, small) == 512);
}
