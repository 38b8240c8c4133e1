#include "doctest.h"

#include <set>

#include "xnr/ff.hpp"

using namespace xnr;

namespace {

std::size_t count_if_field(const FieldCtx& f, auto pred) {
  std::size_t c = 0;
  for (std::uint64_t i = 0; i < f.size(); ++i) c += pred(f.element(i)) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("lex-smallest moduli") {
  CHECK(build_field(2, 1, 3)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3 + x + 1
  CHECK(build_field(3, 1, 3)->modulus() == std::vector<std::uint32_t>{1, 2, 0, 1});  // x^3 + 2x + 1
  CHECK(build_field(2, 1, 1)->modulus() == std::vector<std::uint32_t>{0, 1});        // x
}

TEST_CASE("moduli are irreducible and fields have the right size") {
  for (auto [p, m, n] : {std::tuple{2u, 1u, 3u}, {2u, 2u, 3u}, {3u, 1u, 4u}, {5u, 1u, 3u}, {2u, 1u, 8u}}) {
    const FieldRef f = build_field(p, m, n);
    CAPTURE(p);
    CAPTURE(m);
    CAPTURE(n);
    CHECK(upoly::is_irreducible(f->modulus(), p));
    CHECK(BigInt(f->size()) == ipow(BigInt(p), m * n));
    CHECK(f->q() == ipow(BigInt(p), m));
  }
}

TEST_CASE("invalid field parameters") {
  CHECK_THROWS(build_field(4, 1, 3));
  CHECK_THROWS(build_field(2, 0, 3));
  CHECK_THROWS(build_field(2, 1, 40));  // beyond the default size budget
}

TEST_CASE("index round trip and distinct elements") {
  const FieldRef f = build_field(3, 1, 3);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < f->size(); ++i) {
    CHECK(f->element(i).index() == i);
    seen.insert(f->element(i).index());
  }
  CHECK(seen.size() == 27);
}

TEST_CASE("GF(8) field axioms") {
  const FieldRef f = build_field(2, 1, 3);
  for (std::uint64_t i = 0; i < f->size(); ++i) {
    const Fe a = f->element(i);
    CHECK(pow(a, std::uint64_t{8}) == a);
    CHECK(frobenius(a, 1) == a * a);
    CHECK(frobenius(a, 0) == a);
    CHECK(frobenius(a, 3) == a);
    if (!a.is_zero()) CHECK((a * inv(a)).is_one());
  }
  CHECK_THROWS(inv(f->zero()));
}

TEST_CASE("arith matches operators and distributes") {
  const FieldRef f = build_field(5, 1, 2);
  for (std::uint64_t i = 0; i < f->size(); i += 3) {
    for (std::uint64_t j = 1; j < f->size(); j += 5) {
      const Fe a = f->element(i), b = f->element(j), c = f->element((i + j) % f->size());
      CHECK(arith(a, b, ArithOp::add) == a + b);
      CHECK(arith(a, b, ArithOp::sub) == a - b);
      CHECK(arith(a, b, ArithOp::mul) == a * b);
      CHECK(arith(a, b, ArithOp::div) * b == a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + neg(a) == f->zero());
    }
  }
}

TEST_CASE("pow with big exponents reduces mod q^n - 1") {
  const FieldRef f = build_field(3, 1, 3);
  const Fe g = mult_generator(*f);
  const BigInt big = ipow(BigInt(3), 60) + 5;
  CHECK(pow(g, big) == pow(g, static_cast<std::uint64_t>(big % 26)));
  CHECK(pow(f->zero(), BigInt(0)).is_one());
  CHECK(pow(f->zero(), BigInt(7)).is_zero());
}

TEST_CASE("elements of different fields do not mix") {
  const FieldRef a = build_field(2, 1, 3);
  const FieldRef b = build_field(2, 1, 4);
  CHECK_THROWS(a->one() + b->one());
}

TEST_CASE("multiplicative generators") {
  const FieldRef f8 = build_field(2, 1, 3);
  const Fe g8 = mult_generator(*f8);
  CHECK(pow(g8, std::uint64_t{7}).is_one());
  for (std::uint64_t k = 1; k < 7; ++k) CHECK_FALSE(pow(g8, k).is_one());

  CHECK(mult_order(mult_generator(*build_field(2, 1, 4))) == 15);

  const Fe g27 = mult_generator(*build_field(3, 1, 3));
  CHECK_FALSE(pow(g27, std::uint64_t{13}).is_one());
  CHECK_FALSE(pow(g27, std::uint64_t{2}).is_one());
  CHECK(pow(g27, std::uint64_t{26}).is_one());
}

TEST_CASE("trace to GF(q)") {
  const FieldRef f = build_field(2, 1, 3);
  CHECK(trace_n(f->zero()).is_zero());
  CHECK(trace_n(f->one()).is_one());
  CHECK(count_if_field(*f, [](const Fe& a) { return trace_n(a).is_zero(); }) == 4);
  CHECK(count_if_field(*f, [](const Fe& a) { return in_subfield(trace_n(a), 1); }) == 8);

  // GF(4^3): the trace is GF(4)-valued and each value has 16 preimages.
  const FieldRef g = build_field(2, 2, 3);
  std::map<std::uint64_t, int> hist;
  for (std::uint64_t i = 0; i < g->size(); ++i) ++hist[trace_n(g->element(i)).index()];
  CHECK(hist.size() == 4);
  for (auto [v, c] : hist) CHECK(c == 16);
  for (std::uint64_t i = 0; i < g->size(); i += 7) {
    const Fe a = g->element(i);
    CHECK(trace_n(a) == additive_trace(a, 3));
  }
}

TEST_CASE("subfields") {
  CHECK(in_subfield(build_field(2, 1, 3)->one(), 1));
  CHECK(count_if_field(*build_field(2, 1, 3), [](const Fe& a) { return in_subfield(a, 1); }) == 2);
  CHECK(count_if_field(*build_field(2, 1, 4), [](const Fe& a) { return in_subfield(a, 2); }) == 4);
  CHECK(count_if_field(*build_field(3, 2, 2), [](const Fe& a) { return in_subfield(a, 1); }) == 9);
}

TEST_CASE("prime helpers") {
  CHECK(is_prime(2));
  CHECK(is_prime(101));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK(prime_factors(26) == std::vector<std::uint64_t>{2, 13});
  CHECK(prime_factors(255) == std::vector<std::uint64_t>{3, 5, 17});
}
