#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "strata_kit/errors.hpp"
#include "strata_kit/minimal_factor.hpp"

using namespace sk;

namespace {

struct Quad {
  FieldPtr f = TameField::base(3);
  FieldPtr e = TameField::extend(f, 1, 2, 1);
  TameElement pi(long long v, std::uint32_t a = 1) const { return TameElement::monomial(e, a, v, 64); }
  TameElement t(long long v, std::uint32_t a = 1) const { return TameElement::base_monomial(e, a, v, 64); }
};

}  // namespace

TEST_CASE("is_minimal examples") {
  Quad x;
  CHECK(is_minimal(TameElement::monomial(x.f, 1, -1, 64)).minimal);
  auto r1 = is_minimal(x.pi(-3));
  CHECK(r1.crit1_classical);
  CHECK(r1.crit2_sr_generates);
  CHECK(r1.crit3_embedding_ord);
  auto r2 = is_minimal(x.t(-1) + x.pi(-1));
  CHECK_FALSE(r2.crit1_classical);
  CHECK_FALSE(r2.crit2_sr_generates);
  CHECK_FALSE(r2.crit3_embedding_ord);
  CHECK(r2.witness_first >= 0);
  // even valuation in a ramified quadratic lies in F up to units
  CHECK(is_minimal(x.pi(-2)).minimal);
}

TEST_CASE("minimality relative to an intermediate field") {
  auto b5 = TameField::base(5);
  auto u = TameField::extend(b5, 2, 1, 1);
  auto e = TameField::extend(u, 1, 3, 1);
  std::uint32_t z = e->k().generator();
  Subfield k = subfield_generated({TameElement::monomial(e, z, 0, 40)}, e);
  CHECK(k.degree == 2);
  auto c1 = TameElement::monomial(e, z, -2, 40);
  CHECK(is_minimal(c1, k).minimal);
  auto zt = TameElement::base_monomial(e, 1, -1, 40).scale(z);
  CHECK(is_minimal(zt).minimal);
  CHECK_FALSE(is_minimal(zt + TameElement::monomial(e, 1, -1, 40)).minimal);
  CHECK_FALSE(is_minimal(zt + TameElement::monomial(e, 1, -1, 40), k).minimal);
}

TEST_CASE("howe_factorize running example") {
  Quad x;
  auto beta = x.t(-2) + x.pi(-1);
  auto fac = howe_factorize(beta);
  REQUIRE(fac.s == 1);
  CHECK(fac.chunks[0].c.same_digits(x.pi(-1)));
  CHECK(fac.chunks[1].c.same_digits(x.t(-2)));
  CHECK(fac.chunks[0].field_degree == 2);
  CHECK(fac.chunks[1].field_degree == 1);
  CHECK(fac.chunks[0].ord == Rational(-1, 2));
  CHECK(fac.chunks[1].ord == Rational(-2));
  CHECK(is_minimal(fac.chunks[0].c).minimal);
  CHECK(check_factorization(fac).valid);
}

TEST_CASE("howe_factorize trivial cases") {
  Quad x;
  auto m = howe_factorize(x.pi(-3) + x.pi(-2));
  CHECK(m.s == 0);
  CHECK_FALSE(m.degenerate);
  auto d = howe_factorize(x.t(-1) + x.t(0, 2));
  CHECK(d.s == 0);
  CHECK(d.degenerate);
  CHECK_THROWS_AS(howe_factorize(TameElement(x.e, 10)), Error);
}

TEST_CASE("check_factorization mutations") {
  Quad x;
  auto fac = howe_factorize(x.t(-2) + x.pi(-1) + x.pi(1));
  REQUIRE(fac.s == 1);
  // merged chunks
  Factorization merged = fac;
  merged.chunks = {Chunk{fac.beta, 2, fac.beta.ord()}};
  merged.s = 0;
  CHECK(check_factorization(merged).clause == "minimality");
  // digit swapped into the wrong field
  Factorization moved = fac;
  moved.chunks[0].c = x.pi(1);
  moved.chunks[0].ord = moved.chunks[0].c.ord();
  moved.chunks[1].c = x.t(-2) + x.pi(-1);
  moved.chunks[1].ord = moved.chunks[1].c.ord();
  CHECK(check_factorization(moved).clause == "field_growth");
  Factorization wrong_ord = fac;
  wrong_ord.chunks[0].ord = Rational(-3, 2);
  CHECK(check_factorization(wrong_ord).clause == "declared_ord");
  Factorization wrong_sum = fac;
  wrong_sum.chunks[0].c = x.pi(-1);
  wrong_sum.chunks[0].ord = Rational(-1, 2);
  CHECK(check_factorization(wrong_sum).clause == "sum");
  Factorization swapped = fac;
  std::swap(swapped.chunks[0], swapped.chunks[1]);
  CHECK(check_factorization(swapped).clause == "ord_decrease");
}

TEST_CASE("is_generic examples") {
  Quad x;
  Subfield e = subfield_generated({x.pi(1)}, x.e);
  Subfield f = base_subfield(x.e);
  auto g0 = is_generic(x.pi(-1), e, e);
  CHECK(g0.verdict);
  CHECK(g0.table.empty());
  auto g1 = is_generic(x.pi(-1), e, f);
  CHECK(g1.verdict);
  CHECK(g1.minimal_verdict);
  CHECK(g1.depth == Rational(1, 2));
  REQUIRE(g1.table.size() == 1);
  CHECK(*g1.table[0].ord == Rational(-1, 2));
  auto g2 = is_generic(x.t(-1), e, f);
  CHECK_FALSE(g2.verdict);
  CHECK_FALSE(g2.minimal_verdict);
  CHECK_FALSE(g2.table[0].ord.has_value());
  CHECK_THROWS_AS(is_generic(x.pi(-1), f, f), Error);
}
