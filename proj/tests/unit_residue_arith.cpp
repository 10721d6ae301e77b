#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "strata_kit/errors.hpp"
#include "strata_kit/residue_arith.hpp"

using sk::FqField;

namespace {

// first monic quadratic over F_p without roots, scanning c + p*b upward
std::vector<int> least_irreducible_quadratic(int p) {
  for (int low = 0; low < p * p; ++low) {
    int c = low % p, b = low / p;
    bool root = false;
    for (int x = 0; x < p; ++x)
      if ((x * x + b * x + c) % p == 0) root = true;
    if (!root) return {c, b, 1};
  }
  return {};
}

std::uint32_t brute_order(const FqField& k, std::uint32_t a) {
  std::uint32_t x = a, n = 1;
  while (x != 1) {
    x = k.mul(x, a);
    ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("make_field examples") {
  auto f3 = FqField::make(3, 1);
  CHECK(f3->modulus() == std::vector<int>{0, 1});
  CHECK(f3->generator() == 2);

  auto f4 = FqField::make(2, 2);
  CHECK(brute_order(*f4, f4->generator()) == 3);

  auto f25 = FqField::make(5, 2);
  CHECK(f25->modulus() == least_irreducible_quadratic(5));
  CHECK(FqField::make(3, 2)->modulus() == least_irreducible_quadratic(3));
  CHECK(FqField::make(7, 2)->modulus() == least_irreducible_quadratic(7));
}

TEST_CASE("make_field errors") {
  CHECK_THROWS_AS(FqField::make(4, 1), sk::Error);
  CHECK_THROWS_AS(FqField::make(3, 0), sk::Error);
  CHECK_THROWS_AS(FqField::make(3, 11), sk::Error);
}

TEST_CASE("arith examples") {
  auto f3 = FqField::make(3, 1);
  CHECK(f3->add(2, 2) == 1);
  CHECK(f3->mul(2, 2) == 1);
  auto f9 = FqField::make(3, 2);
  auto g = f9->generator();
  CHECK(f9->mul(g, f9->pow(g, 8)) == g);
  sk::FqElem a{f9, g}, b{f9, 0};
  CHECK_THROWS_AS(sk::arith(a, b, sk::FqOp::Div), sk::Error);
  sk::FqElem c{f3, 1};
  CHECK_THROWS_AS(sk::arith(a, c, sk::FqOp::Add), sk::Error);
}

TEST_CASE("frobenius examples") {
  auto f9 = FqField::make(3, 2);
  for (std::uint32_t a = 0; a < 3; ++a)
    for (int k = 0; k < 5; ++k) CHECK(f9->frobenius(a, k) == a);
  for (std::uint32_t a = 0; a < 9; ++a) CHECK(f9->frobenius(a, 2) == a);
  auto f4 = FqField::make(2, 2);
  auto g = f4->generator();
  CHECK(f4->frobenius(g, 1) == f4->mul(g, g));
}

TEST_CASE("embed examples") {
  auto f3 = FqField::make(3, 1);
  auto f9 = FqField::make(3, 2);
  auto f81 = FqField::make(3, 4);
  CHECK(f3->embed(1, *f9) == 1);
  CHECK(f3->embed(2, *f9) == f9->pow(f9->generator(), 4));
  for (std::uint32_t a = 0; a < 3; ++a) CHECK(f9->embed(f3->embed(a, *f9), *f81) == f3->embed(a, *f81));
  CHECK_THROWS_AS(FqField::make(3, 3)->embed(1, *f81), sk::Error);
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 4}, {3, 2}, {3, 5}, {5, 2}, {7, 3}, {2, 10}}) {
    auto k = FqField::make(p, f);
    std::uniform_int_distribution<std::uint32_t> d(0, k->size() - 1);
    for (int i = 0; i < 10000; ++i) {
      auto a = d(rng), b = d(rng), c = d(rng);
      REQUIRE(k->add(k->add(a, b), c) == k->add(a, k->add(b, c)));
      REQUIRE(k->mul(k->mul(a, b), c) == k->mul(a, k->mul(b, c)));
      REQUIRE(k->mul(a, k->add(b, c)) == k->add(k->mul(a, b), k->mul(a, c)));
      REQUIRE(k->add(a, k->neg(a)) == 0);
      if (a) REQUIRE(k->mul(a, k->inv(a)) == 1);
    }
  }
}

TEST_CASE("frobenius is a homomorphism of order f") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 6}, {3, 4}, {5, 3}}) {
    auto k = FqField::make(p, f);
    for (std::uint32_t a = 0; a < k->size(); a += 7) {
      std::uint32_t b = (a * 31 + 5) % k->size();
      CHECK(k->frobenius(k->add(a, b), 1) == k->add(k->frobenius(a, 1), k->frobenius(b, 1)));
      CHECK(k->frobenius(k->mul(a, b), 1) == k->mul(k->frobenius(a, 1), k->frobenius(b, 1)));
      CHECK(k->frobenius(a, f) == a);
    }
    int order = 0;
    for (int j = 1; j <= f; ++j)
      if (k->frobenius(k->generator(), j) == k->generator()) {
        order = j;
        break;
      }
    CHECK(order == f);
  }
}

TEST_CASE("embed is a ring map compatible with frobenius") {
  for (auto [p, a, b] : std::vector<std::tuple<int, int, int>>{{2, 2, 6}, {2, 3, 6}, {3, 2, 4}, {5, 2, 4}, {3, 1, 6}}) {
    auto s = FqField::make(p, a), t = FqField::make(p, b);
    for (std::uint32_t x = 0; x < s->size(); ++x) {
      std::uint32_t y = (x * 13 + 3) % s->size();
      REQUIRE(s->embed(s->mul(x, y), *t) == t->mul(s->embed(x, *t), s->embed(y, *t)));
      REQUIRE(s->embed(s->add(x, y), *t) == t->add(s->embed(x, *t), s->embed(y, *t)));
      long long pf = 1;
      for (int i = 0; i < a; ++i) pf *= p;
      REQUIRE(t->pow(s->embed(x, *t), pf) == s->embed(s->pow(x, pf), *t));
    }
  }
}

TEST_CASE("generator order by exhaustive exponentiation") {
  for (auto [p, fmax] : std::vector<std::pair<int, int>>{{2, 12}, {3, 8}, {5, 5}, {7, 4}, {11, 3}}) {
    for (int f = 1; f <= fmax; ++f) {
      auto k = FqField::make(p, f);
      CHECK(brute_order(*k, k->generator()) == k->size() - 1);
    }
  }
}
