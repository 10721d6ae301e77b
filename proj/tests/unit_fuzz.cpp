#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "strata_kit/fuzz.hpp"

using namespace sk;

TEST_CASE("seed 0 golden instance") {
  auto c = fuzz_corpus(0, 1);
  REQUIRE(c.size() == 1);
  const FuzzInstance& i = c[0];
  CHECK(i.spec.q == 3);
  REQUIRE(i.spec.steps.size() == 1);
  CHECK(i.spec.steps[0].f == 1);
  CHECK(i.spec.steps[0].e == 4);
  CHECK(i.spec.steps[0].twist == 1);
  // 2 t^{-1} + varpi^{-1}
  std::map<long long, std::uint32_t> want{{-4, 2}, {-1, 1}};
  CHECK(i.beta.digits() == want);
  CHECK(i.order.e_A == 4);
  CHECK(i.order.b_maximal);
}

TEST_CASE("corpus is reproducible and prefix stable") {
  auto a = fuzz_corpus(42, 30);
  auto b = fuzz_corpus(42, 60);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].spec.q == b[k].spec.q);
    CHECK(a[k].beta.same_digits(b[k].beta));
  }
  auto other = fuzz_corpus(43, 30);
  int same = 0;
  for (std::size_t k = 0; k < a.size(); ++k) same += a[k].beta.digits() == other[k].beta.digits();
  CHECK(same < 30);
}

TEST_CASE("fuzzed towers respect the caps") {
  FuzzCaps caps;
  caps.max_degree = 4;
  for (const auto& s : fuzz_towers(5, caps)) {
    Tower t = build_tower(s);
    CHECK(t.top()->degree() <= 4);
    CHECK(t.top()->k().size() <= 4096u);
  }
}

TEST_CASE("rng bounds") {
  Rng r(1);
  for (int k = 0; k < 1000; ++k) {
    auto x = r.range(-3, 3);
    CHECK(x >= -3);
    CHECK(x <= 3);
  }
  CHECK(r.below(1) == 0);
}

TEST_CASE("mutations are rejected with their clause") {
  std::set<std::string> seen;
  for (const auto& inst : fuzz_corpus(0, 200)) {
    Factorization fac = howe_factorize(inst.beta);
    REQUIRE(check_factorization(fac).valid);
    for (const auto& m : mutate_factorization(fac)) {
      FactorizationCheck c = check_factorization(m.fac);
      CHECK_FALSE(c.valid);
      CHECK_MESSAGE(c.clause == m.expected_clause, m.name);
      seen.insert(m.name);
    }
  }
  CHECK(static_cast<int>(seen.size()) == kMutationClasses);
}
