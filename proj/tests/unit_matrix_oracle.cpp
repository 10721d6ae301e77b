#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "strata_kit/errors.hpp"
#include "strata_kit/matrix_oracle.hpp"

using namespace sk;

namespace {

FieldPtr base3() {
  static FieldPtr f = TameField::base(3);
  return f;
}

FieldPtr ram2() {
  static FieldPtr e = TameField::extend(base3(), 1, 2, 1);
  return e;
}

FieldPtr unr2() {
  static FieldPtr e = TameField::extend(base3(), 2, 1, 1);
  return e;
}

TameElement random_element(const FieldPtr& e, std::mt19937& rng, long long lo, long long hi) {
  std::map<long long, std::uint32_t> d;
  std::uniform_int_distribution<std::uint32_t> dig(0, e->k().size() - 1);
  for (long long v = lo; v <= hi; ++v) d[v] = dig(rng);
  d[lo] = std::max<std::uint32_t>(1, d[lo]);
  return TameElement::from_digits(e, d, 64);
}

}  // namespace

TEST_CASE("regular representation") {
  auto e = ram2();
  Mat m = regular_rep(TameElement::monomial(e, 1, 1, 64));
  CHECK(m.at(0, 0).is_zero());
  CHECK(m.at(1, 1).is_zero());
  CHECK(m.at(0, 1).same_digits(TameElement::monomial(base3(), 1, 1, 64)));
  CHECK(m.at(1, 0).same_digits(TameElement::monomial(base3(), 1, 0, 64)));
  Mat t = regular_rep(TameElement::base_monomial(e, 1, 1, 64));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(t.at(i, j).same_digits(i == j ? TameElement::monomial(base3(), 1, 1, 64) : TameElement(base3(), 64)));

  std::mt19937 rng(7);
  auto mixed = TameField::extend(unr2(), 1, 2, 1);
  for (const FieldPtr& f : {ram2(), unr2(), mixed}) {
    for (int i = 0; i < 10; ++i) {
      auto x = random_element(f, rng, -3, 4);
      auto y = random_element(f, rng, -2, 5);
      CHECK(mat_equal(regular_rep(x * y), regular_rep(x) * regular_rep(y)));
      CHECK(mat_equal(regular_rep(x + y), regular_rep(x) + regular_rep(y)));
    }
  }
}

TEST_CASE("lattice chains and orders") {
  auto f = base3();
  LatticeChain c0 = chain_from_field(f);
  CHECK(c0.e == 1);
  CHECK(c0.period.size() == 1);
  LatticeChain c1 = chain_from_field(ram2());
  CHECK(c1.e == 2);
  LatticeChain c2 = chain_from_field(unr2());
  CHECK(c2.e == 1);
  // the unramified order is maximal: M_2(o) in the zeta basis
  Mat unit = mat_identity(f, 2, 48);
  unit.at(0, 1) = TameElement::monomial(f, 1, 0, 48);
  CHECK(in_order(unit, c2));
  Mat bad = mat_identity(f, 2, 48);
  bad.at(1, 0) = TameElement::monomial(f, 1, -1, 48);
  CHECK_FALSE(in_order(bad, c2));
  auto big = TameField::extend(TameField::extend(base3(), 2, 1, 1), 2, 2, 1);
  CHECK_THROWS_AS(chain_from_field(big, 48, 6), Error);
}

TEST_CASE("direct order valuation") {
  auto e = ram2();
  LatticeChain ch = chain_from_field(e);
  CHECK(v_A_direct(mat_identity(base3(), 2, 48), ch) == 0);
  CHECK(v_A_direct(regular_rep(TameElement::monomial(e, 1, 1, 64)), ch) == 1);
  auto beta = TameElement::base_monomial(e, 1, -2, 64) + TameElement::monomial(e, 1, -1, 64);
  CHECK(v_A_direct(regular_rep(beta), ch) == -4);
  std::mt19937 rng(11);
  auto mixed = TameField::extend(unr2(), 1, 2, 1);
  for (const FieldPtr& f : {ram2(), unr2(), mixed}) {
    LatticeChain c = chain_from_field(f);
    for (int i = 0; i < 8; ++i) {
      auto x = random_element(f, rng, -5 + i, 3 + i);
      CHECK(v_A_direct(regular_rep(x), c) == x.val());
    }
  }
}

TEST_CASE("lattice index") {
  auto f = base3();
  Vec e0{TameElement::monomial(f, 1, 0, 48), TameElement(f, 48)};
  Vec e1{TameElement(f, 48), TameElement::monomial(f, 1, 0, 48)};
  Lattice o2 = make_lattice(f, 2, {e0, e1});
  Lattice to2 = make_lattice(f, 2, {{e0[0].shift(1), e0[1]}, {e1[0], e1[1].shift(1)}});
  CHECK(lattice_index(o2, o2) == 0);
  CHECK(lattice_index(o2, to2) == 2);
  CHECK_THROWS_AS(lattice_index(to2, o2), Error);
  LatticeChain ch = chain_from_field(ram2());
  CHECK(lattice_index(filt_lattice(ch, 0), filt_lattice(ch, 1)) == 2);
  CHECK(lattice_index(filt_lattice(ch, 0), filt_lattice(ch, 2)) == 4);
}

TEST_CASE("centralizer intersection") {
  auto e = ram2();
  LatticeChain ch = chain_from_field(e);
  Subfield full = subfield_generated({TameElement::monomial(e, 1, 1, 64)}, e);
  Lattice b0 = intersect_with_centralizer(filt_lattice(ch, 0), full);
  CHECK(b0.rank() == 2);
  Lattice oe = make_lattice(base3(), 4, {mat_to_vec(mat_identity(base3(), 2, 48)),
                                         mat_to_vec(regular_rep(TameElement::monomial(e, 1, 1, 64)))});
  CHECK(lattice_equal(b0, oe));
  Lattice all = intersect_with_centralizer(filt_lattice(ch, 0), base_subfield(e));
  CHECK(lattice_equal(all, filt_lattice(ch, 0)));
}

TEST_CASE("ideal property and filtration windows") {
  LatticeChain ch = chain_from_field(ram2());
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m) {
      Lattice pn = filt_lattice(ch, n), pm = filt_lattice(ch, m), pnm = filt_lattice(ch, n + m);
      for (const auto& a : pn.basis)
        for (const auto& b : pm.basis) CHECK(lattice_contains(pnm, mat_to_vec(vec_to_mat(a, 2) * vec_to_mat(b, 2))));
    }
  auto cubic = TameField::extend(TameField::base(7), 1, 3, 1);
  for (const FieldPtr& f : {ram2(), cubic}) {
    LatticeChain c = chain_from_field(f);
    for (long long n = 0; n <= 12; ++n)
      for (IndexMode mode : {IndexMode::Plain, IndexMode::Half, IndexMode::HalfPlus}) {
        FiltDepth d = depth_of_index(n, c.e, mode);
        CHECK(lattice_equal(depth_lattice(c, d), filt_lattice(c, mode_exponent(n, mode))));
      }
  }
}

TEST_CASE("psi evaluation") {
  auto e = ram2();
  auto f = base3();
  Mat c = regular_rep(TameElement::monomial(e, 1, -3, 64));
  CHECK(eval_psi_c(c, mat_zero(f, 2, 48)) == 0);
  // trace(c y) in p_F
  Mat y = regular_rep(TameElement::monomial(e, 1, 5, 64));
  CHECK(eval_psi_c(c, y) == 0);
  LatticeChain ch = chain_from_field(e);
  // c - c2 in P^{-2}: equal on U^3
  Mat c2 = c + regular_rep(TameElement::monomial(e, 2, -2, 64));
  Lattice w3 = filt_lattice(ch, 3);
  CHECK_FALSE(psi_witness(c, c2, w3).has_value());
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> dig(0, 2);
  for (int s = 0; s < 20; ++s) {
    Mat y3 = mat_zero(f, 2, 48);
    for (const auto& b : w3.basis) {
      Mat bm = vec_to_mat(b, 2);
      TameElement k = TameElement::monomial(f, static_cast<std::uint32_t>(dig(rng)), dig(rng), 48);
      for (auto& x : bm.a) x = x * k;
      y3 = y3 + bm;
    }
    CHECK(eval_psi_c(c, y3) == eval_psi_c(c2, y3));
  }
  // but not on U^2
  auto w = psi_witness(c, c2, filt_lattice(ch, 2));
  REQUIRE(w.has_value());
  CHECK(eval_psi_c(c, *w) != eval_psi_c(c2, *w));
}

TEST_CASE("presentation lattices on the running example") {
  auto e = ram2();
  auto beta = TameElement::base_monomial(e, 1, -2, 64) + TameElement::monomial(e, 1, -1, 64);
  Subfield ef = subfield_generated({beta}, e);
  StratumSkeleton st = make_stratum(beta, order_for(ef), 0);
  SecherreGroups sg = presentation_secherre(st);
  std::vector<Subfield> levels{ef, base_subfield(e)};
  LatticeChain ch = chain_from_field(e);
  Lattice h1 = presentation_lattice(ch, sg.H1, levels);
  Lattice j1 = presentation_lattice(ch, sg.J1, levels);
  Lattice j = presentation_lattice(ch, sg.J, levels);
  CHECK(lattice_subset(h1, j1));
  CHECK(lattice_subset(j1, j));
  CHECK(lattice_index(j1, h1) == index_card(sg.J1, sg.H1));
  CHECK(lattice_index(j, h1) == index_card(sg.J, sg.H1));
}
