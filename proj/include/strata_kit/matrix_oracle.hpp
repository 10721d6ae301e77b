#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "strata_kit/errors.hpp"
#include "strata_kit/stratum_calc.hpp"

namespace sk {

inline constexpr long long kOraclePrec = 48;
inline constexpr int kOracleCap = 6;

using Vec = std::vector<TameElement>;

// n x n matrix over the base field F, row major
struct Mat {
  int n = 0;
  FieldPtr base;
  std::vector<TameElement> a;

  TameElement& at(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
  const TameElement& at(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
};

FieldPtr root_field(const FieldPtr& e);

Mat mat_zero(const FieldPtr& base, int n, long long prec);
Mat mat_identity(const FieldPtr& base, int n, long long prec);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat mat_inverse(const Mat& x);
TameElement trace(const Mat& x);
bool mat_equal(const Mat& x, const Mat& y);
Vec mat_to_vec(const Mat& x);
Mat vec_to_mat(const Vec& v, int n);

// coordinates of x in the F-basis zeta^a varpi^b, index b * f + a
Vec field_coords(const TameElement& x, long long prec);
Mat regular_rep(const TameElement& beta, long long prec = kOraclePrec);

// lower triangular echelon form over F[[t]], pivots t^k
struct Lattice {
  int dim = 0;
  FieldPtr base;
  std::vector<Vec> basis;
  std::vector<int> pivot_rows;
  std::vector<long long> pivots;
  int rank() const { return static_cast<int>(basis.size()); }
};

Lattice make_lattice(const FieldPtr& base, int dim, std::vector<Vec> gens);
bool lattice_contains(const Lattice& l, const Vec& v);
bool lattice_subset(const Lattice& a, const Lattice& b);
bool lattice_equal(const Lattice& a, const Lattice& b);
Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);
// [l1 : l2] = q^k
long long lattice_index(const Lattice& l1, const Lattice& l2);
std::string dump(const Lattice& l);

// L_j = p_E^j as column lattices, period e
struct LatticeChain {
  FieldPtr field;
  int e = 1;
  int n = 1;
  long long prec = kOraclePrec;
  std::vector<Lattice> period;  // L_0 .. L_{e-1}
  Mat basis(long long j) const;
};

LatticeChain chain_from_field(const FieldPtr& e, long long prec = kOraclePrec, int cap = kOracleCap);
bool in_order(const Mat& a, const LatticeChain& chain);
long long v_A_direct(const Mat& a, const LatticeChain& chain);

// {a : a L_j in L_k}
Lattice hom_lattice(const LatticeChain& chain, long long j, long long k);
// P^n
Lattice filt_lattice(const LatticeChain& chain, long long n);
// g_{x,r} through the lattice function s -> L_{ceil(e s)}
Lattice depth_lattice(const LatticeChain& chain, const FiltDepth& d);
Lattice intersect_with_centralizer(const Lattice& lat, const Subfield& e_prime, long long prec = kOraclePrec);
// sum of the factor lattices B_level cap g_{x,depth}; normalizer factors are skipped
Lattice presentation_lattice(const LatticeChain& chain, const GroupPresentation& g, const std::vector<Subfield>& levels);

// Tr_{k_F/F_p} of the t^0 digit of trace(c y)
long long eval_psi_c(const Mat& c, const Mat& y);
// y in the window with psi_c(y) != psi_c2(y), by exhaustive basis, shift and scalar search
std::optional<Mat> psi_witness(const Mat& c, const Mat& c2, const Lattice& window);

// reruns fn at doubled precision on PrecisionError
template <class T>
T with_precision_retry(const std::function<T(long long)>& fn, long long prec = kOraclePrec, int attempts = 3) {
  for (int i = 0;; ++i) {
    try {
      return fn(prec);
    } catch (const PrecisionError&) {
      if (i + 1 >= attempts) throw;
      prec *= 2;
    }
  }
}

}  // namespace sk
