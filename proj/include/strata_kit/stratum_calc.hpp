#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata_kit/minimal_factor.hpp"

namespace sk {

// A = M_m(D) with D of index d, N = m d; the order is E-pure.
struct OrderSkeleton {
  int m = 1;
  int d = 1;
  int e_A = 1;
  Subfield pure_over;
  bool b_maximal = true;
  int N() const { return m * d; }
};

// e_A = e(E/F), B maximal, N = [E:F] * mult
OrderSkeleton order_for(const Subfield& e, int mult = 1);

enum class StratumKind { Simple, Pure, Null };
const char* kind_name(StratumKind k);

struct StratumSkeleton {
  OrderSkeleton order;
  long long n = 0;
  long long r = 0;
  TameElement beta;
  Factorization fac;
  StratumKind kind = StratumKind::Null;
};

// nullopt stands for -infinity
using ExtInt = std::optional<long long>;

long long v_order(const TameElement& x, const OrderSkeleton& o);
ExtInt k_F(const TameElement& beta);
ExtInt k0(const TameElement& beta, const OrderSkeleton& o);
ExtInt k0_scaled(ExtInt kf, int e_A, int e_field);

StratumKind classify(const OrderSkeleton& o, long long n, long long r, const TameElement& beta);
StratumSkeleton make_stratum(const TameElement& beta, const OrderSkeleton& o, long long r = 0);

struct SequenceTerm {
  long long r = 0;
  TameElement beta;
  StratumKind kind = StratumKind::Null;
};

std::vector<SequenceTerm> defining_sequence(const StratumSkeleton& st);
// throws Error naming the failed clause
void validate_defining_sequence(const StratumSkeleton& st, const std::vector<SequenceTerm>& seq);

// r, r+ or the normalizer [x]
struct FiltDepth {
  Rational value{0};
  bool plus = false;
  bool normalizer = false;

  static FiltDepth at(Rational v) { return {v, false, false}; }
  static FiltDepth after(Rational v) { return {v, true, false}; }
  static FiltDepth bracket() { return {Rational(0), false, true}; }

  friend bool operator==(const FiltDepth& a, const FiltDepth& b) {
    return a.normalizer == b.normalizer && (a.normalizer || (a.value == b.value && a.plus == b.plus));
  }
  friend bool operator<(const FiltDepth& a, const FiltDepth& b) {
    if (a.normalizer != b.normalizer) return a.normalizer;
    if (a.normalizer) return false;
    if (a.value != b.value) return a.value < b.value;
    return !a.plus && b.plus;
  }
  friend bool operator<=(const FiltDepth& a, const FiltDepth& b) { return a < b || a == b; }
};

// Modes of the index/depth dictionary.
enum class IndexMode {
  Plain,      // P^n          <-> n/e_A
  Plus,       // P^{n+1}      <-> (n/e_A)+
  Half,       // P^{(n+1)/2}  <-> n/(2 e_A)
  HalfPlus    // P^{n/2 + 1}  <-> (n/(2 e_A))+
};

FiltDepth depth_of_index(long long n, int e_A, IndexMode mode);
long long index_of_depth(const FiltDepth& d, int e_A, IndexMode mode);
// the exponent of P^k with g_{x,r} = P^k
long long lattice_exponent(const FiltDepth& d, int e_A);
// the power of P used by a mode at parameter n
long long mode_exponent(long long n, IndexMode mode);

enum class ExponentRule { U0, KFrak, HalfPlusOne, HalfCeil, Power, Depth };

struct Factor {
  int level = 0;
  ExponentRule rule = ExponentRule::Power;
  long long arg = 0;
  FiltDepth depth;  // for Depth, and filled in for all rules after normalization
};

struct GroupPresentation {
  std::vector<Factor> factors;
  std::vector<std::pair<int, FiltDepth>> normal_form;
  std::vector<int> level_degrees;  // [E_level : F]
  int e_A = 1;
  int N = 1;
};

void normalize(GroupPresentation* g);

struct SecherreGroups {
  GroupPresentation H1;
  GroupPresentation J;
  GroupPresentation Jhat;
  GroupPresentation J1;
};

SecherreGroups presentation_secherre(const StratumSkeleton& st);

// Yu datum skeleton: fields E_0 > ... > E_d = F, depths r_0 < ... < r_s.
struct YuSkeleton {
  std::vector<Subfield> tower;
  OrderSkeleton vertex;
  std::vector<Rational> depths;
  std::vector<TameElement> realizers;
  int s = -1;          // -1 encodes s = -infinity
  int d = 0;
  bool d_is_s_plus_one = false;
  Rational depth_d{0};  // r_d, kept separately from r_s
};

struct YuGroups {
  GroupPresentation Kplus;
  GroupPresentation K0circ;
  GroupPresentation K;
};

YuGroups presentation_yu(const YuSkeleton& yu);

struct PresentationDiff {
  bool equal = true;
  int level = -1;
  std::string detail;
};

PresentationDiff compare_presentations(const GroupPresentation& a, const GroupPresentation& b);

// [num : den] = q^k
long long index_card(const GroupPresentation& num, const GroupPresentation& den);
// sum over i of the exponents of (J^i : J^i_+)
long long yu_index_product(const YuSkeleton& yu, int N);

std::string to_string(const Rational& r);
std::string to_string(const FiltDepth& d);

}  // namespace sk
