#include "strata_kit/stratum_calc.hpp"

#include <algorithm>
#include <limits>

#include "strata_kit/errors.hpp"

namespace sk {

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

long long rfloor(const Rational& r) { return floor_div(r.numerator(), r.denominator()); }
long long rceil(const Rational& r) { return -floor_div(-r.numerator(), r.denominator()); }

bool in_base(const TameElement& x) { return contains(base_subfield(x.field()), x); }

}  // namespace

std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const FiltDepth& d) {
  if (d.normalizer) return "[x]";
  return to_string(d.value) + (d.plus ? "+" : "");
}

const char* kind_name(StratumKind k) {
  switch (k) {
    case StratumKind::Simple: return "simple";
    case StratumKind::Pure: return "pure";
    case StratumKind::Null: return "null";
  }
  return "null";
}

OrderSkeleton order_for(const Subfield& e, int mult) {
  OrderSkeleton o;
  o.m = e.degree * mult;
  o.d = 1;
  o.e_A = e.e;
  o.pure_over = e;
  o.b_maximal = true;
  return o;
}

long long v_order(const TameElement& x, const OrderSkeleton& o) {
  if (x.is_zero()) throw Error("zero_element", "stratum_calc.v_order");
  if (o.pure_over.ambient && x.field() == o.pure_over.ambient && !contains(o.pure_over, x))
    throw Error("not_in_pure_field", "stratum_calc.v_order");
  Rational v = x.ord() * static_cast<long long>(o.e_A);
  if (v.denominator() != 1) throw Error("non_integral_v_order", "stratum_calc.v_order");
  return v.numerator();
}

ExtInt k_F(const TameElement& beta) {
  if (beta.is_zero() || in_base(beta)) return std::nullopt;
  Factorization fac = howe_factorize(beta);
  int e = subfield_generated({beta}, beta.field()).e;
  Rational v = fac.chunks.front().c.ord() * static_cast<long long>(e);
  if (v.denominator() != 1) throw Error("non_integral_k_F", "stratum_calc.k_F");
  return v.numerator();
}

ExtInt k0_scaled(ExtInt kf, int e_A, int e_field) {
  if (!kf) return std::nullopt;
  if ((*kf * e_A) % e_field != 0) throw Error("non_integral_k0", "stratum_calc.k0");
  return *kf * e_A / e_field;
}

ExtInt k0(const TameElement& beta, const OrderSkeleton& o) {
  ExtInt kf = k_F(beta);
  if (!kf) return std::nullopt;
  int e = subfield_generated({beta}, beta.field()).e;
  return k0_scaled(kf, o.e_A, e);
}

StratumKind classify(const OrderSkeleton& o, long long n, long long r, const TameElement& beta) {
  if (n == 0 && r == 0 && !beta.is_zero() && beta.val() >= 0 && in_base(beta)) return StratumKind::Simple;
  if (beta.is_zero() || !(n > r) || v_order(beta, o) != -n) return StratumKind::Null;
  ExtInt k = k0(beta, o);
  if (!k || r < -*k) return StratumKind::Simple;
  return StratumKind::Pure;
}

StratumSkeleton make_stratum(const TameElement& beta, const OrderSkeleton& o, long long r) {
  StratumSkeleton st;
  st.order = o;
  st.beta = beta;
  st.r = r;
  st.fac = howe_factorize(beta);
  long long v = v_order(beta, o);
  st.n = v < 0 ? -v : 0;
  st.kind = classify(o, st.n, r, beta);
  return st;
}

std::vector<SequenceTerm> defining_sequence(const StratumSkeleton& st) {
  if (st.kind != StratumKind::Simple) throw Error("stratum_not_simple", "stratum_calc.defining_sequence");
  std::vector<SequenceTerm> seq;
  long long r = st.r;
  for (int i = 0; i <= st.fac.s; ++i) {
    SequenceTerm t;
    t.beta = tail_sum(st.fac, i);
    t.r = r;
    t.kind = classify(st.order, st.n, r, t.beta);
    seq.push_back(t);
    if (i < st.fac.s) {
      ExtInt k = k0(t.beta, st.order);
      if (!k) throw Error("central_intermediate_term", "stratum_calc.defining_sequence");
      r = -*k;
    }
  }
  validate_defining_sequence(st, seq);
  return seq;
}

void validate_defining_sequence(const StratumSkeleton& st, const std::vector<SequenceTerm>& seq) {
  const char* where = "stratum_calc.defining_sequence";
  if (seq.empty() || !seq[0].beta.same_digits(st.beta) || seq[0].r != st.r) throw Error("initial_term", where);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (classify(st.order, st.n, seq[i].r, seq[i].beta) != StratumKind::Simple) throw Error("kind", where);
    if (i + 1 < seq.size()) {
      if (!(seq[i].r < seq[i + 1].r)) throw Error("r_monotone", where);
      TameElement diff = seq[i].beta - seq[i + 1].beta;
      if (!diff.is_zero() && v_order(diff, st.order) < -seq[i + 1].r) throw Error("equivalence", where);
    }
  }
  if (seq.size() > 1 && !(seq.back().r < st.n)) throw Error("r_monotone", where);
  if (!is_minimal(seq.back().beta).minimal) throw Error("last_minimal", where);
}

long long mode_exponent(long long n, IndexMode mode) {
  switch (mode) {
    case IndexMode::Plain: return n;
    case IndexMode::Plus: return n + 1;
    case IndexMode::Half: return floor_div(n + 1, 2);
    case IndexMode::HalfPlus: return floor_div(n, 2) + 1;
  }
  return n;
}

FiltDepth depth_of_index(long long n, int e_A, IndexMode mode) {
  switch (mode) {
    case IndexMode::Plain: return FiltDepth::at(Rational(n, e_A));
    case IndexMode::Plus: return FiltDepth::after(Rational(n, e_A));
    case IndexMode::Half: return FiltDepth::at(Rational(n, 2LL * e_A));
    case IndexMode::HalfPlus: return FiltDepth::after(Rational(n, 2LL * e_A));
  }
  return {};
}

long long index_of_depth(const FiltDepth& d, int e_A, IndexMode mode) {
  const char* where = "stratum_calc.index_of_depth";
  if (d.normalizer) throw Error("normalizer_has_no_index", where);
  bool want_plus = mode == IndexMode::Plus || mode == IndexMode::HalfPlus;
  if (d.plus != want_plus) throw Error("depth_not_attained: r versus r+ mismatch", where);
  bool half = mode == IndexMode::Half || mode == IndexMode::HalfPlus;
  Rational n = d.value * static_cast<long long>(half ? 2 * e_A : e_A);
  if (n.denominator() != 1)
    throw Error("depth_not_attained: " + to_string(n) + " is not an integer", where);
  return n.numerator();
}

long long lattice_exponent(const FiltDepth& d, int e_A) {
  if (d.normalizer) throw Error("normalizer_not_a_lattice", "stratum_calc.lattice_exponent");
  Rational x = d.value * static_cast<long long>(e_A);
  return d.plus ? rfloor(x) + 1 : rceil(x);
}

void normalize(GroupPresentation* g) {
  std::vector<std::pair<int, FiltDepth>> items;
  for (Factor& f : g->factors) {
    switch (f.rule) {
      case ExponentRule::U0: f.depth = FiltDepth::at(Rational(0)); break;
      case ExponentRule::KFrak: f.depth = FiltDepth::bracket(); break;
      case ExponentRule::HalfPlusOne: f.depth = depth_of_index(f.arg, g->e_A, IndexMode::HalfPlus); break;
      case ExponentRule::HalfCeil: f.depth = depth_of_index(f.arg, g->e_A, IndexMode::Half); break;
      case ExponentRule::Power: f.depth = depth_of_index(f.arg, g->e_A, IndexMode::Plain); break;
      case ExponentRule::Depth: break;
    }
    items.emplace_back(f.level, f.depth);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  items.erase(std::unique(items.begin(), items.end()), items.end());
  std::vector<std::pair<int, FiltDepth>> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < items.size() && !dominated; ++j) {
      if (i == j) continue;
      // G^l_x lies in G^{l'}_y when l <= l' and y <= x
      if (items[i].first <= items[j].first && items[j].second <= items[i].second) dominated = true;
    }
    if (!dominated) out.push_back(items[i]);
  }
  g->normal_form = out;
}

SecherreGroups presentation_secherre(const StratumSkeleton& st) {
  if (!st.order.b_maximal) throw Error("non_maximal_B", "stratum_calc.presentation_secherre");
  std::vector<SequenceTerm> seq = defining_sequence(st);
  int s = static_cast<int>(seq.size()) - 1;
  bool last_central = in_base(seq.back().beta);
  int top = last_central ? s : s + 1;
  std::vector<int> degrees;
  for (const auto& t : seq) degrees.push_back(subfield_generated({t.beta}, t.beta.field()).degree);
  if (!last_central) degrees.push_back(1);

  auto base = [&] {
    GroupPresentation g;
    g.level_degrees = degrees;
    g.e_A = st.order.e_A;
    g.N = st.order.N();
    return g;
  };
  SecherreGroups out;
  out.H1 = base();
  for (int i = 0; i <= s; ++i) out.H1.factors.push_back({i, ExponentRule::HalfPlusOne, seq[static_cast<std::size_t>(i)].r, {}});
  out.H1.factors.push_back({top, ExponentRule::HalfPlusOne, st.n, {}});

  std::vector<Factor> tail;
  for (int i = 1; i <= s; ++i) tail.push_back({i, ExponentRule::HalfCeil, seq[static_cast<std::size_t>(i)].r, {}});
  tail.push_back({top, ExponentRule::HalfCeil, st.n, {}});

  out.J = base();
  out.J.factors.push_back({0, ExponentRule::U0, 0, {}});
  out.Jhat = base();
  out.Jhat.factors.push_back({0, ExponentRule::KFrak, 0, {}});
  out.J1 = base();
  out.J1.factors.push_back({0, ExponentRule::HalfPlusOne, 0, {}});
  for (auto* g : {&out.J, &out.Jhat, &out.J1}) g->factors.insert(g->factors.end(), tail.begin(), tail.end());
  // J1 = J cap U^1(A), which matters only for n = 0
  for (Factor& f : out.J1.factors)
    if (f.rule == ExponentRule::HalfCeil && f.arg == 0) f.rule = ExponentRule::HalfPlusOne;
  for (auto* g : {&out.H1, &out.J, &out.Jhat, &out.J1}) normalize(g);
  return out;
}

YuGroups presentation_yu(const YuSkeleton& yu) {
  const char* where = "stratum_calc.presentation_yu";
  if (static_cast<int>(yu.tower.size()) != yu.d + 1) throw Error("tower_length", where);
  if (yu.d > 0 && static_cast<int>(yu.depths.size()) < yu.d) throw Error("depth_count", where);
  std::vector<int> degrees;
  for (const auto& e : yu.tower) degrees.push_back(e.degree);
  auto base = [&] {
    GroupPresentation g;
    g.level_degrees = degrees;
    g.e_A = yu.vertex.e_A;
    g.N = yu.vertex.N();
    return g;
  };
  YuGroups out;
  out.Kplus = base();
  out.K0circ = base();
  out.K = base();
  auto dep = [](int level, FiltDepth d) { return Factor{level, ExponentRule::Depth, 0, d}; };
  out.Kplus.factors.push_back(dep(0, FiltDepth::after(Rational(0))));
  out.K0circ.factors.push_back(dep(0, FiltDepth::at(Rational(0))));
  out.K.factors.push_back(dep(0, FiltDepth::bracket()));
  out.K.factors.push_back(dep(0, FiltDepth::at(Rational(0))));
  for (int i = 1; i <= yu.d; ++i) {
    Rational si = yu.depths[static_cast<std::size_t>(i - 1)] / 2;
    out.Kplus.factors.push_back(dep(i, FiltDepth::after(si)));
    out.K0circ.factors.push_back(dep(i, FiltDepth::at(si)));
    out.K.factors.push_back(dep(i, FiltDepth::at(si)));
  }
  for (auto* g : {&out.Kplus, &out.K0circ, &out.K}) normalize(g);
  return out;
}

PresentationDiff compare_presentations(const GroupPresentation& a, const GroupPresentation& b) {
  if (a.level_degrees != b.level_degrees) throw Error("tower_mismatch", "stratum_calc.compare_presentations");
  PresentationDiff d;
  std::size_t n = std::max(a.normal_form.size(), b.normal_form.size());
  for (std::size_t i = 0; i < n; ++i) {
    bool ha = i < a.normal_form.size(), hb = i < b.normal_form.size();
    if (ha && hb && a.normal_form[i].first == b.normal_form[i].first && a.normal_form[i].second == b.normal_form[i].second)
      continue;
    d.equal = false;
    d.level = ha ? a.normal_form[i].first : b.normal_form[i].first;
    if (ha && hb) d.level = std::min(a.normal_form[i].first, b.normal_form[i].first);
    d.detail = std::string("level ") + std::to_string(d.level) + ": " +
               (ha ? to_string(a.normal_form[i].second) : std::string("none")) + " vs " +
               (hb ? to_string(b.normal_form[i].second) : std::string("none"));
    break;
  }
  return d;
}

namespace {

long long graded_dim(int N, int degree, int e_A) {
  long long num = 1LL * N * N;
  long long den = 1LL * degree * e_A;
  if (num % den != 0) throw Error("nonuniform_graded_piece", "stratum_calc.index_card");
  return num / den;
}

std::vector<long long> component_exponents(const GroupPresentation& g) {
  std::size_t levels = g.level_degrees.size();
  std::vector<long long> m(levels, std::numeric_limits<long long>::max());
  for (const auto& [lvl, d] : g.normal_form) {
    long long k = lattice_exponent(d, g.e_A);
    for (int j = 0; j <= lvl && j < static_cast<int>(levels); ++j) m[static_cast<std::size_t>(j)] = std::min(m[static_cast<std::size_t>(j)], k);
  }
  return m;
}

}  // namespace

long long index_card(const GroupPresentation& num, const GroupPresentation& den) {
  if (num.level_degrees != den.level_degrees || num.e_A != den.e_A || num.N != den.N)
    throw Error("tower_mismatch", "stratum_calc.index_card");
  std::vector<long long> a = component_exponents(num), b = component_exponents(den);
  long long total = 0, prev = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    long long dj = graded_dim(num.N, num.level_degrees[j], num.e_A);
    if (b[j] < a[j]) throw Error("non_inclusion", "stratum_calc.index_card");
    total += (dj - prev) * (b[j] - a[j]);
    prev = dj;
  }
  return total;
}

long long yu_index_product(const YuSkeleton& yu, int N) {
  long long total = 0;
  for (int i = 1; i <= yu.d; ++i) {
    Rational si = yu.depths[static_cast<std::size_t>(i - 1)] / 2;
    long long di = graded_dim(N, yu.tower[static_cast<std::size_t>(i)].degree, yu.vertex.e_A);
    long long dp = graded_dim(N, yu.tower[static_cast<std::size_t>(i - 1)].degree, yu.vertex.e_A);
    total += (di - dp) * (lattice_exponent(FiltDepth::after(si), yu.vertex.e_A) -
                          lattice_exponent(FiltDepth::at(si), yu.vertex.e_A));
  }
  return total;
}

}  // namespace sk
