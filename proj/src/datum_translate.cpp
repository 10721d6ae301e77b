#include "strata_kit/datum_translate.hpp"

#include <algorithm>

#include "strata_kit/errors.hpp"

namespace sk {

namespace {

const char* kWhereS2Y = "datum_translate.secherre_to_yu";
const char* kWhereY2S = "datum_translate.yu_to_secherre";

bool in_base(const TameElement& x) { return contains(base_subfield(x.field()), x); }

void check_presentations(const StratumSkeleton& st, const YuSkeleton& yu) {
  SecherreGroups sg = presentation_secherre(st);
  YuGroups yg = presentation_yu(yu);
  const std::pair<const GroupPresentation*, const GroupPresentation*> pairs[] = {
      {&sg.H1, &yg.Kplus}, {&sg.J, &yg.K0circ}, {&sg.Jhat, &yg.K}};
  for (const auto& [a, b] : pairs) {
    PresentationDiff d = compare_presentations(*a, *b);
    if (!d.equal) throw Error("presentation_mismatch: " + d.detail, kWhereS2Y);
  }
}

}  // namespace

bool unit_equivalent(const TameElement& a, const TameElement& b) {
  if (a.is_zero() || b.is_zero()) return false;
  TameElement bb = b.field() == a.field() ? b : coerce(b, a.field());
  return sr(a).same_digits(sr(bb));
}

void validate_yu(const YuSkeleton& yu) {
  const char* where = "datum_translate.validate_yu";
  if (static_cast<int>(yu.tower.size()) != yu.d + 1) throw Error("tower_length", where);
  if (yu.tower.back().degree != 1) throw Error("tower_top_not_base", where);
  for (std::size_t i = 0; i + 1 < yu.tower.size(); ++i)
    if (!(yu.tower[i + 1].degree < yu.tower[i].degree)) throw Error("tower_not_strict", where);
  if (yu.s < -1) throw Error("s_index", where);
  if (yu.s == -1) {
    if (yu.d != 0 || !yu.depths.empty() || !yu.realizers.empty()) throw Error("s_index", where);
    return;
  }
  std::size_t n = static_cast<std::size_t>(yu.s + 1);
  if (yu.depths.size() != n || yu.realizers.size() != n) throw Error("s_index", where);
  if (!(yu.depths[0] > 0)) throw Error("depth_monotone", where);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(yu.depths[i] < yu.depths[i + 1])) throw Error("depth_monotone", where);
  if (yu.d_is_s_plus_one != (yu.d == yu.s + 1)) throw Error("d_flag", where);
  if (!yu.d_is_s_plus_one && yu.d != yu.s) throw Error("d_flag", where);
  if (yu.d_is_s_plus_one && yu.depth_d != yu.depths.back()) throw Error("depth_d", where);
  for (std::size_t i = 0; i < n; ++i) {
    const TameElement& c = yu.realizers[i];
    if (c.is_zero()) throw Error("realizer_zero", where);
    if (-c.ord() != yu.depths[i]) throw Error("realizer_depth", where);
    if (i < yu.tower.size() && !contains(yu.tower[i], c)) throw Error("realizer_field", where);
  }
  if (!yu.d_is_s_plus_one && !in_base(yu.realizers.back())) throw Error("d_flag", where);
  for (int i = 0; i < yu.d && i <= yu.s; ++i) {
    const TameElement& c = yu.realizers[static_cast<std::size_t>(i)];
    GenericityReport g = is_generic(c, yu.tower[static_cast<std::size_t>(i)], yu.tower[static_cast<std::size_t>(i + 1)]);
    if (!g.verdict) throw Error("not_generic", where);
  }
}

YuSkeleton secherre_to_yu(const StratumSkeleton& st) {
  if (st.kind != StratumKind::Simple) throw Error("stratum_not_simple", kWhereS2Y);
  if (st.r != 0) throw Error("r_nonzero", kWhereS2Y);
  if (!st.order.b_maximal) throw Error("non_maximal_B", kWhereS2Y);
  YuSkeleton yu;
  yu.vertex = st.order;
  const FieldPtr& amb = st.beta.field();
  if (st.n == 0) {
    yu.tower = {base_subfield(amb)};
    yu.s = -1;
    yu.d = 0;
    check_presentations(st, yu);
    return yu;
  }
  std::vector<SequenceTerm> seq = defining_sequence(st);
  const Factorization& fac = st.fac;
  for (int i = 0; i <= fac.s; ++i) {
    const TameElement& c = fac.chunks[static_cast<std::size_t>(i)].c;
    yu.tower.push_back(subfield_generated({tail_sum(fac, i)}, amb));
    yu.depths.push_back(-c.ord());
    yu.realizers.push_back(c);
  }
  yu.s = fac.s;
  if (in_base(tail_sum(fac, fac.s))) {
    yu.d = yu.s;
  } else {
    yu.tower.push_back(base_subfield(amb));
    yu.d = yu.s + 1;
    yu.d_is_s_plus_one = true;
  }
  yu.depth_d = yu.depths.back();
  for (std::size_t i = 0; i + 1 < yu.depths.size(); ++i)
    if (!(yu.depths[i] < yu.depths[i + 1])) throw Error("depth_monotone", kWhereS2Y);
  try {
    validate_yu(yu);
  } catch (const Error& e) {
    throw Error("internal_inconsistency: " + e.clause(), kWhereS2Y);
  }
  for (int i = 0; i < yu.d && i <= yu.s; ++i) {
    GenericityReport g = is_generic(yu.realizers[static_cast<std::size_t>(i)], yu.tower[static_cast<std::size_t>(i)],
                                    yu.tower[static_cast<std::size_t>(i + 1)]);
    if (g.verdict != g.minimal_verdict) throw Error("internal_inconsistency: genericity", kWhereS2Y);
  }
  check_presentations(st, yu);
  return yu;
}

StratumSkeleton yu_to_secherre(const YuSkeleton& yu) {
  validate_yu(yu);
  const OrderSkeleton& o = yu.vertex;
  if (yu.s == -1) {
    const FieldPtr& amb = yu.tower.front().ambient;
    StratumSkeleton st = make_stratum(TameElement::base_monomial(amb, 1, 0, kDefaultPrec), o, 0);
    if (st.kind != StratumKind::Simple) throw Error("not_simple", kWhereY2S);
    return st;
  }
  for (const Rational& r : yu.depths)
    if ((r * static_cast<long long>(o.e_A)).denominator() != 1)
      throw Error("depth_not_attained: " + to_string(r), kWhereY2S);
  TameElement beta = yu.realizers.front();
  for (std::size_t i = 1; i < yu.realizers.size(); ++i) beta = beta + yu.realizers[i];
  StratumSkeleton st = make_stratum(beta, o, 0);
  if (st.kind != StratumKind::Simple) throw Error("not_simple", kWhereY2S);
  std::vector<SequenceTerm> seq = defining_sequence(st);
  if (static_cast<int>(seq.size()) != yu.s + 1) throw Error("sequence_mismatch: length", kWhereY2S);
  for (int i = 1; i <= yu.s; ++i)
    if (Rational(seq[static_cast<std::size_t>(i)].r) != yu.depths[static_cast<std::size_t>(i - 1)] * static_cast<long long>(o.e_A))
      throw Error("sequence_mismatch: r_" + std::to_string(i), kWhereY2S);
  if (Rational(st.n) != yu.depths.back() * static_cast<long long>(o.e_A)) throw Error("sequence_mismatch: n", kWhereY2S);
  return st;
}

namespace {

void compare_yu(const YuSkeleton& a, const YuSkeleton& b, RoundtripReport* rep) {
  auto miss = [&](const std::string& m) {
    rep->equal = false;
    rep->mismatches.push_back(m);
  };
  if (a.s != b.s) miss("s");
  if (a.d != b.d) miss("d");
  if (a.d_is_s_plus_one != b.d_is_s_plus_one) miss("d_flag");
  if (a.depth_d != b.depth_d) miss("depth_d");
  if (a.vertex.e_A != b.vertex.e_A) miss("e_A");
  std::vector<int> da, db;
  for (const auto& e : a.tower) da.push_back(e.degree);
  for (const auto& e : b.tower) db.push_back(e.degree);
  if (da != db) miss("tower_degrees");
  std::vector<Rational> ra = a.depths, rb = b.depths;
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  if (ra != rb) miss("depths");
  if (a.realizers.size() != b.realizers.size()) {
    miss("realizer_count");
  } else {
    for (std::size_t i = 0; i < a.realizers.size(); ++i)
      if (!unit_equivalent(a.realizers[i], b.realizers[i])) miss("realizer_" + std::to_string(i));
  }
}

}  // namespace

RoundtripReport roundtrip_check(const StratumSkeleton& st) {
  RoundtripReport rep;
  YuSkeleton yu = secherre_to_yu(st);
  StratumSkeleton back = yu_to_secherre(yu);
  auto miss = [&](const std::string& m) {
    rep.equal = false;
    rep.mismatches.push_back(m);
  };
  if (back.n != st.n) miss("n");
  if (back.order.e_A != st.order.e_A) miss("e_A");
  if (back.kind != st.kind) miss("kind");
  if (st.n > 0) {
    std::vector<SequenceTerm> s1 = defining_sequence(st), s2 = defining_sequence(back);
    if (s1.size() != s2.size()) {
      miss("sequence_length");
    } else {
      for (std::size_t i = 0; i < s1.size(); ++i) {
        if (s1[i].r != s2[i].r) miss("r_" + std::to_string(i));
        if (st.fac.chunks[i].field_degree != back.fac.chunks[i].field_degree) miss("tower_degree_" + std::to_string(i));
        if (!unit_equivalent(st.fac.chunks[i].c, back.fac.chunks[i].c)) miss("realizer_" + std::to_string(i));
      }
    }
  }
  compare_yu(yu, secherre_to_yu(back), &rep);
  return rep;
}

RoundtripReport roundtrip_check(const YuSkeleton& yu) {
  RoundtripReport rep;
  StratumSkeleton st = yu_to_secherre(yu);
  YuSkeleton back = secherre_to_yu(st);
  compare_yu(yu, back, &rep);
  if (st.order.e_A != yu.vertex.e_A) {
    rep.equal = false;
    rep.mismatches.push_back("e_A");
  }
  return rep;
}

CharacterIndexTable factchar_indices(const Factorization& fac, const OrderSkeleton& o, long long t) {
  const char* where = "datum_translate.factchar_indices";
  ExtInt k = k0(fac.beta, o);
  if (t < 0 || (k && t >= -*k)) throw Error("t_out_of_range", where);
  CharacterIndexTable tab;
  tab.t = t;
  for (int i = 0; i <= fac.s; ++i) {
    long long v = v_order(fac.chunks[static_cast<std::size_t>(i)].c, o);
    long long w = -v;
    long long half = w >= 0 ? w / 2 : -((-w + 1) / 2);
    CharacterIndexEntry e;
    e.level = i;
    e.t_i = std::max(t, half);
    e.window = depth_of_index(e.t_i, o.e_A, IndexMode::Plus);
    tab.entries.push_back(e);
  }
  return tab;
}

}  // namespace sk
