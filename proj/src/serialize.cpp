#include "strata_kit/serialize.hpp"

#include "strata_kit/errors.hpp"

namespace sk {

namespace {

constexpr long long kMaxNegativeValuation = 1 << 16;
constexpr long long kMaxTowerDegree = 64;

[[noreturn]] void schema(const std::string& clause, const std::string& where) { throw SchemaError(clause, where); }

long long get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema("expected_integer", where);
  return j.get<long long>();
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema("expected_object", where);
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing_key: ") + key, where);
  return *it;
}

// digits given as coordinates over F_p, or already packed
std::uint32_t residue_from_json(const Json& j, const FqField& k, const std::string& where) {
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0 || v >= static_cast<long long>(k.size())) schema("residue_out_of_range", where);
    return static_cast<std::uint32_t>(v);
  }
  if (!j.is_array()) schema("expected_coords", where);
  if (j.size() > static_cast<std::size_t>(k.f())) schema("too_many_coords", where);
  std::vector<int> c(static_cast<std::size_t>(k.f()), 0);
  for (std::size_t i = 0; i < j.size(); ++i) {
    long long v = get_int(j[i], where);
    if (v < 0 || v >= k.p()) schema("coord_out_of_range", where);
    c[i] = static_cast<int>(v);
  }
  return k.pack(c);
}

TameElement digits_from_json(const Json& j, const FieldPtr& f, long long prec, const std::string& where) {
  if (!j.is_array()) schema("expected_digit_list", where);
  std::map<long long, std::uint32_t> d;
  for (const Json& item : j) {
    if (!item.is_array() || item.size() != 2) schema("expected_digit_pair", where);
    long long v = get_int(item[0], where);
    if (d.count(v)) schema("duplicate_valuation", where);
    if (v >= prec) schema("digit_beyond_precision", where);
    if (v < -kMaxNegativeValuation) schema("valuation_out_of_range", where);
    d[v] = residue_from_json(item[1], f->k(), where);
  }
  return TameElement::from_digits(f, d, prec);
}

}  // namespace

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const FiltDepth& d) {
  if (d.normalizer) return Json{{"normalizer", true}};
  return Json{{"value", to_string(d.value)}, {"plus", d.plus}};
}

Json to_json(const TowerSpec& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps) steps.push_back(Json{{"f", st.f}, {"e", st.e}, {"twist", st.twist}});
  return Json{{"q", s.q}, {"steps", steps}};
}

Json to_json(const TameElement& x) {
  Json out = Json::array();
  for (const auto& [v, a] : x.digits()) out.push_back(Json::array({v, x.field()->k().coords(a)}));
  return out;
}

Json to_json(const Subfield& s) {
  Json gens = Json::array();
  for (const auto& g : s.generators) gens.push_back(to_json(g));
  return Json{{"degree", s.degree}, {"e", s.e}, {"f", s.f}, {"generators", gens}};
}

Json to_json(const OrderSkeleton& o) {
  return Json{{"m", o.m}, {"d", o.d}, {"e_A", o.e_A}, {"pure_over", to_json(o.pure_over)}, {"b_maximal", o.b_maximal}};
}

Json to_json(const Factorization& f) {
  Json chunks = Json::array();
  for (const auto& c : f.chunks)
    chunks.push_back(Json{{"c", to_json(c.c)}, {"field_degree", c.field_degree}, {"ord", to_json(c.ord)}});
  return Json{{"beta", to_json(f.beta)}, {"chunks", chunks}, {"s", f.s}, {"degenerate", f.degenerate}};
}

Json to_json(const GroupPresentation& g) {
  Json nf = Json::array();
  for (const auto& [lvl, d] : g.normal_form) nf.push_back(Json{{"level", lvl}, {"depth", to_json(d)}});
  return Json{{"normal_form", nf}, {"level_degrees", g.level_degrees}, {"e_A", g.e_A}, {"N", g.N}};
}

Json to_json(const StratumSkeleton& st) {
  return Json{{"order", to_json(st.order)}, {"n", st.n}, {"r", st.r}, {"beta", to_json(st.beta)}, {"kind", kind_name(st.kind)}};
}

Json to_json(const YuSkeleton& yu) {
  Json tower = Json::array(), depths = Json::array(), real = Json::array();
  for (const auto& t : yu.tower) tower.push_back(to_json(t));
  for (const auto& d : yu.depths) depths.push_back(to_json(d));
  for (const auto& r : yu.realizers) real.push_back(to_json(r));
  Json s = yu.s < 0 ? Json(nullptr) : Json(yu.s);
  return Json{{"tower", tower}, {"vertex", to_json(yu.vertex)}, {"depths", depths}, {"realizers", real}, {"s", s},
              {"d", yu.d}, {"d_is_s_plus_one", yu.d_is_s_plus_one}, {"depth_d", to_json(yu.depth_d)}};
}

Json to_json(const FuzzInstance& inst) {
  return Json{{"index", inst.index}, {"tower", to_json(inst.spec)}, {"beta", to_json(inst.beta)}, {"order", to_json(inst.order)}};
}

Json to_json(const Embedding& e) {
  return Json{{"frob_exp", e.frob_exp}, {"root_choice", e.root_choice}, {"xi", e.xi}};
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) schema("expected_rational", where);
  const std::string s = j.get<std::string>();
  std::size_t slash = s.find('/');
  try {
    std::size_t used = 0;
    long long a = std::stoll(s.substr(0, slash), &used);
    if (used != (slash == std::string::npos ? s.size() : slash)) schema("bad_rational", where);
    long long b = 1;
    if (slash != std::string::npos) {
      std::string den = s.substr(slash + 1);
      b = std::stoll(den, &used);
      if (used != den.size() || b == 0) schema("bad_rational", where);
    }
    return Rational(a, b);
  } catch (const std::logic_error&) {
    schema("bad_rational", where);
  }
}

FiltDepth depth_from_json(const Json& j, const std::string& where) {
  if (!j.is_object()) schema("expected_depth", where);
  if (j.contains("normalizer") && j["normalizer"].is_boolean() && j["normalizer"].get<bool>()) return FiltDepth::bracket();
  Rational v = rational_from_json(need(j, "value", where), where);
  const Json& plus = need(j, "plus", where);
  if (!plus.is_boolean()) schema("expected_boolean", where);
  return plus.get<bool>() ? FiltDepth::after(v) : FiltDepth::at(v);
}

TowerSpec tower_from_json(const Json& j) {
  const std::string where = "tower";
  TowerSpec s;
  long long q = get_int(need(j, "q", where), where);
  if (q < 2 || q > static_cast<long long>(kFieldCap)) schema("q_out_of_range", where);
  s.q = static_cast<int>(q);
  if (!j.contains("steps")) return s;
  const Json& steps = j["steps"];
  if (!steps.is_array()) schema("expected_array", where + ".steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    std::string w = where + ".steps[" + std::to_string(i) + "]";
    TowerSpec::Step st;
    long long f = get_int(need(steps[i], "f", w), w), e = get_int(need(steps[i], "e", w), w);
    if (f < 1 || e < 1 || f > 64 || e > 64) schema("step_out_of_range", w);
    st.f = static_cast<int>(f);
    st.e = static_cast<int>(e);
    if (steps[i].contains("twist")) {
      long long t = get_int(steps[i]["twist"], w);
      if (t < 1 || t > static_cast<long long>(kFieldCap)) schema("twist_out_of_range", w);
      st.twist = static_cast<std::uint32_t>(t);
    }
    s.steps.push_back(st);
  }
  long long deg = 1;
  for (const auto& st : s.steps) {
    deg *= st.f * st.e;
    if (deg > kMaxTowerDegree) schema("tower_degree_out_of_range", where);
  }
  return s;
}

namespace {

constexpr int kMaxNesting = 64;

TameElement element_at(const Json& j, const ParseContext& ctx, const std::string& where, int depth) {
  if (depth > kMaxNesting) schema("nesting_too_deep", where);
  const FieldPtr& top = ctx.tower.top();
  if (j.is_array()) return digits_from_json(j, top, ctx.prec, where);
  if (!j.is_object() || j.size() != 1 + (j.contains("digits") ? 1 : 0)) schema("expected_element", where);
  auto list = [&](const char* key) {
    const Json& a = j[key];
    if (!a.is_array() || a.empty()) schema("expected_nonempty_array", where + "." + key);
    std::vector<TameElement> out;
    for (std::size_t i = 0; i < a.size(); ++i)
      out.push_back(element_at(a[i], ctx, where + "." + key + "[" + std::to_string(i) + "]", depth + 1));
    return out;
  };
  if (j.contains("add") || j.contains("mul")) {
    bool add = j.contains("add");
    std::vector<TameElement> xs = list(add ? "add" : "mul");
    TameElement acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc = add ? acc + xs[i] : acc * xs[i];
    return acc;
  }
  if (j.contains("sub")) {
    std::vector<TameElement> xs = list("sub");
    if (xs.size() != 2) schema("sub_needs_two", where);
    return xs[0] - xs[1];
  }
  if (j.contains("inv")) {
    TameElement x = element_at(j["inv"], ctx, where + ".inv", depth + 1);
    if (x.is_zero()) throw Error("inverse_of_zero", where);
    return x.inverse();
  }
  if (j.contains("level")) {
    long long k = get_int(j["level"], where);
    if (k < 0 || k >= static_cast<long long>(ctx.tower.levels.size())) schema("level_out_of_range", where);
    const FieldPtr& f = ctx.tower.levels[static_cast<std::size_t>(k)];
    long long m = top->e_abs() / f->e_abs();
    TameElement x = digits_from_json(need(j, "digits", where), f, (ctx.prec + m - 1) / m, where + ".digits");
    return coerce(x, top).with_prec(ctx.prec);
  }
  if (j.contains("ref")) {
    if (!j["ref"].is_string()) schema("expected_string", where);
    std::string name = j["ref"].get<std::string>();
    if (!ctx.names || !ctx.names->count(name)) schema("unknown_name: " + name, where);
    const TameElement& x = ctx.names->at(name);
    if (x.field() != top) schema("name_in_other_tower: " + name, where);
    return x;
  }
  schema("expected_element", where);
}

}  // namespace

TameElement element_from_json(const Json& j, const ParseContext& ctx, const std::string& where) {
  return element_at(j, ctx, where, 0);
}

Subfield subfield_from_json(const Json& j, const ParseContext& ctx, const std::string& where) {
  const Json* gens = &j;
  if (j.is_object()) gens = &need(j, "generators", where);
  if (!gens->is_array()) schema("expected_generator_list", where);
  std::vector<TameElement> xs;
  for (std::size_t i = 0; i < gens->size(); ++i)
    xs.push_back(element_from_json((*gens)[i], ctx, where + "[" + std::to_string(i) + "]"));
  return xs.empty() ? base_subfield(ctx.tower.top()) : subfield_generated(xs, ctx.tower.top());
}

OrderSkeleton order_from_json(const Json& j, const ParseContext& ctx, const std::string& where) {
  OrderSkeleton o;
  o.m = static_cast<int>(get_int(need(j, "m", where), where + ".m"));
  o.d = j.contains("d") ? static_cast<int>(get_int(j["d"], where + ".d")) : 1;
  o.e_A = static_cast<int>(get_int(need(j, "e_A", where), where + ".e_A"));
  if (o.m < 1 || o.d < 1 || o.e_A < 1) schema("order_out_of_range", where);
  o.pure_over = subfield_from_json(need(j, "pure_over", where), ctx, where + ".pure_over");
  const Json& bm = need(j, "b_maximal", where);
  if (!bm.is_boolean()) schema("expected_boolean", where + ".b_maximal");
  o.b_maximal = bm.get<bool>();
  return o;
}

YuSkeleton yu_from_json(const Json& j, const ParseContext& ctx) {
  const std::string where = "yu";
  YuSkeleton yu;
  const Json& tower = need(j, "tower", where);
  if (!tower.is_array()) schema("expected_array", where + ".tower");
  for (std::size_t i = 0; i < tower.size(); ++i)
    yu.tower.push_back(subfield_from_json(tower[i], ctx, where + ".tower[" + std::to_string(i) + "]"));
  yu.vertex = order_from_json(need(j, "vertex", where), ctx, where + ".vertex");
  const Json& depths = need(j, "depths", where);
  const Json& real = need(j, "realizers", where);
  if (!depths.is_array() || !real.is_array()) schema("expected_array", where);
  for (std::size_t i = 0; i < depths.size(); ++i) yu.depths.push_back(rational_from_json(depths[i], where + ".depths"));
  for (std::size_t i = 0; i < real.size(); ++i)
    yu.realizers.push_back(element_from_json(real[i], ctx, where + ".realizers[" + std::to_string(i) + "]"));
  const Json& s = need(j, "s", where);
  yu.s = s.is_null() ? -1 : static_cast<int>(get_int(s, where + ".s"));
  if (yu.s < -1) schema("s_out_of_range", where);
  yu.d = static_cast<int>(get_int(need(j, "d", where), where + ".d"));
  const Json& flag = need(j, "d_is_s_plus_one", where);
  if (!flag.is_boolean()) schema("expected_boolean", where + ".d_is_s_plus_one");
  yu.d_is_s_plus_one = flag.get<bool>();
  yu.depth_d = rational_from_json(need(j, "depth_d", where), where + ".depth_d");
  return yu;
}

std::string dump_canonical(const Json& j) { return j.dump(); }

}  // namespace sk
