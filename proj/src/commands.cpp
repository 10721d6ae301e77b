#include "strata_kit/commands.hpp"

#include <cstdlib>
#include <map>

#include "strata_kit/errors.hpp"
#include "strata_kit/verify.hpp"

namespace sk {

namespace {

constexpr long long kMinPrec = 8;
constexpr long long kMaxPrec = 4096;

[[noreturn]] void schema(const std::string& clause, const std::string& where) { throw SchemaError(clause, where); }

long long int_or(const Json& in, const char* key, long long fallback) {
  if (!in.contains(key)) return fallback;
  if (!in[key].is_number_integer()) schema("expected_integer", key);
  return in[key].get<long long>();
}

const Json& need(const Json& in, const char* key) {
  auto it = in.find(key);
  if (it == in.end()) schema(std::string("missing_key: ") + key, "input");
  return *it;
}

void allow_keys(const Json& in, std::initializer_list<const char*> keys) {
  for (auto it = in.begin(); it != in.end(); ++it) {
    bool ok = it.key() == "tower" || it.key() == "prec" || it.key() == "let";
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) schema("unknown_key: " + it.key(), "input");
  }
}

Json sequence_json(const std::vector<SequenceTerm>& seq) {
  Json out = Json::array();
  for (const auto& t : seq) out.push_back(Json{{"r", t.r}, {"beta", to_json(t.beta)}, {"kind", kind_name(t.kind)}});
  return out;
}

Json suite_json(const SuiteResult& r) {
  Json counts = Json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  return Json{{"name", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"ok", r.ok()}, {"counts", counts},
              {"failure_detail", r.failure_detail}};
}

struct Ctx {
  ParseContext pc;
  const Json& in;

  TameElement el(const char* key) const { return element_from_json(need(in, key), pc, key); }
  OrderSkeleton order(const TameElement& beta) const {
    return in.contains("order") ? order_from_json(in["order"], pc, "order") : ambient_order(beta);
  }
  StratumSkeleton stratum() const {
    TameElement beta = el("beta");
    return make_stratum(beta, order(beta), int_or(in, "r", 0));
  }
};

using Handler = Json (*)(const Ctx&);

Json cmd_expand(const Ctx& c) {
  allow_keys(c.in, {"c"});
  TameElement x = c.el("c");
  return Json{{"expansion", to_json(x)}, {"val", x.val()}, {"ord", x.is_zero() ? Json(nullptr) : to_json(x.ord())},
              {"prec", x.prec()}, {"digit_count", x.digit_count()}};
}

Json cmd_sr(const Ctx& c) {
  allow_keys(c.in, {"c"});
  TameElement x = c.el("c");
  if (x.is_zero()) throw Error("sr_of_zero", "sr");
  return Json{{"sr", to_json(sr(x))}};
}

Json cmd_minimal(const Ctx& c) {
  allow_keys(c.in, {"c", "base"});
  TameElement x = c.el("c");
  Subfield base = c.in.contains("base") ? subfield_from_json(c.in["base"], c.pc, "base") : base_subfield(x.field());
  MinimalityReport m = is_minimal(x, base);
  Json w = m.witness_first < 0 ? Json(nullptr) : Json::array({m.witness_first, m.witness_second});
  return Json{{"minimal", m.minimal},
              {"criteria", {{"classical", m.crit1_classical}, {"sr_generates", m.crit2_sr_generates}, {"embedding_ord", m.crit3_embedding_ord}}},
              {"witness", w}};
}

Json cmd_factorize(const Ctx& c) {
  allow_keys(c.in, {"beta"});
  Factorization f = howe_factorize(c.el("beta"));
  FactorizationCheck chk = check_factorization(f);
  Json out = to_json(f);
  out["check"] = Json{{"valid", chk.valid}, {"clause", chk.clause}, {"index", chk.index}};
  return out;
}

Json cmd_embeddings(const Ctx& c) {
  allow_keys(c.in, {"c"});
  const auto& embs = c.pc.tower.top()->embeddings();
  Json list = Json::array();
  for (const auto& e : embs) list.push_back(to_json(e));
  Json out{{"embeddings", list}, {"count", embs.size()}};
  if (c.in.contains("c")) {
    TameElement x = c.el("c");
    Json images = Json::array();
    for (const auto& e : embs) images.push_back(to_json(apply_embedding(e, x)));
    out["images"] = images;
  }
  return out;
}

Json cmd_generic(const Ctx& c) {
  allow_keys(c.in, {"c", "e_prime", "e"});
  TameElement x = c.el("c");
  Subfield ep = subfield_from_json(need(c.in, "e_prime"), c.pc, "e_prime");
  Subfield e = subfield_from_json(need(c.in, "e"), c.pc, "e");
  GenericityReport g = is_generic(x, ep, e);
  Json table = Json::array();
  for (const auto& p : g.table)
    table.push_back(Json{{"first", p.first}, {"second", p.second}, {"ord", p.ord ? to_json(*p.ord) : Json(nullptr)}});
  return Json{{"verdict", g.verdict}, {"minimal_verdict", g.minimal_verdict}, {"depth", to_json(g.depth)}, {"table", table}};
}

Json cmd_stratum2yu(const Ctx& c) {
  allow_keys(c.in, {"beta", "r", "order"});
  StratumSkeleton st = c.stratum();
  YuSkeleton yu = secherre_to_yu(st);
  return Json{{"stratum", to_json(st)}, {"sequence", sequence_json(defining_sequence(st))}, {"yu", to_json(yu)}};
}

Json cmd_yu2stratum(const Ctx& c) {
  allow_keys(c.in, {"yu"});
  YuSkeleton yu = yu_from_json(need(c.in, "yu"), c.pc);
  StratumSkeleton st = yu_to_secherre(yu);
  return Json{{"stratum", to_json(st)}, {"sequence", sequence_json(defining_sequence(st))}};
}

Json cmd_groups(const Ctx& c) {
  allow_keys(c.in, {"beta", "r", "order"});
  StratumSkeleton st = c.stratum();
  SecherreGroups sg = presentation_secherre(st);
  Json out{{"secherre", {{"H1", to_json(sg.H1)}, {"J", to_json(sg.J)}, {"Jhat", to_json(sg.Jhat)}, {"J1", to_json(sg.J1)}}}};
  if (st.kind == StratumKind::Simple && st.r == 0) {
    YuGroups yg = presentation_yu(secherre_to_yu(st));
    out["yu"] = Json{{"Kplus", to_json(yg.Kplus)}, {"K0circ", to_json(yg.K0circ)}, {"K", to_json(yg.K)}};
    out["equal"] = Json{{"H1=Kplus", compare_presentations(sg.H1, yg.Kplus).equal},
                        {"J=K0circ", compare_presentations(sg.J, yg.K0circ).equal},
                        {"Jhat=K", compare_presentations(sg.Jhat, yg.K).equal}};
  }
  return out;
}

Json cmd_indices(const Ctx& c) {
  allow_keys(c.in, {"beta", "order", "t"});
  TameElement beta = c.el("beta");
  OrderSkeleton o = c.order(beta);
  StratumSkeleton st = make_stratum(beta, o, 0);
  CharacterIndexTable tab = factchar_indices(st.fac, o, int_or(c.in, "t", 0));
  Json entries = Json::array();
  for (const auto& e : tab.entries) entries.push_back(Json{{"level", e.level}, {"t_i", e.t_i}, {"window", to_json(e.window)}});
  SecherreGroups sg = presentation_secherre(st);
  Json out{{"t", tab.t}, {"entries", entries}, {"index_J1_H1", index_card(sg.J1, sg.H1)}};
  if (st.kind == StratumKind::Simple) out["yu_index_product"] = yu_index_product(secherre_to_yu(st), o.N());
  return out;
}

const std::vector<std::pair<std::string, Handler>>& handlers() {
  static const std::vector<std::pair<std::string, Handler>> h = {
      {"expand", cmd_expand},       {"sr", cmd_sr},
      {"minimal", cmd_minimal},     {"factorize", cmd_factorize},
      {"embeddings", cmd_embeddings}, {"generic", cmd_generic},
      {"stratum2yu", cmd_stratum2yu}, {"yu2stratum", cmd_yu2stratum},
      {"groups", cmd_groups},       {"indices", cmd_indices},
  };
  return h;
}

Json error_json(const std::string& clause, const std::string& location) {
  return Json{{"schema", kSchemaTag}, {"error", {{"clause", clause}, {"location", location}}}};
}

}  // namespace

Session::Session(SessionOptions opts) : opts_(opts) {}

int Session::run(const std::string& command, const Json& input, Json* out, std::ostream* dump) {
  try {
    if (!input.is_object()) schema("expected_object", "input");
    long long prec = int_or(input, "prec", opts_.prec);
    if (prec < kMinPrec || prec > kMaxPrec) schema("precision_out_of_range", "prec");
    if (command == "verify") {
      allow_keys(input, {"suites", "seed"});
      VerifyOptions vo;
      vo.seed = static_cast<std::uint64_t>(int_or(input, "seed", static_cast<long long>(opts_.seed)));
      vo.prec = prec;
      vo.dump = dump;
      std::vector<std::string> suites = suite_names();
      if (input.contains("suites")) {
        if (!input["suites"].is_array()) schema("expected_array", "suites");
        suites.clear();
        for (const auto& s : input["suites"]) {
          if (!s.is_string()) schema("expected_string", "suites");
          suites.push_back(s.get<std::string>());
        }
      }
      Json list = Json::array();
      bool ok = true;
      for (const auto& s : suites) {
        SuiteResult r = run_suite(s, vo);
        ok = ok && r.ok();
        list.push_back(suite_json(r));
      }
      *out = Json{{"schema", kSchemaTag}, {"suites", list}, {"ok", ok}};
      return kExitOk;
    }
    if (command == "fuzz") {
      allow_keys(input, {"count", "seed", "max_degree", "max_digits", "max_jumps"});
      long long count = int_or(input, "count", 10);
      if (count < 0 || count > 100000) schema("count_out_of_range", "count");
      FuzzCaps caps;
      caps.max_degree = static_cast<int>(int_or(input, "max_degree", caps.max_degree));
      caps.max_digits = static_cast<int>(int_or(input, "max_digits", caps.max_digits));
      caps.max_jumps = static_cast<int>(int_or(input, "max_jumps", caps.max_jumps));
      if (caps.max_degree < 2 || caps.max_degree > 8 || caps.max_digits < 1 || caps.max_digits > 6 || caps.max_jumps < 1 ||
          caps.max_jumps > 3)
        schema("caps_out_of_range", "fuzz");
      auto seed = static_cast<std::uint64_t>(int_or(input, "seed", static_cast<long long>(opts_.seed)));
      Json list = Json::array();
      for (const auto& inst : fuzz_corpus(seed, static_cast<int>(count), caps)) list.push_back(to_json(inst));
      *out = Json{{"schema", kSchemaTag}, {"seed", seed}, {"instances", list}};
      return kExitOk;
    }
    Handler h = nullptr;
    for (const auto& [n, fn] : handlers())
      if (n == command) h = fn;
    if (!h) schema("unknown_command: " + command, "command");

    TowerSpec spec = tower_from_json(need(input, "tower"));
    std::string key = to_json(spec).dump();
    auto& names = names_[key];
    auto tw = towers_.find(key);
    if (tw == towers_.end()) tw = towers_.emplace(key, build_tower(spec)).first;
    Ctx ctx{{tw->second, spec, prec, &names}, input};
    if (input.contains("let")) {
      const Json& let = input["let"];
      if (!let.is_object()) schema("expected_object", "let");
      for (auto it = let.begin(); it != let.end(); ++it) {
        if (names.count(it.key())) schema("duplicate_name: " + it.key(), "let");
        names.emplace(it.key(), element_from_json(it.value(), ctx.pc, "let." + it.key()));
      }
    }
    *out = h(ctx);
    (*out)["schema"] = kSchemaTag;
    return kExitOk;
  } catch (const PrecisionError& e) {
    *out = error_json(e.clause(), e.location());
    return kExitPrecision;
  } catch (const SchemaError& e) {
    *out = error_json(e.clause(), e.location());
    return kExitSchema;
  } catch (const Error& e) {
    *out = error_json(e.clause(), e.location());
    return kExitDomain;
  } catch (const Json::exception& e) {
    *out = error_json("json_error", e.what());
    return kExitSchema;
  } catch (const std::exception& e) {
    *out = error_json(std::string("internal: ") + e.what(), command);
    return kExitDomain;
  }
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& kv : handlers()) v.push_back(kv.first);
    v.push_back("verify");
    v.push_back("fuzz");
    return v;
  }();
  return names;
}

namespace {

const char* kDefinitions = R"({
  "tower": {"type": "object", "required": ["q"],
            "properties": {"q": {"type": "integer"},
                           "steps": {"type": "array", "items": {"type": "object", "required": ["f", "e"],
                                     "properties": {"f": {"type": "integer"}, "e": {"type": "integer"}, "twist": {"type": "integer"}}}}}},
  "digits": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2,
             "items": [{"type": "integer"}, {"oneOf": [{"type": "array", "items": {"type": "integer"}}, {"type": "integer"}]}]}},
  "element": {"oneOf": [{"$ref": "#/definitions/digits"},
                        {"type": "object", "properties": {"add": {"type": "array"}, "mul": {"type": "array"}, "sub": {"type": "array"},
                                                          "inv": {}, "level": {"type": "integer"}, "digits": {"$ref": "#/definitions/digits"},
                                                          "ref": {"type": "string"}}}]},
  "subfield": {"oneOf": [{"type": "array", "items": {"$ref": "#/definitions/element"}},
                         {"type": "object", "required": ["generators"]}]},
  "rational": {"oneOf": [{"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}, {"type": "integer"}]},
  "order": {"type": "object", "required": ["m", "e_A", "pure_over", "b_maximal"],
            "properties": {"m": {"type": "integer"}, "d": {"type": "integer"}, "e_A": {"type": "integer"},
                           "pure_over": {"$ref": "#/definitions/subfield"}, "b_maximal": {"type": "boolean"}}},
  "yu": {"type": "object", "required": ["tower", "vertex", "depths", "realizers", "s", "d", "d_is_s_plus_one", "depth_d"],
         "properties": {"tower": {"type": "array", "items": {"$ref": "#/definitions/subfield"}}, "vertex": {"$ref": "#/definitions/order"},
                        "depths": {"type": "array", "items": {"$ref": "#/definitions/rational"}},
                        "realizers": {"type": "array", "items": {"$ref": "#/definitions/element"}},
                        "s": {"type": ["integer", "null"]}, "d": {"type": "integer"}, "d_is_s_plus_one": {"type": "boolean"},
                        "depth_d": {"$ref": "#/definitions/rational"}}}
})";

// command -> {required keys, optional keys with their definition}
const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>>>& shapes() {
  static const std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::pair<std::string, std::string>>>> m = {
      {"expand", {{"tower", "c"}, {{"c", "element"}}}},
      {"sr", {{"tower", "c"}, {{"c", "element"}}}},
      {"minimal", {{"tower", "c"}, {{"c", "element"}, {"base", "subfield"}}}},
      {"factorize", {{"tower", "beta"}, {{"beta", "element"}}}},
      {"embeddings", {{"tower"}, {{"c", "element"}}}},
      {"generic", {{"tower", "c", "e_prime", "e"}, {{"c", "element"}, {"e_prime", "subfield"}, {"e", "subfield"}}}},
      {"stratum2yu", {{"tower", "beta"}, {{"beta", "element"}, {"r", "integer"}, {"order", "order"}}}},
      {"yu2stratum", {{"tower", "yu"}, {{"yu", "yu"}}}},
      {"groups", {{"tower", "beta"}, {{"beta", "element"}, {"r", "integer"}, {"order", "order"}}}},
      {"indices", {{"tower", "beta"}, {{"beta", "element"}, {"t", "integer"}, {"order", "order"}}}},
      {"verify", {{}, {{"suites", "strings"}, {"seed", "integer"}}}},
      {"fuzz", {{}, {{"count", "integer"}, {"seed", "integer"}, {"max_degree", "integer"}, {"max_digits", "integer"}, {"max_jumps", "integer"}}}},
  };
  return m;
}

}  // namespace

Json command_schema(const std::string& command) {
  auto it = shapes().find(command);
  if (it == shapes().end()) schema("unknown_command: " + command, "command");
  Json props = Json::object();
  props["prec"] = Json{{"type", "integer"}, {"minimum", kMinPrec}, {"maximum", kMaxPrec}};
  if (command != "verify" && command != "fuzz") {
    props["tower"] = Json{{"$ref", "#/definitions/tower"}};
    props["let"] = Json{{"type", "object"}, {"additionalProperties", {{"$ref", "#/definitions/element"}}}};
  }
  for (const auto& [key, def] : it->second.second) {
    if (def == "integer") props[key] = Json{{"type", "integer"}};
    else if (def == "strings") props[key] = Json{{"type", "array"}, {"items", {{"type", "string"}}}};
    else props[key] = Json{{"$ref", "#/definitions/" + def}};
  }
  return Json{{"$schema", "http://json-schema.org/draft-07/schema#"},
              {"$id", std::string(kSchemaTag) + "/" + command},
              {"type", "object"},
              {"required", it->second.first},
              {"additionalProperties", false},
              {"properties", props},
              {"definitions", Json::parse(kDefinitions)}};
}

long long env_precision(long long fallback) {
  const char* v = std::getenv("STRATA_KIT_PREC");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long long p = std::strtoll(v, &end, 10);
  if (*end != '\0' || p < kMinPrec || p > kMaxPrec) schema("bad_precision", "STRATA_KIT_PREC");
  return p;
}

}  // namespace sk
