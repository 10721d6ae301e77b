#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <iterator>
#include <random>
#include <string>

#include <json.hpp>

#include "strata_kit/strata_kit.h"

using Json = nlohmann::json;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run run(sk_session* s, const char* cmd, const std::string& in) {
  char* p = nullptr;
  Run r;
  r.rc = sk_session_run(s, cmd, in.c_str(), &p);
  if (p) r.out = p;
  sk_string_free(p);
  return r;
}

struct Session {
  sk_session* s = nullptr;
  Session() { REQUIRE(sk_session_create(64, 0, &s) == SK_OK); }
  ~Session() { sk_session_destroy(s); }
};

const std::string kRam2 = R"("tower":{"q":3,"steps":[{"f":1,"e":2}]})";
const std::string kBeta = R"({"add":[{"level":0,"digits":[[-2,[1]]]},[[-1,[1]]]]})";

}  // namespace

TEST_CASE("sr example") {
  Session s;
  Run r = run(s.s, "sr", R"({"tower":{"q":3},"c":[[-1,[2]],[0,[1]]]})");
  CHECK(r.rc == SK_OK);
  CHECK(r.out == R"({"schema":"strata-kit/v1","sr":[[-1,[2]]]})");
}

TEST_CASE("exit codes and structured errors") {
  Session s;
  Run bad = run(s.s, "sr", "{not json");
  CHECK(bad.rc == SK_ERR_SCHEMA);
  CHECK(Json::parse(bad.out)["error"]["clause"] == "invalid_json");
  Run unknown = run(s.s, "sr", R"({"tower":{"q":3},"c":[[0,[1]]],"extra":1})");
  CHECK(unknown.rc == SK_ERR_SCHEMA);
  Run coord = run(s.s, "sr", R"({"tower":{"q":3},"c":[[0,[5]]]})");
  CHECK(coord.rc == SK_ERR_SCHEMA);
  Run zero = run(s.s, "sr", R"({"tower":{"q":3},"c":[]})");
  CHECK(zero.rc == SK_ERR_DOMAIN);
  CHECK(Json::parse(zero.out)["error"]["clause"] == "sr_of_zero");
  Run prec = run(s.s, "minimal", R"({"tower":{"q":3},"c":[]})");
  CHECK(prec.rc == SK_ERR_PRECISION);
  Run low = run(s.s, "sr", R"({"tower":{"q":3},"prec":4,"c":[[0,[1]]]})");
  CHECK(low.rc == SK_ERR_SCHEMA);
  Run badq = run(s.s, "sr", R"({"tower":{"q":6},"c":[[0,[1]]]})");
  CHECK(badq.rc != SK_OK);
  CHECK(Json::parse(badq.out).contains("error"));
  CHECK(std::string(sk_last_error()).size() > 0);
}

TEST_CASE("factorize and translate the running example") {
  Session s;
  Run f = run(s.s, "factorize", "{" + kRam2 + R"(,"beta":)" + kBeta + "}");
  REQUIRE(f.rc == SK_OK);
  Json fj = Json::parse(f.out);
  CHECK(fj["s"] == 1);
  CHECK(fj["chunks"].size() == 2);
  CHECK(fj["check"]["valid"] == true);
  Run y = run(s.s, "stratum2yu", "{" + kRam2 + R"(,"beta":)" + kBeta + "}");
  REQUIRE(y.rc == SK_OK);
  Json yu = Json::parse(y.out)["yu"];
  CHECK(yu["depths"] == Json::array({"1/2", "2/1"}));
  CHECK(yu["depth_d"] == "2/1");
  Run back = run(s.s, "yu2stratum", "{" + kRam2 + R"(,"yu":)" + yu.dump() + "}");
  REQUIRE(back.rc == SK_OK);
  Json st = Json::parse(back.out)["stratum"];
  CHECK(st["n"] == 4);
  CHECK(st["kind"] == "simple");
  Run g = run(s.s, "groups", "{" + kRam2 + R"(,"beta":)" + kBeta + "}");
  REQUIRE(g.rc == SK_OK);
  Json gj = Json::parse(g.out);
  CHECK(gj["equal"]["H1=Kplus"] == true);
  CHECK(gj["equal"]["J=K0circ"] == true);
  CHECK(gj["equal"]["Jhat=K"] == true);
  CHECK(gj["secherre"]["H1"]["normal_form"][0]["depth"] == Json{{"value", "0/1"}, {"plus", true}});
  CHECK(gj["secherre"]["H1"]["normal_form"][1]["depth"] == Json{{"value", "1/4"}, {"plus", true}});
  Run ix = run(s.s, "indices", "{" + kRam2 + R"(,"t":0,"beta":)" + kBeta + "}");
  REQUIRE(ix.rc == SK_OK);
  Json ij = Json::parse(ix.out);
  CHECK(ij["index_J1_H1"] == ij["yu_index_product"]);
}

TEST_CASE("named elements persist in the session") {
  Session s;
  Run a = run(s.s, "expand", "{" + kRam2 + R"(,"let":{"b":)" + kBeta + R"(},"c":{"ref":"b"}})");
  REQUIRE(a.rc == SK_OK);
  Run b = run(s.s, "minimal", "{" + kRam2 + R"(,"c":{"mul":[{"ref":"b"},[[0,[2]]]]}})");
  REQUIRE(b.rc == SK_OK);
  CHECK(Json::parse(b.out)["minimal"] == false);
  Run dup = run(s.s, "expand", "{" + kRam2 + R"(,"let":{"b":[[0,[1]]]},"c":[[0,[1]]]})");
  CHECK(dup.rc == SK_ERR_SCHEMA);
}

TEST_CASE("deterministic output and the seed 0 golden file") {
  Session s1, s2;
  std::string in = R"({"seed":0,"count":1})";
  Run a = run(s1.s, "fuzz", in), b = run(s2.s, "fuzz", in);
  CHECK(a.out == b.out);
  std::ifstream f(STRATA_KIT_GOLDEN_DIR "/fuzz_seed0.json");
  REQUIRE(f.good());
  std::string golden(std::istreambuf_iterator<char>(f), {});
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  CHECK(a.out == golden);
}

TEST_CASE("tower and element handles") {
  sk_tower* t = nullptr;
  REQUIRE(sk_tower_create(R"({"q":5,"steps":[{"f":2,"e":1},{"f":1,"e":3,"twist":2}]})", &t) == SK_OK);
  int deg = 0, e = 0;
  CHECK(sk_tower_degree(t, &deg) == SK_OK);
  CHECK(sk_tower_ramification(t, &e) == SK_OK);
  CHECK(deg == 6);
  CHECK(e == 3);
  sk_element* x = nullptr;
  REQUIRE(sk_element_parse(t, "[[-2,[1,1]],[0,[3]]]", 32, &x) == SK_OK);
  long long v = 0;
  CHECK(sk_element_valuation(x, &v) == SK_OK);
  CHECK(v == -2);
  sk_element* s = nullptr;
  REQUIRE(sk_element_sr(x, &s) == SK_OK);
  char* js = nullptr;
  REQUIRE(sk_element_to_json(s, &js) == SK_OK);
  CHECK(std::string(js) == "[[-2,[1,1]]]");
  sk_string_free(js);
  int minimal = -1;
  CHECK(sk_element_is_minimal(x, &minimal) == SK_OK);
  CHECK(minimal == 1);
  sk_element* bad = nullptr;
  CHECK(sk_element_parse(t, "[[0,[9]]]", 32, &bad) == SK_ERR_SCHEMA);
  CHECK(bad == nullptr);
  CHECK(sk_element_parse(nullptr, "[]", 32, &bad) == SK_ERR_SCHEMA);
  sk_element_destroy(s);
  sk_element_destroy(x);
  sk_tower_destroy(t);
}

TEST_CASE("schemas") {
  for (int i = 0; i < sk_command_count(); ++i) {
    char* out = nullptr;
    REQUIRE(sk_command_schema(sk_command_name(i), &out) == SK_OK);
    Json j = Json::parse(out);
    CHECK(j["type"] == "object");
    CHECK(j.contains("definitions"));
    sk_string_free(out);
  }
  char* out = nullptr;
  CHECK(sk_command_schema("nope", &out) == SK_ERR_SCHEMA);
}

namespace {

Json random_value(std::mt19937& rng) {
  static const Json pool[] = {Json(nullptr), Json(-1), Json(0), Json(1), Json(2), Json(7), Json(-100), Json(100),
                              Json("1/2"), Json("x"), Json(true), Json::array(), Json::object(),
                              Json::array({Json::array({0, Json::array({1})})}), Json{{"ref", "nope"}},
                              Json{{"inv", Json::array()}}, Json{{"level", 9}, {"digits", Json::array()}}};
  return pool[rng() % std::size(pool)];
}

// replaces, deletes or wraps one random node
void mutate(Json& j, std::mt19937& rng) {
  Json* node = &j;
  for (int depth = 0; depth < 6; ++depth) {
    if ((!node->is_object() && !node->is_array()) || node->empty() || rng() % 3 == 0) break;
    auto it = node->begin();
    std::advance(it, static_cast<long>(rng() % node->size()));
    if (rng() % 4 == 0) {
      if (node->is_object()) node->erase(it.key());
      else node->erase(static_cast<std::size_t>(std::distance(node->begin(), it)));
      return;
    }
    node = &*it;
  }
  switch (rng() % 3) {
    case 0: *node = random_value(rng); break;
    case 1: *node = Json::array({*node}); break;
    default: *node = Json{{"add", Json::array({*node, random_value(rng)})}}; break;
  }
}

}  // namespace

TEST_CASE("malformed inputs give structured errors") {
  const std::pair<const char*, std::string> seeds[] = {
      {"expand", "{" + kRam2 + R"(,"c":)" + kBeta + "}"},
      {"sr", "{" + kRam2 + R"(,"c":)" + kBeta + "}"},
      {"minimal", "{" + kRam2 + R"(,"c":)" + kBeta + R"(,"base":[])" + "}"},
      {"factorize", "{" + kRam2 + R"(,"beta":)" + kBeta + "}"},
      {"embeddings", "{" + kRam2 + R"(,"c":[[1,[1]]]})"},
      {"generic", "{" + kRam2 + R"(,"c":[[-1,[1]]],"e_prime":[[[1,[1]]]],"e":[]})"},
      {"stratum2yu", "{" + kRam2 + R"(,"beta":)" + kBeta + "}"},
      {"groups", "{" + kRam2 + R"(,"r":1,"beta":)" + kBeta + "}"},
      {"indices", "{" + kRam2 + R"(,"t":1,"beta":)" + kBeta + "}"},
  };
  Session s;
  std::string yu_doc = Json::parse(run(s.s, "stratum2yu", seeds[6].second).out)["yu"].dump();
  std::string y2s = "{" + kRam2 + R"(,"yu":)" + yu_doc + "}";
  std::mt19937 rng(2024);
  int errors = 0;
  for (int k = 0; k < 3000; ++k) {
    bool use_yu = k % 10 == 9;
    const char* cmd = use_yu ? "yu2stratum" : seeds[k % 9].first;
    Json doc = Json::parse(use_yu ? y2s : seeds[k % 9].second);
    int rounds = 1 + static_cast<int>(rng() % 3);
    for (int r = 0; r < rounds; ++r) mutate(doc, rng);
    Run out = run(s.s, cmd, doc.dump());
    REQUIRE(out.rc >= SK_OK);
    REQUIRE(out.rc <= SK_ERR_PRECISION);
    Json j = Json::parse(out.out, nullptr, false);
    REQUIRE_FALSE(j.is_discarded());
    CHECK(j["schema"] == "strata-kit/v1");
    if (out.rc != SK_OK) {
      ++errors;
      CHECK(j["error"]["clause"].is_string());
      CHECK(j["error"]["location"].is_string());
      std::string clause = j["error"]["clause"].get<std::string>();
      CHECK_MESSAGE(clause.rfind("internal", 0) != 0, clause);
      CHECK_MESSAGE(clause != "json_error", j["error"]["location"].get<std::string>());
    }
  }
  CHECK(errors > 1000);
}
