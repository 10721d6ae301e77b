#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "strata_kit/strata_kit.h"

namespace {

using Json = nlohmann::json;

constexpr long long kDefaultPrec = 64;

struct Owned {
  char* p = nullptr;
  ~Owned() { sk_string_free(p); }
};

int emit_error(const std::string& clause, const std::string& location, int code) {
  Json e{{"schema", "strata-kit/v1"}, {"error", {{"clause", clause}, {"location", location}}}};
  std::cout << e.dump() << "\n";
  return code;
}

bool read_input(const std::string& path, const std::string& inline_json, std::string* out) {
  if (!inline_json.empty()) {
    *out = inline_json;
    return true;
  }
  if (path.empty() || path == "-") {
    *out = std::string(std::istreambuf_iterator<char>(std::cin), {});
    return true;
  }
  std::ifstream f(path);
  if (!f) return false;
  *out = std::string(std::istreambuf_iterator<char>(f), {});
  return true;
}

const char* describe(const std::string& name) {
  static const std::vector<std::pair<std::string, const char*>> d = {
      {"expand", "evaluate an element expression to digits"},
      {"sr", "standard representative of an element"},
      {"minimal", "minimality test with per-criterion detail"},
      {"factorize", "Howe factorization of a tame element"},
      {"embeddings", "embeddings of the tower into its splitting field"},
      {"generic", "genericity of an element relative to a subfield pair"},
      {"stratum2yu", "Yu datum attached to a simple stratum"},
      {"yu2stratum", "simple stratum attached to a Yu datum"},
      {"groups", "normal forms of the groups J, J1, H1"},
      {"indices", "index of H1 in J1 and the Yu product"},
      {"verify", "run self-check suites"},
      {"fuzz", "generate random valid instances"},
  };
  for (const auto& [k, v] : d)
    if (k == name) return v;
  return "";
}

void print_table(const std::string& result) {
  Json j = Json::parse(result, nullptr, false);
  if (j.is_discarded() || !j.contains("suites")) return;
  for (const auto& s : j["suites"]) {
    std::fprintf(stderr, "%-14s %s  cases %-8lld failures %lld\n", s["name"].get<std::string>().c_str(),
                 s["ok"].get<bool>() ? "PASS" : "FAIL", s["cases"].get<long long>(), s["failures"].get<long long>());
    for (const auto& [k, v] : s["counts"].items()) std::fprintf(stderr, "    %-28s %lld\n", k.c_str(), v.get<long long>());
    for (const auto& d : s["failure_detail"]) std::fprintf(stderr, "    ! %s\n", d.get<std::string>().c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata-kit: tame strata and Yu data over local function fields"};
  app.require_subcommand(1);
  app.fallthrough();

  long long prec = 0;
  unsigned long long seed = 0;
  bool show_schema = false;
  bool dump = false;
  app.add_option("--prec", prec, "working precision in uniformizer digits (>= 8)");
  app.add_option("--seed", seed, "seed for fuzzing and verification");
  app.add_flag("--schema", show_schema, "print the input schema of the subcommand");
  app.add_flag("--dump", dump, "write canonical lattice forms to stderr during verify");

  std::string input_path, inline_json;
  std::vector<std::string> suites;
  long long count = 10;
  std::vector<CLI::App*> subs;
  for (int i = 0; i < sk_command_count(); ++i) {
    std::string name = sk_command_name(i);
    CLI::App* sub = app.add_subcommand(name, describe(name));
    if (name == "verify") {
      sub->add_option("--suite", suites, "suite name, repeatable")
          ->check(CLI::IsMember({"sr", "minimal", "factorize", "filtration", "presentations", "roundtrip", "oracle", "index", "psi"}));
    } else if (name == "fuzz") {
      sub->add_option("--count", count, "number of instances");
    } else {
      sub->add_option("input", input_path, "input JSON file, - for stdin");
      sub->add_option("--json", inline_json, "input JSON text");
    }
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  std::string command;
  for (CLI::App* s : subs)
    if (s->parsed()) command = s->get_name();

  if (show_schema) {
    Owned out;
    int rc = sk_command_schema(command.c_str(), &out.p);
    if (rc != SK_OK) return emit_error(sk_last_error(), "schema", rc);
    std::cout << out.p << "\n";
    return 0;
  }

  if (prec == 0) {
    prec = kDefaultPrec;
    if (const char* env = std::getenv("STRATA_KIT_PREC"); env && *env) {
      char* end = nullptr;
      prec = std::strtoll(env, &end, 10);
      if (*end != '\0') return emit_error("bad_precision", "STRATA_KIT_PREC", 1);
    }
  }
  if (prec < 8) return emit_error("precision_out_of_range", "prec", 1);

  sk_session* raw = nullptr;
  if (int rc = sk_session_create(prec, seed, &raw); rc != SK_OK) return emit_error(sk_last_error(), "session", rc);
  std::unique_ptr<sk_session, void (*)(sk_session*)> session(raw, sk_session_destroy);
  sk_session_set_dump(session.get(), dump ? 1 : 0);

  std::string input;
  if (command == "verify") {
    Json in{{"seed", seed}};
    if (!suites.empty()) in["suites"] = suites;
    input = in.dump();
  } else if (command == "fuzz") {
    input = Json{{"seed", seed}, {"count", count}}.dump();
  } else if (!read_input(input_path, inline_json, &input)) {
    return emit_error("unreadable_input", input_path, 1);
  }

  Owned out;
  int rc = sk_session_run(session.get(), command.c_str(), input.c_str(), &out.p);
  std::cout << (out.p ? out.p : "") << "\n";
  if (command == "verify") {
    if (dump) {
      Owned d;
      sk_session_take_dump(session.get(), &d.p);
      if (d.p) std::cerr << d.p;
    }
    if (rc == SK_OK) {
      print_table(out.p ? out.p : "");
      Json j = Json::parse(out.p, nullptr, false);
      if (!j.is_discarded() && j.contains("ok") && !j["ok"].get<bool>()) return 2;
    }
  }
  return rc;
}
