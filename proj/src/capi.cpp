#include "strata_kit/strata_kit.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "strata_kit/commands.hpp"
#include "strata_kit/errors.hpp"

struct sk_session {
  sk::Session session;
  bool dump = false;
  std::ostringstream dump_text;
};

struct sk_tower {
  sk::Tower tower;
};

struct sk_element {
  sk::TameElement x;
};

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// maps exceptions to status codes
template <class F>
int guarded(F&& fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const sk::PrecisionError& e) {
    return fail(SK_ERR_PRECISION, e.what());
  } catch (const sk::SchemaError& e) {
    return fail(SK_ERR_SCHEMA, e.what());
  } catch (const sk::Error& e) {
    return fail(SK_ERR_DOMAIN, e.what());
  } catch (const sk::Json::exception& e) {
    return fail(SK_ERR_SCHEMA, e.what());
  } catch (const std::exception& e) {
    return fail(SK_ERR_DOMAIN, e.what());
  }
}

}  // namespace

extern "C" {

const char* sk_version(void) { return "1.0.0"; }

const char* sk_status_name(int status) {
  switch (status) {
    case SK_OK: return "ok";
    case SK_ERR_SCHEMA: return "schema";
    case SK_ERR_DOMAIN: return "domain";
    case SK_ERR_PRECISION: return "precision";
    default: return "unknown";
  }
}

const char* sk_last_error(void) { return g_last_error.c_str(); }

void sk_string_free(char* s) { std::free(s); }

int sk_session_create(long long prec, unsigned long long seed, sk_session** out) {
  if (!out) return fail(SK_ERR_SCHEMA, "null output");
  if (prec < 8) return fail(SK_ERR_SCHEMA, "precision below 8");
  return guarded([&] {
    sk::SessionOptions o;
    o.prec = prec;
    o.seed = seed;
    *out = new sk_session{sk::Session(o), false, {}};
    return SK_OK;
  });
}

void sk_session_destroy(sk_session* s) { delete s; }

int sk_session_run(sk_session* s, const char* command, const char* input_json, char** output) {
  if (!s || !command || !input_json || !output) return fail(SK_ERR_SCHEMA, "null argument");
  *output = nullptr;
  sk::Json in = sk::Json::parse(input_json, nullptr, false);
  sk::Json out;
  int code;
  if (in.is_discarded()) {
    out = sk::Json{{"schema", sk::kSchemaTag}, {"error", {{"clause", "invalid_json"}, {"location", "input"}}}};
    code = SK_ERR_SCHEMA;
  } else {
    code = s->session.run(command, in, &out, s->dump ? &s->dump_text : nullptr);
  }
  *output = copy_out(sk::dump_canonical(out));
  if (code != SK_OK) g_last_error = out["error"].dump();
  return code;
}

int sk_session_set_dump(sk_session* s, int enabled) {
  if (!s) return fail(SK_ERR_SCHEMA, "null session");
  s->dump = enabled != 0;
  return SK_OK;
}

int sk_session_take_dump(sk_session* s, char** output) {
  if (!s || !output) return fail(SK_ERR_SCHEMA, "null argument");
  *output = copy_out(s->dump_text.str());
  s->dump_text.str("");
  return SK_OK;
}

int sk_command_count(void) { return static_cast<int>(sk::command_names().size()); }

const char* sk_command_name(int index) {
  const auto& n = sk::command_names();
  if (index < 0 || index >= static_cast<int>(n.size())) return nullptr;
  return n[static_cast<std::size_t>(index)].c_str();
}

int sk_command_schema(const char* command, char** output) {
  if (!command || !output) return fail(SK_ERR_SCHEMA, "null argument");
  return guarded([&] {
    *output = copy_out(sk::command_schema(command).dump(2));
    return SK_OK;
  });
}

int sk_tower_create(const char* spec_json, sk_tower** out) {
  if (!spec_json || !out) return fail(SK_ERR_SCHEMA, "null argument");
  return guarded([&] {
    sk::TowerSpec spec = sk::tower_from_json(sk::Json::parse(spec_json));
    *out = new sk_tower{sk::build_tower(spec)};
    return SK_OK;
  });
}

void sk_tower_destroy(sk_tower* t) { delete t; }

int sk_tower_degree(const sk_tower* t, int* degree) {
  if (!t || !degree) return fail(SK_ERR_SCHEMA, "null argument");
  *degree = t->tower.top()->degree();
  return SK_OK;
}

int sk_tower_ramification(const sk_tower* t, int* e) {
  if (!t || !e) return fail(SK_ERR_SCHEMA, "null argument");
  *e = t->tower.top()->e_abs();
  return SK_OK;
}

int sk_element_parse(const sk_tower* t, const char* json, long long prec, sk_element** out) {
  if (!t || !json || !out) return fail(SK_ERR_SCHEMA, "null argument");
  if (prec < 8) return fail(SK_ERR_SCHEMA, "precision below 8");
  return guarded([&] {
    sk::ParseContext ctx;
    ctx.tower = t->tower;
    ctx.prec = prec;
    *out = new sk_element{sk::element_from_json(sk::Json::parse(json), ctx, "element")};
    return SK_OK;
  });
}

void sk_element_destroy(sk_element* x) { delete x; }

int sk_element_valuation(const sk_element* x, long long* v) {
  if (!x || !v) return fail(SK_ERR_SCHEMA, "null argument");
  if (x->x.is_zero()) return fail(SK_ERR_PRECISION, "zero to working precision");
  *v = x->x.val();
  return SK_OK;
}

int sk_element_sr(const sk_element* x, sk_element** out) {
  if (!x || !out) return fail(SK_ERR_SCHEMA, "null argument");
  return guarded([&] {
    if (x->x.is_zero()) throw sk::Error("sr_of_zero", "sk_element_sr");
    *out = new sk_element{sk::sr(x->x)};
    return SK_OK;
  });
}

int sk_element_is_minimal(const sk_element* x, int* minimal) {
  if (!x || !minimal) return fail(SK_ERR_SCHEMA, "null argument");
  return guarded([&] {
    *minimal = sk::is_minimal(x->x).minimal ? 1 : 0;
    return SK_OK;
  });
}

int sk_element_to_json(const sk_element* x, char** output) {
  if (!x || !output) return fail(SK_ERR_SCHEMA, "null argument");
  return guarded([&] {
    *output = copy_out(sk::to_json(x->x).dump());
    return SK_OK;
  });
}

}  // extern "C"
