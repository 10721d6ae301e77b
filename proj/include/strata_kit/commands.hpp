#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "strata_kit/serialize.hpp"

namespace sk {

enum ExitCode { kExitOk = 0, kExitSchema = 1, kExitDomain = 2, kExitPrecision = 3 };

struct SessionOptions {
  long long prec = kDefaultPrec;
  std::uint64_t seed = 0;
};

// Options plus elements bound by name through "let".
class Session {
 public:
  explicit Session(SessionOptions opts = {});
  SessionOptions& options() { return opts_; }

  // runs one command; out receives the result or {"error": ...}
  int run(const std::string& command, const Json& input, Json* out, std::ostream* dump = nullptr);

 private:
  SessionOptions opts_;
  std::map<std::string, Tower> towers_;  // one tower object per spec
  std::map<std::string, std::map<std::string, TameElement>> names_;  // keyed by tower text
};

const std::vector<std::string>& command_names();
// JSON schema of a command input
Json command_schema(const std::string& command);

// precision from STRATA_KIT_PREC, or fallback
long long env_precision(long long fallback);

}  // namespace sk
