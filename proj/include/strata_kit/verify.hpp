#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace sk {

struct SuiteResult {
  std::string name;
  long long cases = 0;
  long long failures = 0;
  double seconds = 0;
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::string> failure_detail;  // first few only
  bool ok() const { return failures == 0 && cases > 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  long long prec = 64;
  std::ostream* dump = nullptr;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

}  // namespace sk
