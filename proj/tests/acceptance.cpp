#include <cstdio>
#include <string>

#include "strata_kit/errors.hpp"
#include "strata_kit/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  long long min_cases;
  double max_seconds;  // 0: no limit
};

// pinned limits
constexpr Criterion kCriteria[] = {
    {1, "sr", "standard representatives (1),(2),(4)", 10000, 60.0},
    {2, "minimal", "minimality criteria agree, perturbations preserve", 10000, 0},
    {3, "factorize", "factorization soundness and mutation rejection", 1001, 0},
    {4, "oracle", "valuation and k0 against the matrix oracle", 100, 120.0},
    {5, "filtration", "filtration dictionary and centralizer intersections", 156, 0},
    {6, "presentations", "H1=K+, J=K0, Jhat=K on fuzzed strata", 600, 0},
    {7, "roundtrip", "round trip with genericity", 403, 0},
    {8, "index", "(J1:H1) equals the Yu index product", 50, 0},
    {9, "psi", "psi_c equality criterion", 300, 0},
};

}  // namespace

int main() {
  sk::VerifyOptions opts;
  opts.seed = 0;
  opts.prec = 64;
  int failed = 0;
  for (const Criterion& c : kCriteria) {
    sk::SuiteResult r;
    std::string note;
    try {
      r = sk::run_suite(c.suite, opts);
    } catch (const sk::Error& e) {
      r.failures = 1;
      note = e.what();
    }
    bool ok = r.ok() && r.cases >= c.min_cases && (c.max_seconds == 0 || r.seconds < c.max_seconds);
    if (!ok) ++failed;
    std::printf("criterion %d [PRIMARY] %s: %s (suite %s, %lld cases, %lld failures, %.1f s", c.id, c.title,
                ok ? "PASS" : "FAIL", c.suite, r.cases, r.failures, r.seconds);
    if (c.max_seconds > 0) std::printf(", limit %.0f s", c.max_seconds);
    std::printf(", min cases %lld)\n", c.min_cases);
    if (!note.empty()) std::printf("  error: %s\n", note.c_str());
    for (const auto& d : r.failure_detail) std::printf("  %s\n", d.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(kCriteria)) - failed, std::size(kCriteria));
  return failed == 0 ? 0 : 1;
}
