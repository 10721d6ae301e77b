#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strata_kit/minimal_factor.hpp"
#include "strata_kit/stratum_calc.hpp"

namespace sk {

// mt19937_64 with bounded draws by rejection
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n);
  long long range(long long lo, long long hi) { return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 eng_;
};

struct FuzzCaps {
  int max_degree = 8;
  int max_digits = 6;
  int max_jumps = 3;
  int tower_pool = 16;
};

struct TowerSpec {
  int q = 3;
  struct Step {
    int f = 1;
    int e = 1;
    std::uint32_t twist = 1;
  };
  std::vector<Step> steps;
};

Tower build_tower(const TowerSpec& spec);

struct FuzzInstance {
  int index = 0;
  TowerSpec spec;
  Tower tower;
  TameElement beta;
  // ambient order: m = [E:F], e_A = e(E/F), pure over F[beta]
  OrderSkeleton order;
};

std::vector<TowerSpec> fuzz_towers(std::uint64_t seed, const FuzzCaps& caps = {});
std::vector<FuzzInstance> fuzz_corpus(std::uint64_t seed, int count, const FuzzCaps& caps = {});

// order with B maximal needs e(E/F[beta]) = 1
OrderSkeleton ambient_order(const TameElement& beta);

struct Mutation {
  std::string name;
  std::string expected_clause;
  Factorization fac;
};

inline constexpr int kMutationClasses = 10;

// the applicable mutation classes for fac
std::vector<Mutation> mutate_factorization(const Factorization& fac);

}  // namespace sk
