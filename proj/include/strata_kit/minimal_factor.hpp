#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata_kit/tame_tower.hpp"

namespace sk {

struct MinimalityReport {
  TameElement element;
  Subfield base;
  bool crit1_classical = false;
  bool crit2_sr_generates = false;
  bool crit3_embedding_ord = false;
  bool minimal = false;
  int witness_first = -1;   // embedding pair violating criterion 3
  int witness_second = -1;
};

// The three criteria, each on its own code path.
bool minimal_classical(const TameElement& c, const Subfield& base);
bool minimal_sr_generates(const TameElement& c, const Subfield& base);
bool minimal_embedding_ord(const TameElement& c, const Subfield& base, int* wa = nullptr, int* wb = nullptr);

// Throws on disagreement between the criteria.
MinimalityReport is_minimal(const TameElement& c, const Subfield& base);
MinimalityReport is_minimal(const TameElement& c);

struct Chunk {
  TameElement c;
  int field_degree = 1;  // [E_i : F]
  Rational ord;
};

// beta = sum c_i, c_0 finest, c_s leading.
struct Factorization {
  TameElement beta;
  std::vector<Chunk> chunks;
  int s = 0;
  bool degenerate = false;  // beta in the base
};

Factorization howe_factorize(const TameElement& beta);

struct FactorizationCheck {
  bool valid = true;
  std::string clause;
  int index = -1;
};

FactorizationCheck check_factorization(const Factorization& fac);

// beta_i = sum_{j >= i} c_j
TameElement tail_sum(const Factorization& fac, int i);

// max valuation of sigma(x) - sigma'(x) over embedding pairs that differ on x
std::optional<long long> embedding_jump(const TameElement& x);

struct GenericPair {
  int first = 0;
  int second = 0;
  std::optional<Rational> ord;  // empty when the images agree
};

struct GenericityReport {
  TameElement c;
  Rational depth;
  bool verdict = false;
  bool minimal_verdict = false;
  std::vector<GenericPair> table;
};

GenericityReport is_generic(const TameElement& c, const Subfield& e_prime, const Subfield& e);

}  // namespace sk
