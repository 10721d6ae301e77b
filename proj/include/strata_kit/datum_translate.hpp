#pragma once

#include <string>
#include <vector>

#include "strata_kit/stratum_calc.hpp"

namespace sk {

YuSkeleton secherre_to_yu(const StratumSkeleton& st);
StratumSkeleton yu_to_secherre(const YuSkeleton& yu);

// throws Error naming the broken invariant
void validate_yu(const YuSkeleton& yu);

struct RoundtripReport {
  bool equal = true;
  std::vector<std::string> mismatches;
};

RoundtripReport roundtrip_check(const StratumSkeleton& st);
RoundtripReport roundtrip_check(const YuSkeleton& yu);

// realizers up to 1 + p units
bool unit_equivalent(const TameElement& a, const TameElement& b);

struct CharacterIndexEntry {
  int level = 0;
  long long t_i = 0;
  FiltDepth window;  // depth of H^{t_i + 1}
};

struct CharacterIndexTable {
  long long t = 0;
  std::vector<CharacterIndexEntry> entries;
};

CharacterIndexTable factchar_indices(const Factorization& fac, const OrderSkeleton& o, long long t);

}  // namespace sk
