#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "strata_kit/datum_translate.hpp"
#include "strata_kit/fuzz.hpp"

namespace sk {

using Json = nlohmann::json;

inline constexpr const char* kSchemaTag = "strata-kit/v1";

// Parsing context: the tower, the working precision and named elements.
struct ParseContext {
  Tower tower;
  TowerSpec spec;
  long long prec = kDefaultPrec;
  const std::map<std::string, TameElement>* names = nullptr;
};

Json to_json(const Rational& r);
Json to_json(const FiltDepth& d);
Json to_json(const TowerSpec& s);
// [[v, coords], ...] with coords over F_p, ascending v
Json to_json(const TameElement& x);
Json to_json(const Subfield& s);
Json to_json(const OrderSkeleton& o);
Json to_json(const Factorization& f);
Json to_json(const GroupPresentation& g);
Json to_json(const StratumSkeleton& st);
Json to_json(const YuSkeleton& yu);
Json to_json(const FuzzInstance& inst);
Json to_json(const Embedding& e);

Rational rational_from_json(const Json& j, const std::string& where);
FiltDepth depth_from_json(const Json& j, const std::string& where);
TowerSpec tower_from_json(const Json& j);
// digit list or an expression {add|sub|mul: [..]}, {inv: x}, {level: k, digits: [..]}, {ref: name}
TameElement element_from_json(const Json& j, const ParseContext& ctx, const std::string& where);
Subfield subfield_from_json(const Json& j, const ParseContext& ctx, const std::string& where);
OrderSkeleton order_from_json(const Json& j, const ParseContext& ctx, const std::string& where);
YuSkeleton yu_from_json(const Json& j, const ParseContext& ctx);

// canonical text: sorted keys, no insignificant whitespace beyond indent 2
std::string dump_canonical(const Json& j);

}  // namespace sk
