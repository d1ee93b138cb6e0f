#pragma once

#include <json.hpp>

#include "superloop/checks.hpp"

namespace superloop {

using Json = nlohmann::json;

/// Scalars travel as strings ("3/2") to stay exact; plain JSON integers are
/// also accepted on input.
Rat rat_from_json(const Json& j);
Json rat_to_json(const Rat& x);

/// {"type":"sl","m":2,"n":1} or {"type":"C","m":3}.
std::shared_ptr<const SuperAlgebra> algebra_from_json(const Json& desc);
Json algebra_to_json(const SuperAlgebra& g);

std::vector<Rat> weight_from_json(const Json& j, const SuperAlgebra& g);
Json weight_to_json(const std::vector<Rat>& epsdelta);

/// {"points":["2","-1"],"mults":[1,2]}.
IdealSpec ideal_from_json(const Json& j);
Json ideal_to_json(const IdealSpec& ideal);

struct ParsedSpec {
  TauModuleSpec spec;
  std::string kind;  // "evaluation" | "tau" | "loop"
};

/// Full spec file; requires the schema version field "v1". Evaluation and
/// loop specs may omit tau_window (derived from lambda(z) at the points).
ParsedSpec spec_from_json(const Json& j);
Json spec_to_json(const TauModuleSpec& spec, const std::string& kind);

Json algebra_info_json(const SuperAlgebra& g);

/// Builds the module and dumps dimensions, flags, certificates, weights and
/// the recovered (round-trip) spec.
Json module_build_json(const ParsedSpec& ps, bool with_weights,
                       std::optional<std::pair<long, long>> window);

Json iso_json(const TauModuleSpec& a, const TauModuleSpec& b);

Json report_to_json(const CheckReport& r);

}  // namespace superloop
