#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fuzztherest/schema.hpp"

namespace fuzztherest {

struct ScenarioStep {
  std::string operation_id;
  /// Slot path -> pinned textual value; pinned slots are never mutated.
  std::map<std::string, std::string> fixed;
};

struct Scenario {
  std::string name;
  std::vector<ScenarioStep> steps;
};

struct ScenarioSet {
  std::string base_url;
  std::vector<Scenario> scenarios;
};

/// Parses the JSON scenarios file:
///
///   { "base_url": "http://host:port",
///     "scenarios": [ { "name": "pet", "steps": ["addPet", {"operation_id": "getPetById",
///                                                            "fixed": {"header.api_key": "k"}}] } ] }
///
/// Throws ParseError (EmptyScenario when no scenario or an empty step list).
ScenarioSet parse_scenarios(std::string_view text);

/// Resolves each step to its ApiFunction, preserving order. Throws
/// UnknownOperation, or ParseError when a pinned slot does not exist.
std::vector<ApiFunction> resolve_sequence(const Scenario& scenario,
                                          const std::vector<ApiFunction>& functions);

/// Writes a pinned textual value into a leaf sample, converting it to the
/// leaf's datatype. Throws ParseError when the text does not convert.
void apply_fixed_value(SchemaNode& leaf, const std::string& text);

}  // namespace fuzztherest
