#include "fuzztherest/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <nlohmann/json.hpp>

#include "fuzztherest/errors.hpp"

namespace fuzztherest {

using Json = nlohmann::json;

namespace {

void reject_unknown_keys(const Json& object, std::initializer_list<std::string_view> allowed,
                         const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ParseError(where + ": unknown key '" + it.key() + "'");
    }
  }
}

bool is_absolute_http_url(const std::string& url) {
  for (std::string_view scheme : {"http://", "https://"}) {
    if (url.rfind(scheme, 0) == 0 && url.size() > scheme.size() && url[scheme.size()] != '/') {
      return true;
    }
  }
  return false;
}

std::string scalar_text(const Json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number() || value.is_boolean()) return value.dump();
  throw ParseError(where + ": fixed values must be scalars");
}

}  // namespace

ScenarioSet parse_scenarios(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("scenarios file: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenarios file: root must be an object");
  reject_unknown_keys(doc, {"base_url", "scenarios"}, "scenarios file");

  ScenarioSet set;
  if (!doc.contains("base_url") || !doc["base_url"].is_string()) {
    throw ParseError("scenarios file: missing string 'base_url'");
  }
  set.base_url = doc["base_url"].get<std::string>();
  if (!is_absolute_http_url(set.base_url)) {
    throw ParseError("scenarios file: base_url '" + set.base_url + "' is not an absolute HTTP(S) URL");
  }
  while (!set.base_url.empty() && set.base_url.back() == '/') set.base_url.pop_back();

  if (!doc.contains("scenarios") || !doc["scenarios"].is_array()) {
    throw ParseError("scenarios file: missing array 'scenarios'");
  }
  const auto& list = doc["scenarios"];
  if (list.empty()) throw EmptyScenario("scenarios file: no scenarios declared");

  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "scenarios[" + std::to_string(i) + "]";
    const auto& entry = list[i];
    if (!entry.is_object()) throw ParseError(where + ": must be an object");
    reject_unknown_keys(entry, {"name", "steps"}, where);
    if (!entry.contains("name") || !entry["name"].is_string()) {
      throw ParseError(where + ": missing string 'name'");
    }
    Scenario scenario;
    scenario.name = entry["name"].get<std::string>();
    if (!entry.contains("steps") || !entry["steps"].is_array()) {
      throw ParseError(where + ": missing array 'steps'");
    }
    if (entry["steps"].empty()) throw EmptyScenario(where + ": scenario '" + scenario.name + "' has no steps");
    for (std::size_t j = 0; j < entry["steps"].size(); ++j) {
      const auto step_where = where + ".steps[" + std::to_string(j) + "]";
      const auto& raw = entry["steps"][j];
      ScenarioStep step;
      if (raw.is_string()) {
        step.operation_id = raw.get<std::string>();
      } else if (raw.is_object()) {
        reject_unknown_keys(raw, {"operation_id", "fixed"}, step_where);
        if (!raw.contains("operation_id") || !raw["operation_id"].is_string()) {
          throw ParseError(step_where + ": missing string 'operation_id'");
        }
        step.operation_id = raw["operation_id"].get<std::string>();
        if (raw.contains("fixed")) {
          if (!raw["fixed"].is_object()) throw ParseError(step_where + ": 'fixed' must be an object");
          for (auto it = raw["fixed"].begin(); it != raw["fixed"].end(); ++it) {
            step.fixed[it.key()] = scalar_text(*it, step_where);
          }
        }
      } else {
        throw ParseError(step_where + ": must be an operation id or an object");
      }
      if (step.operation_id.empty()) throw ParseError(step_where + ": empty operation id");
      scenario.steps.push_back(std::move(step));
    }
    set.scenarios.push_back(std::move(scenario));
  }
  return set;
}

std::vector<ApiFunction> resolve_sequence(const Scenario& scenario,
                                          const std::vector<ApiFunction>& functions) {
  std::vector<ApiFunction> out;
  out.reserve(scenario.steps.size());
  for (const auto& step : scenario.steps) {
    auto it = std::find_if(functions.begin(), functions.end(), [&](const ApiFunction& f) {
      return f.operation_id == step.operation_id;
    });
    if (it == functions.end()) throw UnknownOperation(step.operation_id);
    for (const auto& [slot, value] : step.fixed) {
      if (find_leaf(*it, slot) == nullptr) {
        throw ParseError("scenario '" + scenario.name + "': operation '" + step.operation_id +
                         "' has no leaf slot '" + slot + "'");
      }
    }
    out.push_back(*it);
  }
  return out;
}

void apply_fixed_value(SchemaNode& leaf, const std::string& text) {
  auto fail = [&] { throw ParseError("cannot convert fixed value '" + text + "' to " +
                                     std::string(to_string(leaf.type))); };
  switch (leaf.type) {
    case Datatype::Integer: {
      std::int64_t v = 0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail();
      leaf.sample = FieldValue::integer(v);
      return;
    }
    case Datatype::Float: {
      double v = 0;
      auto res = std::from_chars(text.data(), text.data() + text.size(), v);
      if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) fail();
      leaf.sample = FieldValue::floating(v);
      return;
    }
    case Datatype::Boolean:
      if (text != "true" && text != "false") fail();
      leaf.sample = FieldValue::boolean(text == "true");
      return;
    case Datatype::String:
      leaf.sample = FieldValue::string(text);
      return;
    case Datatype::Byte:
      leaf.sample = FieldValue::bytes(Bytes(text.begin(), text.end()));
      return;
    default:
      fail();
  }
}

}  // namespace fuzztherest
