#pragma once

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzztherest/random.hpp"
#include "fuzztherest/schema.hpp"

namespace fuzztherest {

/// Suffix-rule inflection for REST resource nouns; output is lowercase.
std::string singularize(std::string_view word);
std::string pluralize(std::string_view word);

/// Resource a function operates on: its last non-parameter path segment,
/// singularized (`/store/order/{orderId}` -> "order").
std::string primary_resource(const ApiFunction& function);

/// Resource an identifier-like slot refers to (`petId` -> "pet", `id` ->
/// the owning object or the function's resource). Empty for non-identifier
/// slots.
std::string slot_resource(const ApiFunction& function, const SlotRef& slot);

/// Extracts (resource, identifier) pairs from a JSON response body. Keys
/// equal to `id` or ending in `id` (case-insensitive) qualify; integer and
/// string values are kept. Non-JSON bodies yield nothing.
std::vector<std::pair<std::string, FieldValue>> harvest_identifiers(const ApiFunction& function,
                                                                    std::string_view response_body);

/// Identifiers harvested from creational responses, keyed by singular
/// lowercase resource name. Readers may run concurrently; writers are
/// serialized.
class IdentifierStore {
 public:
  /// Returns true when the identifier was not stored yet.
  bool add(std::string_view resource, const FieldValue& id);

  /// Harvests a response body and stores the results; returns what was harvested.
  std::vector<std::pair<std::string, FieldValue>> harvest(const ApiFunction& function,
                                                          std::string_view response_body);

  /// A uniformly chosen identifier for the (singularized) resource name.
  std::optional<FieldValue> lookup(std::string_view resource_name, Rng& rng) const;

  std::vector<FieldValue> entries(std::string_view resource_name) const;
  std::map<std::string, std::vector<FieldValue>> snapshot() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::vector<FieldValue>, std::less<>> entries_;
  std::map<std::string, std::set<FieldValue>, std::less<>> seen_;
};

}  // namespace fuzztherest
