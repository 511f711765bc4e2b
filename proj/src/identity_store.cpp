#include "fuzztherest/identity_store.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <nlohmann/json.hpp>

namespace fuzztherest {

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

// Returns the resource prefix of an identifier key, or nullopt when the key
// is not identifier-like. "" means the bare `id` key.
std::optional<std::string> identifier_prefix(std::string_view key) {
  const auto lower = lowercase(key);
  if (!ends_with(lower, "id")) return std::nullopt;
  std::string prefix = lower.substr(0, lower.size() - 2);
  while (!prefix.empty() && (prefix.back() == '_' || prefix.back() == '-')) prefix.pop_back();
  return prefix;
}

}  // namespace

std::string singularize(std::string_view word) {
  auto w = lowercase(word);
  if (w.size() > 3 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (ends_with(w, "ses")) return w.substr(0, w.size() - 1);
  if (ends_with(w, "ss")) return w;
  if (w.size() > 1 && w.back() == 's') w.pop_back();
  return w;
}

std::string pluralize(std::string_view word) {
  auto w = lowercase(word);
  if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

std::string primary_resource(const ApiFunction& function) {
  std::string_view path = function.path_template;
  std::string last;
  std::size_t pos = 0;
  while (pos < path.size()) {
    const auto next = path.find('/', pos);
    const auto segment = path.substr(pos, next == std::string_view::npos ? path.npos : next - pos);
    if (!segment.empty() && segment.front() != '{') last = std::string(segment);
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return singularize(last);
}

std::string slot_resource(const ApiFunction& function, const SlotRef& slot) {
  const auto prefix = identifier_prefix(slot.name);
  if (!prefix) return {};
  if (!prefix->empty()) return singularize(*prefix);
  if (!slot.owner.empty()) return singularize(slot.owner);
  return primary_resource(function);
}

std::vector<std::pair<std::string, FieldValue>> harvest_identifiers(const ApiFunction& function,
                                                                    std::string_view response_body) {
  std::vector<std::pair<std::string, FieldValue>> out;
  const auto doc = nlohmann::ordered_json::parse(response_body, nullptr, false);
  if (doc.is_discarded()) return out;

  auto scan = [&](const nlohmann::ordered_json& object) {
    if (!object.is_object()) return;
    for (auto it = object.begin(); it != object.end(); ++it) {
      const auto prefix = identifier_prefix(it.key());
      if (!prefix) continue;
      std::optional<FieldValue> value;
      if (it->is_number_integer()) {
        if (it->is_number_unsigned() &&
            it->get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
          continue;
        }
        value = FieldValue::integer(it->get<std::int64_t>());
      } else if (it->is_string()) {
        value = FieldValue::string(it->get<std::string>());
      }
      if (!value) continue;
      auto resource = prefix->empty() ? primary_resource(function) : singularize(*prefix);
      out.emplace_back(std::move(resource), std::move(*value));
    }
  };
  if (doc.is_array()) {
    for (const auto& element : doc) scan(element);
  } else {
    scan(doc);
  }
  return out;
}

bool IdentifierStore::add(std::string_view resource, const FieldValue& id) {
  const auto key = singularize(resource);
  std::unique_lock lock(mutex_);
  auto& seen = seen_[key];
  if (!seen.insert(id).second) return false;
  entries_[key].push_back(id);
  return true;
}

std::vector<std::pair<std::string, FieldValue>> IdentifierStore::harvest(
    const ApiFunction& function, std::string_view response_body) {
  auto found = harvest_identifiers(function, response_body);
  for (const auto& [resource, id] : found) add(resource, id);
  return found;
}

std::optional<FieldValue> IdentifierStore::lookup(std::string_view resource_name, Rng& rng) const {
  const auto key = singularize(resource_name);
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end() || it->second.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, it->second.size() - 1);
  return it->second[pick(rng)];
}

std::vector<FieldValue> IdentifierStore::entries(std::string_view resource_name) const {
  const auto key = singularize(resource_name);
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  return it == entries_.end() ? std::vector<FieldValue>{} : it->second;
}

std::map<std::string, std::vector<FieldValue>> IdentifierStore::snapshot() const {
  std::shared_lock lock(mutex_);
  return {entries_.begin(), entries_.end()};
}

std::size_t IdentifierStore::size() const {
  std::shared_lock lock(mutex_);
  std::size_t total = 0;
  for (const auto& [_, ids] : entries_) total += ids.size();
  return total;
}

}  // namespace fuzztherest
