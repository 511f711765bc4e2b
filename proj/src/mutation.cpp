#include "fuzztherest/mutation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/identity_store.hpp"

namespace fuzztherest {

std::string_view to_string(MutationAction action) noexcept {
  switch (action) {
    case MutationAction::BitFlip: return "bit_flip";
    case MutationAction::ByteShuffle: return "byte_shuffle";
    case MutationAction::ByteInjectDelete: return "byte_inject_delete";
    case MutationAction::ByteSubstitute: return "byte_substitute";
    case MutationAction::Truncate: return "truncate";
    case MutationAction::Dictionary: return "dictionary";
    case MutationAction::Arithmetic: return "arithmetic";
    case MutationAction::RandomGen: return "random_gen";
  }
  return "unknown";
}

const std::vector<MutationAction>& applicable_actions(Datatype type) {
  using A = MutationAction;
  static const std::vector<A> numeric = {A::BitFlip, A::Dictionary, A::Arithmetic, A::RandomGen};
  static const std::vector<A> boolean = {A::Dictionary, A::RandomGen};
  static const std::vector<A> sequence = {A::BitFlip,  A::ByteShuffle, A::ByteInjectDelete,
                                          A::ByteSubstitute, A::Truncate, A::Dictionary,
                                          A::RandomGen};
  switch (type) {
    case Datatype::Integer:
    case Datatype::Float:
      return numeric;
    case Datatype::Boolean:
      return boolean;
    case Datatype::String:
    case Datatype::Byte:
      return sequence;
    default:
      break;
  }
  throw InapplicableAction("no mutation actions for " + std::string(to_string(type)));
}

bool is_applicable(MutationAction action, Datatype type) {
  if (!is_leaf(type)) return false;
  const auto& actions = applicable_actions(type);
  return std::find(actions.begin(), actions.end(), action) != actions.end();
}

namespace {

std::size_t leaf_index(Datatype type) {
  switch (type) {
    case Datatype::Integer: return 0;
    case Datatype::Float: return 1;
    case Datatype::Boolean: return 2;
    case Datatype::String: return 3;
    case Datatype::Byte: return 4;
    default: break;
  }
  throw InapplicableAction("dictionary entries exist only for leaf datatypes");
}

}  // namespace

Dictionary Dictionary::with_defaults() {
  Dictionary d;
  for (std::int64_t v : {std::int64_t{0}, std::int64_t{-1}, std::int64_t{2147483647},
                         std::int64_t{-2147483648LL}, std::numeric_limits<std::int64_t>::max()}) {
    d.add(FieldValue::integer(v));
  }
  for (double v : {0.0, -0.0, std::numeric_limits<double>::quiet_NaN(), 1e308, -1e308}) {
    d.add(FieldValue::floating(v));
  }
  d.add(FieldValue::boolean(true));
  d.add(FieldValue::boolean(false));

  // Surrogate halves are written in generalized UTF-8 (ED A0..BF xx) so the
  // JSON writer can emit them as \uD8xx / \uDCxx escapes.
  const std::vector<std::string> strings = {
      "",
      std::string(4096, 'A'),
      "%s%s%s%n",
      "%x%x%x%x",
      "' OR '1'='1",
      "1; DROP TABLE users--",
      "../../../../etc/passwd",
      "..\\..\\windows\\win.ini",
      "\xED\xB0\x80",             // lone low surrogate U+DC00
      "ab\xED\xB3\xBF" "cd",      // low surrogate U+DCFF with no leading high half
      "\xED\xA0\xBDx",            // high surrogate U+D83D followed by a plain character
      "tail\xED\xA0\x80",         // high surrogate U+D800 at end of string
      "pet\x0Bname",
      "\x0C",
      "field\x1Fsep",
  };
  for (const auto& s : strings) d.add(FieldValue::string(s));

  d.add(FieldValue::bytes({}));
  d.add(FieldValue::bytes(Bytes(16, 0x00)));
  d.add(FieldValue::bytes(Bytes(16, 0xFF)));
  return d;
}

void Dictionary::add(const FieldValue& entry) {
  auto& list = static_[leaf_index(entry.datatype())];
  if (std::find(list.begin(), list.end(), entry) == list.end()) list.push_back(entry);
}

void Dictionary::add_user_entries(std::string_view text) {
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = std::string(text.substr(pos, end - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    pos = end + 1;
    if (line.empty()) continue;
    add(FieldValue::string(line));
    add(FieldValue::bytes(Bytes(line.begin(), line.end())));
    std::int64_t iv = 0;
    auto ires = std::from_chars(line.data(), line.data() + line.size(), iv);
    if (ires.ec == std::errc{} && ires.ptr == line.data() + line.size()) {
      add(FieldValue::integer(iv));
      add(FieldValue::floating(static_cast<double>(iv)));
      continue;
    }
    double fv = 0;
    auto fres = std::from_chars(line.data(), line.data() + line.size(), fv);
    if (fres.ec == std::errc{} && fres.ptr == line.data() + line.size()) {
      add(FieldValue::floating(fv));
    }
  }
}

std::span<const FieldValue> Dictionary::entries(Datatype type) const {
  return static_[leaf_index(type)];
}

std::vector<FieldValue> coerce_identifiers(const std::vector<FieldValue>& ids, Datatype type) {
  std::vector<FieldValue> out;
  for (const auto& id : ids) {
    switch (type) {
      case Datatype::Integer:
        if (id.datatype() == Datatype::Integer) {
          out.push_back(id);
        } else if (id.datatype() == Datatype::String) {
          const auto& s = id.as_string();
          std::int64_t v = 0;
          auto res = std::from_chars(s.data(), s.data() + s.size(), v);
          if (res.ec == std::errc{} && res.ptr == s.data() + s.size()) {
            out.push_back(FieldValue::integer(v));
          }
        }
        break;
      case Datatype::Float:
        if (id.datatype() == Datatype::Integer) {
          out.push_back(FieldValue::floating(static_cast<double>(id.as_integer())));
        }
        break;
      case Datatype::String:
        out.push_back(FieldValue::string(id.to_text()));
        break;
      case Datatype::Byte: {
        const auto text = id.to_text();
        out.push_back(FieldValue::bytes(Bytes(text.begin(), text.end())));
        break;
      }
      default:
        break;
    }
  }
  return out;
}

namespace {

constexpr std::int64_t kArithmeticConstants[] = {1, 2, 16, 255, 2147483647};

std::uint8_t random_byte(Rng& rng) {
  return static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 255)(rng));
}

std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

FieldValue random_value(Datatype type, Rng& rng) {
  switch (type) {
    case Datatype::Integer:
      return FieldValue::integer(std::uniform_int_distribution<std::int64_t>(
          std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max())(rng));
    case Datatype::Float:
      return FieldValue::floating(std::uniform_real_distribution<double>(-1e9, 1e9)(rng));
    case Datatype::Boolean:
      return FieldValue::boolean(std::bernoulli_distribution(0.5)(rng));
    case Datatype::String: {
      const auto length = std::uniform_int_distribution<std::size_t>(0, 32)(rng);
      std::string s(length, ' ');
      for (auto& c : s) c = static_cast<char>(std::uniform_int_distribution<int>(0x20, 0x7E)(rng));
      return FieldValue::string(std::move(s));
    }
    case Datatype::Byte: {
      Bytes b(std::uniform_int_distribution<std::size_t>(0, 32)(rng));
      for (auto& x : b) x = random_byte(rng);
      return FieldValue::bytes(std::move(b));
    }
    default:
      break;
  }
  throw InapplicableAction("random generation needs a leaf datatype");
}

FieldValue arithmetic(const FieldValue& value, Rng& rng) {
  const int op = std::uniform_int_distribution<int>(0, 3)(rng);
  const auto constant = kArithmeticConstants[uniform_index(rng, std::size(kArithmeticConstants))];
  if (value.datatype() == Datatype::Integer) {
    // Wrapping two's-complement arithmetic.
    const auto x = static_cast<std::uint64_t>(value.as_integer());
    const auto c = static_cast<std::uint64_t>(constant);
    std::uint64_t r = 0;
    switch (op) {
      case 0: r = x + c; break;
      case 1: r = x - c; break;
      case 2: r = x * c; break;
      default: r = ~x + 1; break;
    }
    return FieldValue::integer(static_cast<std::int64_t>(r));
  }
  const double x = value.as_float();
  const auto c = static_cast<double>(constant);
  switch (op) {
    case 0: return FieldValue::floating(x + c);
    case 1: return FieldValue::floating(x - c);
    case 2: return FieldValue::floating(x * c);
    default: return FieldValue::floating(-x);
  }
}

FieldValue from_dictionary(const FieldValue& value, Rng& rng, const DictionaryView& dict) {
  const bool have_dynamic = !dict.dynamic_entries.empty();
  const bool use_dynamic =
      have_dynamic && (dict.static_entries.empty() || std::bernoulli_distribution(0.5)(rng));
  if (use_dynamic) return dict.dynamic_entries[uniform_index(rng, dict.dynamic_entries.size())];
  if (dict.static_entries.empty()) return value;
  return dict.static_entries[uniform_index(rng, dict.static_entries.size())];
}

}  // namespace

FieldValue flip_bits(const FieldValue& value, std::span<const std::size_t> positions) {
  auto bytes = value.canonical_bytes();
  for (auto bit : positions) {
    if (bit / 8 < bytes.size()) bytes[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
  }
  return FieldValue::from_canonical_bytes(value.datatype(), bytes);
}

FieldValue truncate_to(const FieldValue& value, std::size_t length) {
  auto bytes = value.canonical_bytes();
  if (length < bytes.size()) bytes.resize(length);
  return FieldValue::from_canonical_bytes(value.datatype(), bytes);
}

FieldValue mutate(const FieldValue& value, MutationAction action, Rng& rng,
                  const DictionaryView& dict) {
  const auto type = value.datatype();
  if (!is_applicable(action, type)) {
    throw InapplicableAction(std::string(to_string(action)) + " does not apply to " +
                             std::string(to_string(type)));
  }
  switch (action) {
    case MutationAction::BitFlip: {
      const std::size_t bit_count = value.canonical_bytes().size() * 8;
      if (bit_count == 0) return value;
      const auto k = std::min<std::size_t>(std::uniform_int_distribution<std::size_t>(1, 4)(rng),
                                           bit_count);
      std::vector<std::size_t> positions;
      while (positions.size() < k) {
        const auto bit = uniform_index(rng, bit_count);
        if (std::find(positions.begin(), positions.end(), bit) == positions.end()) {
          positions.push_back(bit);
        }
      }
      return flip_bits(value, positions);
    }
    case MutationAction::ByteShuffle: {
      auto bytes = value.canonical_bytes();
      std::shuffle(bytes.begin(), bytes.end(), rng);
      return FieldValue::from_canonical_bytes(type, bytes);
    }
    case MutationAction::ByteInjectDelete: {
      auto bytes = value.canonical_bytes();
      auto n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
      const bool remove = !bytes.empty() && std::bernoulli_distribution(0.5)(rng);
      if (remove) {
        n = std::min(n, bytes.size());
        for (std::size_t i = 0; i < n; ++i) {
          bytes.erase(bytes.begin() + static_cast<std::ptrdiff_t>(uniform_index(rng, bytes.size())));
        }
      } else {
        for (std::size_t i = 0; i < n; ++i) {
          const auto at = uniform_index(rng, bytes.size() + 1);
          bytes.insert(bytes.begin() + static_cast<std::ptrdiff_t>(at), random_byte(rng));
        }
      }
      return FieldValue::from_canonical_bytes(type, bytes);
    }
    case MutationAction::ByteSubstitute: {
      auto bytes = value.canonical_bytes();
      if (bytes.empty()) return value;
      const auto n = std::min(std::uniform_int_distribution<std::size_t>(1, 4)(rng), bytes.size());
      for (std::size_t i = 0; i < n; ++i) bytes[uniform_index(rng, bytes.size())] = random_byte(rng);
      return FieldValue::from_canonical_bytes(type, bytes);
    }
    case MutationAction::Truncate: {
      const auto size = value.canonical_bytes().size();
      if (size == 0) return value;
      return truncate_to(value, uniform_index(rng, size));
    }
    case MutationAction::Dictionary: {
      auto chosen = from_dictionary(value, rng, dict);
      if (chosen.datatype() != type) {
        auto coerced = coerce_identifiers({chosen}, type);
        return coerced.empty() ? value : coerced.front();
      }
      return chosen;
    }
    case MutationAction::Arithmetic:
      return arithmetic(value, rng);
    case MutationAction::RandomGen:
      return random_value(type, rng);
  }
  throw InapplicableAction("unknown mutation action");
}

ApiFunction mutate_function_inputs(const ApiFunction& function,
                                   const std::map<std::string, MutationAction>& chosen_actions,
                                   Rng& rng, const Dictionary& dictionary,
                                   const IdentifierStore* store) {
  ApiFunction out = function;
  if (chosen_actions.empty()) return out;
  for (const auto& slot : leaf_slots(function)) {
    auto it = chosen_actions.find(slot.path);
    if (it == chosen_actions.end()) continue;
    SchemaNode* leaf = find_leaf(out, slot.path);
    if (leaf == nullptr || !leaf->sample) throw MissingSample("slot '" + slot.path + "' has no sample");
    if (!is_applicable(it->second, slot.type)) {
      throw InapplicableAction(std::string(to_string(it->second)) + " does not apply to slot '" +
                               slot.path + "'");
    }
    DictionaryView view{dictionary.entries(slot.type), {}};
    if (it->second == MutationAction::Dictionary) {
      if (store != nullptr) {
        const auto resource = slot_resource(function, slot);
        if (!resource.empty()) view.dynamic_entries = coerce_identifiers(store->entries(resource), slot.type);
      }
      for (const auto& value : leaf->constraints.enum_values) {
        if (value.datatype() == slot.type) view.dynamic_entries.push_back(value);
      }
    }
    leaf->sample = mutate(*leaf->sample, it->second, rng, view);
  }
  return out;
}

}  // namespace fuzztherest
