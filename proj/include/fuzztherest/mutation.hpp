#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzztherest/random.hpp"
#include "fuzztherest/schema.hpp"
#include "fuzztherest/value.hpp"

namespace fuzztherest {

class IdentifierStore;

enum class MutationAction {
  BitFlip,
  ByteShuffle,
  ByteInjectDelete,
  ByteSubstitute,
  Truncate,
  Dictionary,
  Arithmetic,
  RandomGen,
};

inline constexpr std::array<MutationAction, 8> kAllActions = {
    MutationAction::BitFlip,        MutationAction::ByteShuffle, MutationAction::ByteInjectDelete,
    MutationAction::ByteSubstitute, MutationAction::Truncate,    MutationAction::Dictionary,
    MutationAction::Arithmetic,     MutationAction::RandomGen,
};

std::string_view to_string(MutationAction action) noexcept;

/// The datatype -> action matrix, in enumeration order. Throws
/// InapplicableAction for Object and Array.
const std::vector<MutationAction>& applicable_actions(Datatype type);

bool is_applicable(MutationAction action, Datatype type);

/// Static boundary and attack values per leaf datatype, optionally extended
/// with user entries.
class Dictionary {
 public:
  /// Built-in entries aimed at numeric boundaries, injection metacharacters,
  /// broken UTF-16 surrogates and control whitespace.
  static Dictionary with_defaults();

  void add(const FieldValue& entry);

  /// One entry per non-empty line; every line becomes a String and a Byte
  /// entry, and also an Integer or Float entry when it parses as one.
  void add_user_entries(std::string_view text);

  std::span<const FieldValue> entries(Datatype type) const;

 private:
  std::array<std::vector<FieldValue>, 5> static_;
};

/// What the Dictionary mutator may draw from for one slot.
struct DictionaryView {
  std::span<const FieldValue> static_entries;
  std::vector<FieldValue> dynamic_entries;
};

/// Converts harvested identifiers to a slot datatype; unconvertible ones are dropped.
std::vector<FieldValue> coerce_identifiers(const std::vector<FieldValue>& ids, Datatype type);

/// Applies one mutator. Deterministic in (value, action, rng state, dict).
/// Throws InapplicableAction.
FieldValue mutate(const FieldValue& value, MutationAction action, Rng& rng,
                  const DictionaryView& dict);

/// Flips the given bit positions of the canonical encoding (bit i is bit
/// i%8 of byte i/8). Positions past the end are ignored.
FieldValue flip_bits(const FieldValue& value, std::span<const std::size_t> positions);

/// Cuts a String or Byte value to `length` bytes.
FieldValue truncate_to(const FieldValue& value, std::size_t length);

/// Returns a copy of `function` where every slot named in `chosen_actions`
/// has been mutated. Dynamic dictionary entries are the slot's declared
/// enum values plus identifiers from `store` (may be null). Throws
/// InapplicableAction or MissingSample.
ApiFunction mutate_function_inputs(const ApiFunction& function,
                                   const std::map<std::string, MutationAction>& chosen_actions,
                                   Rng& rng, const Dictionary& dictionary,
                                   const IdentifierStore* store);

}  // namespace fuzztherest
