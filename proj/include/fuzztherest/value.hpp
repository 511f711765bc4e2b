#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fuzztherest {

enum class Datatype { Integer, Float, Boolean, String, Byte, Object, Array };

using Bytes = std::vector<std::uint8_t>;

std::string_view to_string(Datatype type) noexcept;

inline bool is_leaf(Datatype type) noexcept {
  return type != Datatype::Object && type != Datatype::Array;
}

/// The five leaf datatypes in their fixed enumeration order.
inline constexpr Datatype kLeafDatatypes[] = {Datatype::Integer, Datatype::Float,
                                              Datatype::Boolean, Datatype::String,
                                              Datatype::Byte};

/// A concrete value occupying a leaf slot. String holds raw bytes and may
/// carry ill-formed UTF-8 (including encoded surrogate halves) produced by
/// mutation.
class FieldValue {
 public:
  FieldValue() : FieldValue(std::int64_t{0}) {}

  static FieldValue integer(std::int64_t v) { return FieldValue(v); }
  static FieldValue floating(double v) { return FieldValue(v); }
  static FieldValue boolean(bool v) { return FieldValue(v); }
  static FieldValue string(std::string v) { return FieldValue(Datatype::String, std::move(v)); }
  static FieldValue bytes(Bytes v) { return FieldValue(std::move(v)); }

  Datatype datatype() const noexcept { return type_; }

  std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
  double as_float() const { return std::get<double>(value_); }
  bool as_boolean() const { return std::get<bool>(value_); }
  const std::string& as_string() const { return std::get<std::string>(value_); }
  const Bytes& as_bytes() const { return std::get<Bytes>(value_); }

  /// Canonical byte encoding used by the byte-level mutators: 64-bit
  /// little-endian two's complement for Integer, IEEE-754 binary64 for Float,
  /// the raw bytes for String and Byte, one byte for Boolean.
  Bytes canonical_bytes() const;
  static FieldValue from_canonical_bytes(Datatype type, const Bytes& bytes);

  /// Plain-text rendering used in paths, queries and headers.
  std::string to_text() const;

  friend bool operator==(const FieldValue& a, const FieldValue& b);
  friend bool operator<(const FieldValue& a, const FieldValue& b);

 private:
  explicit FieldValue(std::int64_t v) : type_(Datatype::Integer), value_(v) {}
  explicit FieldValue(double v) : type_(Datatype::Float), value_(v) {}
  explicit FieldValue(bool v) : type_(Datatype::Boolean), value_(v) {}
  FieldValue(Datatype t, std::string v) : type_(t), value_(std::move(v)) {}
  explicit FieldValue(Bytes v) : type_(Datatype::Byte), value_(std::move(v)) {}

  Datatype type_;
  std::variant<std::int64_t, double, bool, std::string, Bytes> value_;
};

}  // namespace fuzztherest
