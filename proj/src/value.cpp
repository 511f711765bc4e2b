#include "fuzztherest/value.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace fuzztherest {

std::string_view to_string(Datatype type) noexcept {
  switch (type) {
    case Datatype::Integer: return "integer";
    case Datatype::Float: return "float";
    case Datatype::Boolean: return "boolean";
    case Datatype::String: return "string";
    case Datatype::Byte: return "byte";
    case Datatype::Object: return "object";
    case Datatype::Array: return "array";
  }
  return "unknown";
}

namespace {

Bytes little_endian(std::uint64_t bits) {
  Bytes out(8);
  for (int i = 0; i < 8; ++i) out[i] = static_cast<std::uint8_t>(bits >> (8 * i));
  return out;
}

std::uint64_t from_little_endian(const Bytes& bytes) {
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < 8 && i < bytes.size(); ++i) {
    bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return bits;
}

}  // namespace

Bytes FieldValue::canonical_bytes() const {
  switch (type_) {
    case Datatype::Integer:
      return little_endian(static_cast<std::uint64_t>(as_integer()));
    case Datatype::Float:
      return little_endian(std::bit_cast<std::uint64_t>(as_float()));
    case Datatype::Boolean:
      return Bytes{static_cast<std::uint8_t>(as_boolean() ? 1 : 0)};
    case Datatype::String: {
      const auto& s = as_string();
      return Bytes(s.begin(), s.end());
    }
    case Datatype::Byte:
      return as_bytes();
    default:
      break;
  }
  throw std::logic_error("canonical_bytes on non-leaf value");
}

FieldValue FieldValue::from_canonical_bytes(Datatype type, const Bytes& bytes) {
  switch (type) {
    case Datatype::Integer:
      return integer(static_cast<std::int64_t>(from_little_endian(bytes)));
    case Datatype::Float:
      return floating(std::bit_cast<double>(from_little_endian(bytes)));
    case Datatype::Boolean:
      return boolean(!bytes.empty() && (bytes[0] & 1) != 0);
    case Datatype::String:
      return string(std::string(bytes.begin(), bytes.end()));
    case Datatype::Byte:
      return FieldValue::bytes(bytes);
    default:
      break;
  }
  throw std::logic_error("from_canonical_bytes on non-leaf datatype");
}

std::string FieldValue::to_text() const {
  switch (type_) {
    case Datatype::Integer:
      return std::to_string(as_integer());
    case Datatype::Float: {
      const double v = as_float();
      if (std::isnan(v)) return "NaN";
      if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      return std::string(buf, res.ptr);
    }
    case Datatype::Boolean:
      return as_boolean() ? "true" : "false";
    case Datatype::String:
      return as_string();
    case Datatype::Byte: {
      const auto& b = as_bytes();
      return std::string(b.begin(), b.end());
    }
    default:
      break;
  }
  return {};
}

// Floats compare by bit pattern so that NaN payloads and signed zeros are
// distinguishable and equality stays reflexive.
bool operator==(const FieldValue& a, const FieldValue& b) {
  if (a.type_ != b.type_) return false;
  if (a.type_ == Datatype::Float) {
    return std::bit_cast<std::uint64_t>(a.as_float()) ==
           std::bit_cast<std::uint64_t>(b.as_float());
  }
  return a.value_ == b.value_;
}

bool operator<(const FieldValue& a, const FieldValue& b) {
  if (a.type_ != b.type_) return a.type_ < b.type_;
  if (a.type_ == Datatype::Float) {
    return std::bit_cast<std::uint64_t>(a.as_float()) <
           std::bit_cast<std::uint64_t>(b.as_float());
  }
  return a.value_ < b.value_;
}

}  // namespace fuzztherest
