#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fuzztherest/executor.hpp"
#include "fuzztherest/rl.hpp"

namespace fuzztherest {

struct VulnFingerprint {
  std::string operation_id;
  State status_class = State::S5xx;
  std::string signature;

  friend bool operator==(const VulnFingerprint&, const VulnFingerprint&) = default;
  friend auto operator<=>(const VulnFingerprint&, const VulnFingerprint&) = default;
};

/// First class-name-like token in a response body, in original case:
/// package-qualified (`com.fasterxml.jackson.core.JsonParseException`) or a
/// multi-hump CamelCase word (`NumberFormatException`).
std::optional<std::string> class_token(std::string_view body);

/// Deduplication key of an error body: the class token lowercased with
/// digits stripped, or failing that the first 40 normalized characters.
std::string error_signature(std::string_view body);

/// Package prefix of a qualified class token, "Not applicable" otherwise.
std::string faulty_component(std::string_view token);

struct FindingContext {
  std::string operation_id;
  bool creational = false;
  /// Read-back of the resource just created, when the scenario has one.
  const HttpExchange* read_back = nullptr;
  /// Whether this function has answered 2XX before (turns a transport
  /// failure into a potential crash).
  bool seen_success = false;
};

/// 5XX always yields a fingerprint; a 2XX creation whose read-back fails
/// yields a 2XX-class one; a transport failure after earlier successes
/// yields a TRANSPORT-class one.
std::optional<VulnFingerprint> record_finding(const HttpExchange& exchange,
                                              const FindingContext& context);

struct Finding {
  VulnFingerprint fingerprint;
  HttpExchange exchange;
  std::optional<HttpExchange> read_back;
  std::size_t episode = 0;
  std::size_t step = 0;

  /// Body the signature was taken from.
  const std::string& evidence_body() const {
    return read_back && fingerprint.status_class == State::S2xx ? read_back->response_body
                                                                : exchange.response_body;
  }
};

inline constexpr std::size_t kMaxExamples = 3;

struct VulnerabilityRecord {
  /// Fingerprint of the first occurrence.
  VulnFingerprint fingerprint;
  std::set<std::string> operations;
  std::size_t count = 0;
  std::vector<Finding> examples;
  std::string token;
  std::string name;
  std::string description;
  std::string faulty_framework;
  int status_code = 0;
};

/// Groups findings by (status class, signature) across all operations and
/// keeps at most three example exchanges per group, in first-seen order.
std::vector<VulnerabilityRecord> dedupe(const std::vector<Finding>& findings);

}  // namespace fuzztherest
