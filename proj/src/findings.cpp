#include "fuzztherest/findings.hpp"

#include <cctype>
#include <map>
#include <nlohmann/json.hpp>
#include <regex>

namespace fuzztherest {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

std::string lower_without_digits(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    if (std::isdigit(c)) continue;
    out += static_cast<char>(std::tolower(c));
  }
  return out;
}

std::string simple_name(std::string_view token) {
  const auto dot = token.rfind('.');
  return std::string(dot == std::string_view::npos ? token : token.substr(dot + 1));
}

std::string humanize(std::string_view class_name) {
  std::string name(class_name);
  for (std::string_view suffix : {"Exception", "Error"}) {
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
      name.resize(name.size() - suffix.size());
      break;
    }
  }
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (i > 0 && is_upper(name[i]) && !is_upper(name[i - 1])) out += ' ';
    out += name[i];
  }
  return out;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Error text of a body: its "message" (or "error") member when the body is a
// JSON object, the body itself otherwise.
std::string error_text(std::string_view body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_object()) {
    for (const char* key : {"message", "error", "detail"}) {
      if (j.contains(key) && j[key].is_string()) return j[key].get<std::string>();
    }
  }
  return std::string(body);
}

std::string message_after_token(std::string_view body, std::string_view token) {
  auto pos = body.find(token);
  if (pos == std::string_view::npos) return trim(body.substr(0, 120));
  auto rest = body.substr(pos + token.size());
  while (!rest.empty() && (rest.front() == ':' || rest.front() == ' ')) rest.remove_prefix(1);
  const auto eol = rest.find('\n');
  return trim(rest.substr(0, std::min<std::size_t>(eol, 120)));
}

}  // namespace

std::optional<std::string> class_token(std::string_view body) {
  static const std::regex kToken(
      R"((?:[a-z][a-z0-9_]*\.)+[A-Z][A-Za-z0-9_]*|[A-Z][a-z0-9_]+(?:[A-Z][a-z0-9_]*)+)");
  std::match_results<std::string_view::const_iterator> match;
  if (std::regex_search(body.begin(), body.end(), match, kToken)) return match.str();
  return std::nullopt;
}

std::string error_signature(std::string_view body) {
  if (auto token = class_token(body)) return lower_without_digits(*token);
  std::string normalized;
  bool space = false;
  for (unsigned char c : body) {
    if (std::isdigit(c)) continue;
    if (std::isspace(c)) {
      space = !normalized.empty();
      continue;
    }
    if (space) normalized += ' ';
    space = false;
    normalized += static_cast<char>(std::tolower(c));
    if (normalized.size() >= 40) break;
  }
  return normalized;
}

std::string faulty_component(std::string_view token) {
  const auto dot = token.rfind('.');
  if (dot == std::string_view::npos) return "Not applicable";
  return std::string(token.substr(0, dot));
}

std::optional<VulnFingerprint> record_finding(const HttpExchange& exchange,
                                              const FindingContext& context) {
  if (exchange.is_status_class(5)) {
    return VulnFingerprint{context.operation_id, State::S5xx, error_signature(exchange.response_body)};
  }
  if (exchange.is_status_class(2) && context.creational && context.read_back != nullptr &&
      !context.read_back->is_status_class(2)) {
    const auto& rb = *context.read_back;
    const auto signature =
        std::holds_alternative<TransportFailure>(rb.outcome)
            ? "transport:" + std::string(to_string(std::get<TransportFailure>(rb.outcome)))
            : error_signature(rb.response_body);
    return VulnFingerprint{context.operation_id, State::S2xx, signature};
  }
  if (std::holds_alternative<TransportFailure>(exchange.outcome) && context.seen_success) {
    return VulnFingerprint{context.operation_id, State::Transport,
                           "transport:" + std::string(to_string(std::get<TransportFailure>(exchange.outcome)))};
  }
  return std::nullopt;
}

std::vector<VulnerabilityRecord> dedupe(const std::vector<Finding>& findings) {
  std::vector<VulnerabilityRecord> records;
  std::map<std::pair<State, std::string>, std::size_t> index;
  for (const auto& finding : findings) {
    const auto key = std::make_pair(finding.fingerprint.status_class, finding.fingerprint.signature);
    auto [it, inserted] = index.emplace(key, records.size());
    if (inserted) {
      VulnerabilityRecord record;
      record.fingerprint = finding.fingerprint;
      const auto body = error_text(finding.evidence_body());
      const auto token = class_token(body);
      record.token = token.value_or("");
      record.name = token ? humanize(simple_name(*token))
                          : (finding.fingerprint.status_class == State::Transport
                                 ? std::string("Potential Crash")
                                 : "Unclassified " + std::string(to_string(finding.fingerprint.status_class)));
      std::string message = token ? message_after_token(body, *token) : trim(body.substr(0, 120));
      if (finding.fingerprint.status_class == State::S2xx) {
        message = "Created resource cannot be fetched back: " + message;
      } else if (finding.fingerprint.status_class == State::Transport) {
        message = "Server stopped responding (" + finding.fingerprint.signature + ") after successful requests";
      }
      record.description = message;
      record.faulty_framework = token ? faulty_component(*token) : "Not applicable";
      record.status_code = std::holds_alternative<int>(finding.exchange.outcome)
                               ? std::get<int>(finding.exchange.outcome)
                               : 0;
      records.push_back(std::move(record));
    }
    auto& record = records[it->second];
    record.operations.insert(finding.fingerprint.operation_id);
    ++record.count;
    if (record.examples.size() < kMaxExamples) record.examples.push_back(finding);
  }
  return records;
}

}  // namespace fuzztherest
