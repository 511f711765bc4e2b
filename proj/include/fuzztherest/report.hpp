#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzztherest/agent.hpp"
#include "fuzztherest/findings.hpp"

namespace fuzztherest {

/// Status-class slots of EpisodeSummary::status_counts: 1XX..5XX, TRANSPORT.
inline constexpr std::array<State, 6> kResponseClasses = {State::S1xx, State::S2xx, State::S3xx,
                                                          State::S4xx, State::S5xx, State::Transport};

struct EpisodeSummary {
  int reward = 0;
  /// Running sum of rewards over this and all earlier episodes.
  long long cumulative_reward = 0;
  double epsilon = 0.0;
  std::size_t steps = 0;
  std::array<std::size_t, 6> status_counts{};
  std::map<MutationAction, std::size_t> action_counts;
  std::map<Datatype, std::vector<double>> init_q;
  /// Sum of |after - before| over the episode's Q updates.
  double q_change = 0.0;
};

struct AgentReport {
  std::string scenario;
  std::string operation_id;
  std::vector<EpisodeSummary> episodes;
  QTableSet final_tables;
  double final_epsilon = 0.0;
  std::size_t findings = 0;
  std::size_t transport_failures = 0;
  std::size_t identifiers_harvested = 0;
};

AgentReport summarize_agent(const AgentResult& result, const std::string& scenario);

struct RunReport {
  nlohmann::ordered_json config;
  std::string started_at;
  std::string finished_at;
  long long duration_ms = 0;
  std::vector<AgentReport> agents;
  std::vector<VulnerabilityRecord> vulnerabilities;
  std::size_t total_findings = 0;
  std::size_t total_requests = 0;
  std::map<std::string, std::vector<FieldValue>> identifiers;
  std::vector<std::string> warnings;
};

/// report.json content. Only the "timing" object depends on wall-clock time.
nlohmann::ordered_json report_json(const RunReport& report);

std::string report_markdown(const RunReport& report);

/// Writes report.json and report.md into `output_dir`, creating it if
/// needed. Throws IoError.
void emit_report(const RunReport& report, const std::filesystem::path& output_dir);

}  // namespace fuzztherest
