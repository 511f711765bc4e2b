#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuzztherest/executor.hpp"
#include "fuzztherest/report.hpp"
#include "fuzztherest/rl.hpp"

namespace fuzztherest {

struct RunConfig {
  std::filesystem::path oas_path;
  std::filesystem::path scenarios_path;
  std::filesystem::path report_dir = "./fuzz-report";
  AgentConfig agent;
  int timeout_ms = 5000;
  /// Raw "Name: value" strings.
  std::vector<std::string> headers;
  std::optional<std::filesystem::path> dictionary_path;
  bool parallel_scenarios = false;
};

/// Splits "Name: value". Throws ConfigError.
std::pair<std::string, std::string> parse_header(std::string_view raw);

struct Diagnostic {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string message;
};

/// Dry run: loads and resolves the OAS and scenarios without sending any
/// request.
std::vector<Diagnostic> validate_config(const RunConfig& config);

/// Trains one agent per scenario step and collects the results. Progress
/// goes to `log`. A null executor means a real HTTP client. Throws on
/// configuration and IO errors.
RunReport execute_run(const RunConfig& config, std::ostream& log, Executor* executor = nullptr);

/// execute_run plus report emission, mapped to an exit code: 0 clean run,
/// 1 at least one vulnerability, 2 configuration or IO error.
int run(const RunConfig& config, std::ostream& log, Executor* executor = nullptr);

}  // namespace fuzztherest
