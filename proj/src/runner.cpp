#include "fuzztherest/runner.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/oas.hpp"
#include "fuzztherest/scenario.hpp"

namespace fuzztherest {

namespace {

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot read ") + what + " " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

struct Loaded {
  OasParseResult oas;
  ScenarioSet scenarios;
  std::vector<std::vector<ApiFunction>> sequences;
};

Loaded load(const RunConfig& config) {
  Loaded loaded;
  const auto oas_text = read_file(config.oas_path, "OAS file");
  try {
    loaded.oas = parse_oas(oas_text, format_from_path(config.oas_path));
  } catch (const Error& e) {
    throw ParseError(config.oas_path.string() + ": " + e.what());
  }
  try {
    loaded.scenarios = parse_scenarios(read_file(config.scenarios_path, "scenarios file"));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(config.scenarios_path.string() + ": " + e.what());
  }
  for (const auto& scenario : loaded.scenarios.scenarios) {
    loaded.sequences.push_back(resolve_sequence(scenario, loaded.oas.functions));
  }
  return loaded;
}

nlohmann::ordered_json config_json(const RunConfig& config) {
  nlohmann::ordered_json headers = nlohmann::ordered_json::array();
  for (const auto& raw : config.headers) headers.push_back(parse_header(raw).first);
  const auto& a = config.agent;
  return {{"oas", config.oas_path.generic_string()},
          {"scenarios", config.scenarios_path.generic_string()},
          {"episodes", a.episodes},
          {"max_steps", a.max_steps},
          {"epsilon", a.epsilon0},
          {"epsilon_decay", a.epsilon_decay},
          {"epsilon_min", a.epsilon_min},
          {"alpha", a.alpha},
          {"gamma", a.gamma},
          {"seed", a.seed},
          {"timeout_ms", config.timeout_ms},
          {"headers", headers},
          {"dictionary", config.dictionary_path ? config.dictionary_path->generic_string() : ""},
          {"parallel_scenarios", config.parallel_scenarios}};
}

struct StepResult {
  AgentResult result;
  std::size_t requests = 0;
};

}  // namespace

std::pair<std::string, std::string> parse_header(std::string_view raw) {
  const auto colon = raw.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("header must look like 'Name: value': " + std::string(raw));
  }
  auto name = trim(raw.substr(0, colon));
  if (name.empty()) throw ConfigError("empty header name: " + std::string(raw));
  return {std::move(name), trim(raw.substr(colon + 1))};
}

std::vector<Diagnostic> validate_config(const RunConfig& config) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string message) {
    out.push_back({Diagnostic::Severity::Error, std::move(message)});
  };

  OasParseResult oas;
  try {
    oas = parse_oas(read_file(config.oas_path, "OAS file"), format_from_path(config.oas_path));
  } catch (const std::exception& e) {
    error(config.oas_path.string() + ": " + e.what());
    return out;
  }
  for (const auto& w : oas.warnings) out.push_back({Diagnostic::Severity::Warning, w});

  ScenarioSet scenarios;
  try {
    scenarios = parse_scenarios(read_file(config.scenarios_path, "scenarios file"));
  } catch (const std::exception& e) {
    error(config.scenarios_path.string() + ": " + e.what());
    return out;
  }
  for (const auto& scenario : scenarios.scenarios) {
    for (std::size_t i = 0; i < scenario.steps.size(); ++i) {
      Scenario single{scenario.name, {scenario.steps[i]}};
      try {
        resolve_sequence(single, oas.functions);
      } catch (const std::exception& e) {
        error("scenario '" + scenario.name + "' step " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  for (const auto& raw : config.headers) {
    try {
      parse_header(raw);
    } catch (const std::exception& e) {
      error(e.what());
    }
  }
  try {
    config.agent.validate();
  } catch (const std::exception& e) {
    error(e.what());
  }
  if (config.dictionary_path && !std::filesystem::exists(*config.dictionary_path)) {
    error("dictionary file not found: " + config.dictionary_path->string());
  }
  return out;
}

RunReport execute_run(const RunConfig& config, std::ostream& log, Executor* executor) {
  const auto started = std::chrono::steady_clock::now();
  RunReport report;
  report.started_at = utc_now();

  config.agent.validate();
  if (config.agent.episodes == 0) throw ConfigError("episodes must be at least 1");
  if (config.timeout_ms <= 0) throw ConfigError("timeout must be positive");
  HeaderList headers;
  for (const auto& raw : config.headers) headers.push_back(parse_header(raw));

  auto dictionary = Dictionary::with_defaults();
  if (config.dictionary_path) {
    dictionary.add_user_entries(read_file(*config.dictionary_path, "dictionary file"));
  }

  const auto loaded = load(config);
  report.config = config_json(config);
  report.warnings = loaded.oas.warnings;

  std::unique_ptr<HttpExecutor> owned;
  if (executor == nullptr) {
    owned = std::make_unique<HttpExecutor>(config.timeout_ms);
    executor = owned.get();
  }
  IdentifierStore store;
  std::mutex log_mutex;

  const auto& scenarios = loaded.scenarios.scenarios;
  std::vector<std::vector<StepResult>> results(scenarios.size());

  auto run_scenario = [&](std::size_t si) {
    const auto& scenario = scenarios[si];
    const auto& sequence = loaded.sequences[si];
    for (std::size_t step = 0; step < sequence.size(); ++step) {
      const auto& function = sequence[step];
      AgentEnvironment env{*executor, store, dictionary, loaded.scenarios.base_url, headers,
                           scenario.steps[step].fixed, std::nullopt, InstantiateOptions{}};
      if (function.is_creational() && step + 1 < sequence.size() &&
          read_back_slot(function, sequence[step + 1])) {
        env.read_back = sequence[step + 1];
      }
      auto agent_config = config.agent;
      agent_config.seed = derive_seed(config.agent.seed, {si, step});
      StepResult out;
      out.result = train_agent(function, env, agent_config);
      for (const auto& ep : out.result.episodes) out.requests += ep.steps.size();
      {
        std::lock_guard lock(log_mutex);
        log << "[" << scenario.name << "] " << function.operation_id << ": "
            << out.result.episodes.size() << " episodes, " << out.requests << " requests, "
            << out.result.findings.size() << " findings\n"
            << std::flush;
      }
      results[si].push_back(std::move(out));
    }
  };

  if (config.parallel_scenarios && scenarios.size() > 1) {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(scenarios.size());
    for (std::size_t si = 0; si < scenarios.size(); ++si) {
      threads.emplace_back([&, si] {
        try {
          run_scenario(si);
        } catch (...) {
          errors[si] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  } else {
    for (std::size_t si = 0; si < scenarios.size(); ++si) run_scenario(si);
  }

  std::vector<Finding> findings;
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    for (auto& step : results[si]) {
      report.total_requests += step.requests;
      findings.insert(findings.end(), step.result.findings.begin(), step.result.findings.end());
      report.agents.push_back(summarize_agent(step.result, scenarios[si].name));
    }
  }
  report.total_findings = findings.size();
  report.vulnerabilities = dedupe(findings);
  report.identifiers = store.snapshot();
  report.finished_at = utc_now();
  report.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - started)
                           .count();
  return report;
}

int run(const RunConfig& config, std::ostream& log, Executor* executor) {
  try {
    const auto report = execute_run(config, log, executor);
    emit_report(report, config.report_dir);
    log << "report written to " << config.report_dir.string() << ": "
        << report.vulnerabilities.size() << " unique vulnerabilities from "
        << report.total_findings << " findings\n";
    return report.vulnerabilities.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fuzztherest
