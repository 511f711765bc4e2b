#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/mock_sut.hpp"
#include "fuzztherest/runner.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

void add_run_options(CLI::App& cmd, fuzztherest::RunConfig& config, std::string& dictionary) {
  auto& a = config.agent;
  cmd.add_option("--oas", config.oas_path, "OpenAPI 3.x document (JSON or YAML)")->required();
  cmd.add_option("--scenarios", config.scenarios_path, "Scenarios file (JSON)")->required();
  cmd.add_option("--report-dir", config.report_dir, "Output directory")->capture_default_str();
  cmd.add_option("--episodes", a.episodes, "Episodes per agent")->capture_default_str();
  cmd.add_option("--max-steps", a.max_steps, "Requests per episode")->capture_default_str();
  cmd.add_option("--epsilon", a.epsilon0, "Initial exploration rate")->capture_default_str();
  cmd.add_option("--epsilon-decay", a.epsilon_decay, "Per-episode decay")->capture_default_str();
  cmd.add_option("--epsilon-min", a.epsilon_min, "Exploration floor")->capture_default_str();
  cmd.add_option("--alpha", a.alpha, "Learning rate")->capture_default_str();
  cmd.add_option("--gamma", a.gamma, "Discount factor")->capture_default_str();
  cmd.add_option("--seed", a.seed, "Base random seed")->capture_default_str();
  cmd.add_option("--timeout-ms", config.timeout_ms, "Request timeout")->capture_default_str();
  cmd.add_option("--header", config.headers, "Extra request header 'Name: value' (repeatable)");
  cmd.add_option("--dictionary", dictionary, "Extra dictionary entries, one per line");
  cmd.add_flag("--parallel-scenarios", config.parallel_scenarios, "Run scenarios concurrently");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reinforcement-learning guided REST API fuzzer"};
  app.set_config("--config", "", "TOML/INI file with option defaults (command line wins)");
  app.require_subcommand(1);

  fuzztherest::RunConfig config;
  std::string dictionary;
  auto* run_cmd = app.add_subcommand("run", "Fuzz the API described by an OAS file");
  add_run_options(*run_cmd, config, dictionary);

  fuzztherest::RunConfig vconfig;
  std::string vdictionary;
  auto* validate_cmd = app.add_subcommand("validate", "Check OAS and scenarios without sending requests");
  add_run_options(*validate_cmd, vconfig, vdictionary);

  int port = 8080;
  std::uint64_t seed = 0;
  bool clean = false;
  std::string emit_oas, emit_scenarios;
  auto* mock_cmd = app.add_subcommand("mock-sut", "Serve the built-in vulnerable pet store API");
  mock_cmd->add_option("--port", port, "Port on 127.0.0.1 (0 picks one)")->capture_default_str();
  mock_cmd->add_option("--seed", seed, "Seed")->capture_default_str();
  mock_cmd->add_flag("--clean", clean, "Answer 400 where a vulnerability is seeded");
  mock_cmd->add_option("--emit-oas", emit_oas, "Write the mock's OAS document to this file");
  mock_cmd->add_option("--emit-scenarios", emit_scenarios, "Write matching scenarios to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (run_cmd->parsed()) {
    if (!dictionary.empty()) config.dictionary_path = dictionary;
    if (config.agent.episodes == 0) {
      std::cerr << "error: --episodes must be at least 1\n";
      return 2;
    }
    return fuzztherest::run(config, std::cerr);
  }

  if (validate_cmd->parsed()) {
    if (!vdictionary.empty()) vconfig.dictionary_path = vdictionary;
    const auto diagnostics = fuzztherest::validate_config(vconfig);
    bool errors = false;
    for (const auto& d : diagnostics) {
      const bool is_error = d.severity == fuzztherest::Diagnostic::Severity::Error;
      errors = errors || is_error;
      std::cout << (is_error ? "error: " : "warning: ") << d.message << "\n";
    }
    if (diagnostics.empty()) std::cout << "ok\n";
    return errors ? 2 : 0;
  }

  fuzztherest::MockSut sut({seed, !clean});
  try {
    sut.start(port);
  } catch (const fuzztherest::BindError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  auto write = [](const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
  };
  if (!emit_oas.empty() && !write(emit_oas, fuzztherest::mock_oas_document())) {
    std::cerr << "error: cannot write " << emit_oas << "\n";
    return 2;
  }
  if (!emit_scenarios.empty() &&
      !write(emit_scenarios, fuzztherest::mock_scenarios_document(sut.base_url()))) {
    std::cerr << "error: cannot write " << emit_scenarios << "\n";
    return 2;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cerr << "mock SUT listening on " << sut.base_url() << std::endl;
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  sut.stop();
  return 0;
}
