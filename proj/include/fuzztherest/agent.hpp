#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzztherest/executor.hpp"
#include "fuzztherest/findings.hpp"
#include "fuzztherest/identity_store.hpp"
#include "fuzztherest/mutation.hpp"
#include "fuzztherest/oas.hpp"
#include "fuzztherest/rl.hpp"

namespace fuzztherest {

struct QDelta {
  Datatype table = Datatype::Integer;
  MutationAction action = MutationAction::RandomGen;
  double before = 0.0;
  double after = 0.0;
};

struct StepRecord {
  State state_before = State::Init;
  std::map<std::string, MutationAction> actions;
  std::string request_summary;
  Outcome outcome = 0;
  int reward = 0;
  State state_after = State::Init;
  std::vector<QDelta> q_deltas;
};

struct EpisodeTrace {
  double epsilon = 0.0;
  std::vector<StepRecord> steps;
  /// INIT row of every table once the episode finished.
  std::map<Datatype, std::vector<double>> init_q;

  bool ended_on_server_error() const {
    return !steps.empty() && steps.back().state_after == State::S5xx;
  }
  int total_reward() const;
};

/// Everything an agent needs from the surrounding run. The identifier
/// store and executor are shared; the rest is per agent.
struct AgentEnvironment {
  Executor& executor;
  IdentifierStore& store;
  const Dictionary& dictionary;
  std::string base_url;
  HeaderList extra_headers;
  /// Slots pinned by the scenario; never mutated.
  std::map<std::string, std::string> fixed;
  /// Read function used to verify resources created by this function.
  std::optional<ApiFunction> read_back;
  InstantiateOptions instantiate;
};

/// Mutable per-agent training state that persists across episodes.
struct AgentState {
  QTableSet tables;
  bool seen_success = false;
  std::vector<Finding> findings;
  std::size_t transport_failures = 0;
  std::size_t identifiers_harvested = 0;
};

/// Read function that can verify what `creator` creates: a GET whose path
/// has an identifier slot for the creator's resource.
std::optional<std::string> read_back_slot(const ApiFunction& creator, const ApiFunction& reader);

/// Slots the agent mutates (every leaf not pinned by the scenario).
std::vector<SlotRef> mutable_slots(const ApiFunction& function,
                                   const std::map<std::string, std::string>& fixed);

/// One training episode: starts at INIT with fresh samples, stops after
/// max_steps requests or on the first 5XX.
EpisodeTrace run_episode(const ApiFunction& function, AgentState& state, AgentEnvironment& env,
                         const AgentConfig& config, double epsilon, std::size_t episode_index,
                         Rng& rng);

struct AgentResult {
  std::string operation_id;
  QTableSet tables;
  std::vector<EpisodeTrace> episodes;
  std::vector<Finding> findings;
  double final_epsilon = 0.0;
  std::size_t transport_failures = 0;
  std::size_t identifiers_harvested = 0;
};

/// Trains a fresh agent on a single function for config.episodes episodes,
/// decaying epsilon after each.
AgentResult train_agent(const ApiFunction& function, AgentEnvironment& env,
                        const AgentConfig& config);

}  // namespace fuzztherest
