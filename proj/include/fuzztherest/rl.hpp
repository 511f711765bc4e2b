#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzztherest/mutation.hpp"
#include "fuzztherest/random.hpp"
#include "fuzztherest/schema.hpp"

namespace fuzztherest {

enum class TransportFailure { Timeout, ConnectionRefused, ProtocolError };

std::string_view to_string(TransportFailure failure) noexcept;

/// What a request produced: an HTTP status code or a transport failure.
using Outcome = std::variant<int, TransportFailure>;

enum class State { Init, S1xx, S2xx, S3xx, S4xx, S5xx, Transport };

inline constexpr std::size_t kStateCount = 7;

inline constexpr std::array<State, kStateCount> kAllStates = {
    State::Init, State::S1xx, State::S2xx, State::S3xx, State::S4xx, State::S5xx, State::Transport};

std::string_view to_string(State state) noexcept;

/// Buckets a status code by its hundreds digit. Throws OutOfRangeStatus
/// outside [100, 599].
State classify_state(const Outcome& outcome);

/// 1XX: 0, 2XX and 3XX: +5, 4XX: -20, 5XX: +10, transport failure: 0.
int reward(const Outcome& outcome);

/// Q-values over (State x action) for one leaf datatype. Cells start at 0.
class QTable {
 public:
  explicit QTable(Datatype type);
  QTable(Datatype type, std::vector<MutationAction> actions);

  Datatype datatype() const noexcept { return type_; }
  const std::vector<MutationAction>& actions() const noexcept { return actions_; }

  std::size_t action_index(MutationAction action) const;
  double q(State state, MutationAction action) const;
  double& q(State state, MutationAction action);
  std::span<const double> row(State state) const;
  std::span<double> row(State state);
  double max_q(State state) const;

 private:
  Datatype type_;
  std::vector<MutationAction> actions_;
  std::vector<double> values_;
};

/// One Q-table per leaf datatype appearing among a function's mutable slots.
class QTableSet {
 public:
  QTableSet() = default;
  static QTableSet for_slots(std::span<const SlotRef> slots);

  bool contains(Datatype type) const { return tables_.count(type) > 0; }
  QTable& table(Datatype type);
  const QTable& table(Datatype type) const;
  const std::map<Datatype, QTable>& tables() const noexcept { return tables_; }

 private:
  std::map<Datatype, QTable> tables_;
};

struct AgentConfig {
  std::size_t episodes = 500;
  std::size_t max_steps = 10;
  double epsilon0 = 1.0;
  double epsilon_decay = 0.01;
  double epsilon_min = 0.01;
  double alpha = 0.1;
  double gamma = 0.95;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a field is outside its domain. Zero episodes is
  /// accepted here (an empty training run); the CLI rejects it.
  void validate() const;
};

/// Epsilon-greedy choice. One uniform draw decides exploration; exploitation
/// breaks ties toward the lowest action index.
MutationAction select_action(const QTable& table, State state, double epsilon, Rng& rng);

/// Greedy action (epsilon = 0) without touching any random stream.
MutationAction greedy_action(const QTable& table, State state);

/// Q(s,a) <- Q(s,a) + alpha * (r + gamma * max_a' Q(s',a') - Q(s,a)); returns the new value.
double update_q(QTable& table, State state, MutationAction action, double reward, State next,
                double alpha, double gamma);

/// max(epsilon_min, epsilon * (1 - decay)).
double decay_epsilon(double epsilon, double decay, double epsilon_min);

}  // namespace fuzztherest
