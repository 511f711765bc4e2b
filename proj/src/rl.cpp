#include "fuzztherest/rl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fuzztherest/errors.hpp"

namespace fuzztherest {

std::string_view to_string(TransportFailure failure) noexcept {
  switch (failure) {
    case TransportFailure::Timeout: return "timeout";
    case TransportFailure::ConnectionRefused: return "connection-refused";
    case TransportFailure::ProtocolError: return "protocol-error";
  }
  return "protocol-error";
}

std::string_view to_string(State state) noexcept {
  switch (state) {
    case State::Init: return "INIT";
    case State::S1xx: return "1XX";
    case State::S2xx: return "2XX";
    case State::S3xx: return "3XX";
    case State::S4xx: return "4XX";
    case State::S5xx: return "5XX";
    case State::Transport: return "TRANSPORT";
  }
  return "INIT";
}

State classify_state(const Outcome& outcome) {
  if (std::holds_alternative<TransportFailure>(outcome)) return State::Transport;
  const int status = std::get<int>(outcome);
  if (status < 100 || status > 599) throw OutOfRangeStatus(status);
  switch (status / 100) {
    case 1: return State::S1xx;
    case 2: return State::S2xx;
    case 3: return State::S3xx;
    case 4: return State::S4xx;
    default: return State::S5xx;
  }
}

int reward(const Outcome& outcome) {
  switch (classify_state(outcome)) {
    case State::S2xx:
    case State::S3xx:
      return 5;
    case State::S4xx:
      return -20;
    case State::S5xx:
      return 10;
    default:
      return 0;
  }
}

QTable::QTable(Datatype type) : QTable(type, applicable_actions(type)) {}

QTable::QTable(Datatype type, std::vector<MutationAction> actions)
    : type_(type), actions_(std::move(actions)), values_(kStateCount * actions_.size(), 0.0) {
  if (actions_.empty()) throw std::invalid_argument("a Q-table needs at least one action");
}

std::size_t QTable::action_index(MutationAction action) const {
  auto it = std::find(actions_.begin(), actions_.end(), action);
  if (it == actions_.end()) {
    throw InapplicableAction(std::string(to_string(action)) + " is not in the " +
                             std::string(to_string(type_)) + " table");
  }
  return static_cast<std::size_t>(it - actions_.begin());
}

double QTable::q(State state, MutationAction action) const {
  return row(state)[action_index(action)];
}

double& QTable::q(State state, MutationAction action) {
  return row(state)[action_index(action)];
}

std::span<const double> QTable::row(State state) const {
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(state) * actions_.size(),
                                                  actions_.size());
}

std::span<double> QTable::row(State state) {
  return std::span<double>(values_).subspan(static_cast<std::size_t>(state) * actions_.size(),
                                            actions_.size());
}

double QTable::max_q(State state) const {
  const auto r = row(state);
  return *std::max_element(r.begin(), r.end());
}

QTableSet QTableSet::for_slots(std::span<const SlotRef> slots) {
  QTableSet set;
  for (const auto& slot : slots) {
    if (!set.contains(slot.type)) set.tables_.emplace(slot.type, QTable(slot.type));
  }
  return set;
}

QTable& QTableSet::table(Datatype type) {
  auto it = tables_.find(type);
  if (it == tables_.end()) throw std::out_of_range("no Q-table for " + std::string(to_string(type)));
  return it->second;
}

const QTable& QTableSet::table(Datatype type) const {
  auto it = tables_.find(type);
  if (it == tables_.end()) throw std::out_of_range("no Q-table for " + std::string(to_string(type)));
  return it->second;
}

void AgentConfig::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (max_steps == 0) throw ConfigError("max_steps must be positive");
  if (!in_unit(epsilon0)) throw ConfigError("epsilon must lie in [0, 1]");
  if (!in_unit(epsilon_decay)) throw ConfigError("epsilon decay must lie in [0, 1]");
  if (!in_unit(epsilon_min)) throw ConfigError("epsilon minimum must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
}

MutationAction greedy_action(const QTable& table, State state) {
  const auto r = table.row(state);
  std::size_t best = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i] > r[best]) best = i;
  }
  return table.actions()[best];
}

MutationAction select_action(const QTable& table, State state, double epsilon, Rng& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (u < epsilon) {
    std::uniform_int_distribution<std::size_t> pick(0, table.actions().size() - 1);
    return table.actions()[pick(rng)];
  }
  return greedy_action(table, state);
}

double update_q(QTable& table, State state, MutationAction action, double reward, State next,
                double alpha, double gamma) {
  double& cell = table.q(state, action);
  cell += alpha * (reward + gamma * table.max_q(next) - cell);
  return cell;
}

double decay_epsilon(double epsilon, double decay, double epsilon_min) {
  return std::max(epsilon_min, epsilon * (1.0 - decay));
}

}  // namespace fuzztherest
