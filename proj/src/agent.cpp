#include "fuzztherest/agent.hpp"

#include <set>

#include "fuzztherest/scenario.hpp"

namespace fuzztherest {

int EpisodeTrace::total_reward() const {
  int total = 0;
  for (const auto& step : steps) total += step.reward;
  return total;
}

std::optional<std::string> read_back_slot(const ApiFunction& creator, const ApiFunction& reader) {
  if (reader.method != HttpMethod::Get) return std::nullopt;
  const auto resource = primary_resource(creator);
  for (const auto& slot : leaf_slots(reader)) {
    if (slot.location == SlotLocation::Path && slot_resource(reader, slot) == resource) {
      return slot.path;
    }
  }
  return std::nullopt;
}

std::vector<SlotRef> mutable_slots(const ApiFunction& function,
                                   const std::map<std::string, std::string>& fixed) {
  auto slots = leaf_slots(function);
  std::erase_if(slots, [&](const SlotRef& s) { return fixed.count(s.path) > 0; });
  return slots;
}

namespace {

std::optional<HttpExchange> perform_read_back(
    const ApiFunction& creator, const std::vector<std::pair<std::string, FieldValue>>& harvested,
    AgentEnvironment& env, Rng& rng) {
  if (!env.read_back) return std::nullopt;
  const auto slot_path = read_back_slot(creator, *env.read_back);
  if (!slot_path) return std::nullopt;

  const auto resource = primary_resource(creator);
  const auto* template_leaf = find_leaf(*env.read_back, *slot_path);
  std::optional<FieldValue> id;
  for (const auto& [name, value] : harvested) {
    if (name != resource) continue;
    auto coerced = coerce_identifiers({value}, template_leaf->type);
    if (!coerced.empty()) {
      id = coerced.front();
      break;
    }
  }
  if (!id) return std::nullopt;

  ApiFunction reader = instantiate_function(*env.read_back, rng, env.instantiate);
  find_leaf(reader, *slot_path)->sample = *id;
  return env.executor.execute(build_request(reader, env.base_url, env.extra_headers));
}

}  // namespace

EpisodeTrace run_episode(const ApiFunction& function, AgentState& state, AgentEnvironment& env,
                         const AgentConfig& config, double epsilon, std::size_t episode_index,
                         Rng& rng) {
  EpisodeTrace trace;
  trace.epsilon = epsilon;

  ApiFunction current = instantiate_function(function, rng, env.instantiate);
  for (const auto& [slot, text] : env.fixed) {
    if (auto* leaf = find_leaf(current, slot)) apply_fixed_value(*leaf, text);
  }
  const auto slots = mutable_slots(function, env.fixed);

  State s = State::Init;
  for (std::size_t step = 0; step < config.max_steps; ++step) {
    StepRecord record;
    record.state_before = s;
    for (const auto& slot : slots) {
      record.actions[slot.path] = select_action(state.tables.table(slot.type), s, epsilon, rng);
    }
    current = mutate_function_inputs(current, record.actions, rng, env.dictionary, &env.store);
    const auto request = build_request(current, env.base_url, env.extra_headers);
    record.request_summary = request.summary();
    const auto exchange = env.executor.execute(request);

    record.outcome = exchange.outcome;
    record.reward = reward(exchange.outcome);
    record.state_after = classify_state(exchange.outcome);

    // A step's single reward credits every distinct (table, action) cell it used.
    std::set<std::pair<Datatype, MutationAction>> updated;
    for (const auto& slot : slots) {
      const auto action = record.actions[slot.path];
      if (!updated.emplace(slot.type, action).second) continue;
      auto& table = state.tables.table(slot.type);
      const double before = table.q(s, action);
      const double after =
          update_q(table, s, action, record.reward, record.state_after, config.alpha, config.gamma);
      record.q_deltas.push_back(QDelta{slot.type, action, before, after});
    }

    std::optional<HttpExchange> read_back;
    if (exchange.is_status_class(2) && function.is_creational()) {
      const auto harvested = env.store.harvest(function, exchange.response_body);
      state.identifiers_harvested += harvested.size();
      read_back = perform_read_back(function, harvested, env, rng);
    }
    if (record.state_after == State::Transport) ++state.transport_failures;

    FindingContext context{function.operation_id, function.is_creational(),
                           read_back ? &*read_back : nullptr, state.seen_success};
    if (auto fingerprint = record_finding(exchange, context)) {
      state.findings.push_back(Finding{*fingerprint, exchange, read_back, episode_index, step});
    }
    if (exchange.is_status_class(2)) state.seen_success = true;

    s = record.state_after;
    trace.steps.push_back(std::move(record));
    if (s == State::S5xx) break;
  }

  for (const auto& [type, table] : state.tables.tables()) {
    const auto row = table.row(State::Init);
    trace.init_q[type] = std::vector<double>(row.begin(), row.end());
  }
  return trace;
}

AgentResult train_agent(const ApiFunction& function, AgentEnvironment& env,
                        const AgentConfig& config) {
  config.validate();
  AgentState state;
  const auto slots = mutable_slots(function, env.fixed);
  state.tables = QTableSet::for_slots(slots);

  Rng rng(config.seed);
  AgentResult result;
  result.operation_id = function.operation_id;
  double epsilon = config.epsilon0;
  for (std::size_t episode = 0; episode < config.episodes; ++episode) {
    result.episodes.push_back(run_episode(function, state, env, config, epsilon, episode, rng));
    epsilon = decay_epsilon(epsilon, config.epsilon_decay, config.epsilon_min);
  }
  result.tables = std::move(state.tables);
  result.findings = std::move(state.findings);
  result.final_epsilon = epsilon;
  result.transport_failures = state.transport_failures;
  result.identifiers_harvested = state.identifiers_harvested;
  return result;
}

}  // namespace fuzztherest
