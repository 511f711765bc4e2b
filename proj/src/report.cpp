#include "fuzztherest/report.hpp"

#include <httplib.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fuzztherest/errors.hpp"

namespace fuzztherest {

using nlohmann::ordered_json;

namespace {

std::size_t class_slot(State state) {
  for (std::size_t i = 0; i < kResponseClasses.size(); ++i) {
    if (kResponseClasses[i] == state) return i;
  }
  return 0;
}

ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return FieldValue::floating(v).to_text();
}

ordered_json value_json(const FieldValue& v) {
  switch (v.datatype()) {
    case Datatype::Integer: return v.as_integer();
    case Datatype::Float: return number_json(v.as_float());
    case Datatype::Boolean: return v.as_boolean();
    case Datatype::String: return v.as_string();
    case Datatype::Byte: {
      const auto& b = v.as_bytes();
      return httplib::detail::base64_encode(std::string(b.begin(), b.end()));
    }
    default: return nullptr;
  }
}

ordered_json outcome_json(const Outcome& outcome) {
  if (std::holds_alternative<int>(outcome)) return std::get<int>(outcome);
  return std::string(to_string(std::get<TransportFailure>(outcome)));
}

ordered_json exchange_json(const HttpExchange& e) {
  ordered_json headers = ordered_json::array();
  for (const auto& [name, value] : e.request.headers) headers.push_back({name, value});
  return ordered_json{{"method", std::string(to_string(e.request.method))},
                      {"url", e.request.url},
                      {"headers", headers},
                      {"body", e.request.body},
                      {"outcome", outcome_json(e.outcome)},
                      {"response_body", e.response_body.substr(0, 4096)}};
}

ordered_json series_json(const AgentReport& agent) {
  ordered_json reward = ordered_json::array(), cumulative = ordered_json::array(),
               epsilon = ordered_json::array(), steps = ordered_json::array(),
               q_change = ordered_json::array();
  ordered_json status = ordered_json::object();
  for (auto s : kResponseClasses) status[std::string(to_string(s))] = ordered_json::array();
  ordered_json actions = ordered_json::object();
  for (auto a : kAllActions) actions[std::string(to_string(a))] = ordered_json::array();
  ordered_json init_q = ordered_json::object();
  for (const auto& [type, table] : agent.final_tables.tables()) {
    init_q[std::string(to_string(type))] = ordered_json::array();
  }

  for (const auto& ep : agent.episodes) {
    reward.push_back(ep.reward);
    cumulative.push_back(ep.cumulative_reward);
    epsilon.push_back(ep.epsilon);
    steps.push_back(ep.steps);
    q_change.push_back(ep.q_change);
    for (std::size_t i = 0; i < kResponseClasses.size(); ++i) {
      status[std::string(to_string(kResponseClasses[i]))].push_back(ep.status_counts[i]);
    }
    for (auto a : kAllActions) {
      const auto it = ep.action_counts.find(a);
      actions[std::string(to_string(a))].push_back(it == ep.action_counts.end() ? 0 : it->second);
    }
    for (const auto& [type, row] : ep.init_q) init_q[std::string(to_string(type))].push_back(row);
  }
  return ordered_json{{"reward", reward},       {"cumulative_reward", cumulative},
                      {"epsilon", epsilon},     {"steps", steps},
                      {"status_counts", status}, {"action_counts", actions},
                      {"init_q", init_q},       {"q_change", q_change}};
}

ordered_json tables_json(const QTableSet& tables) {
  ordered_json out = ordered_json::object();
  for (const auto& [type, table] : tables.tables()) {
    ordered_json actions = ordered_json::array();
    for (auto a : table.actions()) actions.push_back(std::string(to_string(a)));
    ordered_json rows = ordered_json::object();
    for (auto s : kAllStates) {
      const auto row = table.row(s);
      rows[std::string(to_string(s))] = std::vector<double>(row.begin(), row.end());
    }
    out[std::string(to_string(type))] = ordered_json{
        {"actions", actions},
        {"greedy_at_init", std::string(to_string(greedy_action(table, State::Init)))},
        {"q", rows}};
  }
  return out;
}

std::string cell(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (c == '|') {
      out += "\\|";
    } else if (c < 0x20 || c == 0x7F) {
      out += ' ';
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

}  // namespace

AgentReport summarize_agent(const AgentResult& result, const std::string& scenario) {
  AgentReport report;
  report.scenario = scenario;
  report.operation_id = result.operation_id;
  report.final_tables = result.tables;
  report.final_epsilon = result.final_epsilon;
  report.findings = result.findings.size();
  report.transport_failures = result.transport_failures;
  report.identifiers_harvested = result.identifiers_harvested;
  long long running = 0;
  for (const auto& trace : result.episodes) {
    EpisodeSummary ep;
    ep.reward = trace.total_reward();
    running += ep.reward;
    ep.cumulative_reward = running;
    ep.epsilon = trace.epsilon;
    ep.steps = trace.steps.size();
    for (const auto& step : trace.steps) {
      ++ep.status_counts[class_slot(step.state_after)];
      for (const auto& [slot, action] : step.actions) ++ep.action_counts[action];
      for (const auto& d : step.q_deltas) ep.q_change += std::abs(d.after - d.before);
    }
    ep.init_q = trace.init_q;
    report.episodes.push_back(std::move(ep));
  }
  return report;
}

ordered_json report_json(const RunReport& report) {
  ordered_json out;
  out["tool"] = "fuzztherest";
  out["timing"] = ordered_json{{"started_at", report.started_at},
                               {"finished_at", report.finished_at},
                               {"duration_ms", report.duration_ms}};
  out["config"] = report.config;
  out["summary"] = ordered_json{{"agents", report.agents.size()},
                                {"requests", report.total_requests},
                                {"findings", report.total_findings},
                                {"vulnerabilities", report.vulnerabilities.size()}};

  ordered_json vulns = ordered_json::array();
  for (const auto& v : report.vulnerabilities) {
    ordered_json examples = ordered_json::array();
    for (const auto& f : v.examples) {
      ordered_json ex{{"operation_id", f.fingerprint.operation_id},
                      {"episode", f.episode},
                      {"step", f.step},
                      {"exchange", exchange_json(f.exchange)}};
      if (f.read_back) ex["read_back"] = exchange_json(*f.read_back);
      examples.push_back(std::move(ex));
    }
    const auto& first = v.examples.front();
    vulns.push_back(ordered_json{
        {"name", v.name},
        {"status_code", v.status_code},
        {"status_class", std::string(to_string(v.fingerprint.status_class))},
        {"description", v.description},
        {"faulty_framework", v.faulty_framework},
        {"signature", v.fingerprint.signature},
        {"operations", std::vector<std::string>(v.operations.begin(), v.operations.end())},
        {"count", v.count},
        {"first_seen",
         {{"operation_id", first.fingerprint.operation_id}, {"episode", first.episode}, {"step", first.step}}},
        {"examples", examples}});
  }
  out["vulnerabilities"] = vulns;

  ordered_json agents = ordered_json::array();
  for (const auto& a : report.agents) {
    agents.push_back(ordered_json{{"scenario", a.scenario},
                                  {"operation_id", a.operation_id},
                                  {"episodes", a.episodes.size()},
                                  {"final_epsilon", a.final_epsilon},
                                  {"findings", a.findings},
                                  {"transport_failures", a.transport_failures},
                                  {"identifiers_harvested", a.identifiers_harvested},
                                  {"series", series_json(a)},
                                  {"final_q_tables", tables_json(a.final_tables)}});
  }
  out["agents"] = agents;

  ordered_json ids = ordered_json::object();
  for (const auto& [resource, values] : report.identifiers) {
    ordered_json list = ordered_json::array();
    for (const auto& v : values) list.push_back(value_json(v));
    ids[resource] = list;
  }
  out["identifiers"] = ids;
  out["warnings"] = report.warnings;
  return out;
}

std::string report_markdown(const RunReport& report) {
  std::ostringstream md;
  md << "# Fuzzing report\n\n";
  md << "- Started: " << report.started_at << "\n";
  md << "- Finished: " << report.finished_at << "\n";
  md << "- Duration: " << report.duration_ms << " ms\n";
  md << "- Agents: " << report.agents.size() << "\n";
  md << "- Requests: " << report.total_requests << "\n";
  md << "- Findings: " << report.total_findings << "\n\n";

  if (report.vulnerabilities.empty()) {
    md << "## No vulnerabilities found\n\n"
          "No request produced a 5XX response, an unfetchable created resource or a transport "
          "failure after earlier successes.\n\n";
  } else {
    md << "## Vulnerabilities\n\n";
    md << "| Vulnerability | Status Code | Description | Faulty Framework | Operations | Count |\n";
    md << "|---|---|---|---|---|---|\n";
    for (const auto& v : report.vulnerabilities) {
      std::string ops;
      for (const auto& op : v.operations) ops += (ops.empty() ? "" : ", ") + op;
      md << "| " << cell(v.name) << " | " << v.status_code << " | " << cell(v.description) << " | "
         << cell(v.faulty_framework) << " | " << cell(ops) << " | " << v.count << " |\n";
    }
    md << "\n";
  }

  if (!report.warnings.empty()) {
    md << "## Warnings\n\n";
    for (const auto& w : report.warnings) md << "- " << cell(w) << "\n";
    md << "\n";
  }

  md << "## Agents\n\n";
  for (const auto& a : report.agents) {
    md << "### " << a.scenario << " / " << a.operation_id << "\n\n";
    const auto n = a.episodes.size();
    md << "- Episodes: " << n << ", final epsilon " << fixed(a.final_epsilon, 4) << "\n";
    if (n > 0) {
      const auto window = std::min<std::size_t>(100, n);
      auto totals = [&](std::size_t from) {
        std::array<std::size_t, 6> sum{};
        double reward = 0;
        for (std::size_t i = from; i < from + window; ++i) {
          for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += a.episodes[i].status_counts[k];
          reward += a.episodes[i].reward;
        }
        std::ostringstream os;
        for (std::size_t k = 0; k < sum.size(); ++k) {
          os << (k ? ", " : "") << to_string(kResponseClasses[k]) << " " << sum[k];
        }
        os << "; mean reward " << fixed(reward / static_cast<double>(window), 2);
        return os.str();
      };
      md << "- First " << window << " episodes: " << totals(0) << "\n";
      md << "- Last " << window << " episodes: " << totals(n - window) << "\n";
    }
    for (const auto& [type, table] : a.final_tables.tables()) {
      const auto best = greedy_action(table, State::Init);
      md << "- " << to_string(type) << " table: greedy at INIT " << to_string(best) << " (Q "
         << fixed(table.q(State::Init, best), 3) << ")\n";
    }
    md << "- Findings: " << a.findings << ", transport failures: " << a.transport_failures
       << ", identifiers harvested: " << a.identifiers_harvested << "\n\n";
  }
  return md.str();
}

void emit_report(const RunReport& report, const std::filesystem::path& output_dir) {
  std::error_code ec;
  std::filesystem::create_directories(output_dir, ec);
  if (ec) throw IoError("cannot create " + output_dir.string() + ": " + ec.message());

  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = output_dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    out.close();
    if (!out) throw IoError("cannot write " + path.string());
  };
  write("report.json",
        report_json(report).dump(2, ' ', false, ordered_json::error_handler_t::replace) + "\n");
  write("report.md", report_markdown(report));
}

}  // namespace fuzztherest
