// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fuzztherest/agent.hpp"
#include "fuzztherest/mock_sut.hpp"
#include "fuzztherest/report.hpp"
#include "fuzztherest/runner.hpp"
#include "support.hpp"

using namespace fuzztherest;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Verdict()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_s) {
    v.pass = false;
    v.detail += " (over time budget " + std::to_string(budget_s) + " s)";
  }
  if (!v.pass) ++g_failures;
  char elapsed[32];
  std::snprintf(elapsed, sizeof elapsed, "%.2fs", secs);
  std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << title << " | " << v.detail << " | "
            << elapsed << std::endl;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream(p, std::ios::binary) << content;
}

// report.json with the timing object cut out textually.
std::string without_timing(const std::string& json) {
  const auto start = json.find("  \"timing\": {");
  if (start == std::string::npos) return json;
  const auto end = json.find("\n  },\n", start);
  return json.substr(0, start) + json.substr(end + 6);
}

AgentConfig table1(std::uint64_t seed) {
  AgentConfig c;
  c.episodes = 500;
  c.max_steps = 10;
  c.epsilon0 = 1.0;
  c.epsilon_decay = 0.01;
  c.epsilon_min = 0.01;
  c.seed = seed;
  return c;
}

FieldValue random_value(Datatype type, Rng& rng) {
  switch (type) {
    case Datatype::Integer: return FieldValue::integer(static_cast<std::int64_t>(rng()));
    case Datatype::Float: {
      double d = 0;
      const auto bits = rng();
      std::memcpy(&d, &bits, sizeof d);
      return FieldValue::floating(d);
    }
    case Datatype::Boolean: return FieldValue::boolean(rng() & 1);
    case Datatype::String: {
      std::string s(rng() % 40, ' ');
      for (auto& c : s) c = static_cast<char>(rng());
      return FieldValue::string(s);
    }
    default: {
      Bytes b(rng() % 40);
      for (auto& c : b) c = static_cast<std::uint8_t>(rng());
      return FieldValue::bytes(b);
    }
  }
}

bool same(const FieldValue& a, const FieldValue& b) {
  return a.datatype() == b.datatype() && a.canonical_bytes() == b.canonical_bytes();
}

struct FullRun {
  int exit_code = -1;
  std::string report_json;
  std::string log;
};

FullRun full_run(const std::filesystem::path& dir, int port, std::uint64_t seed, const std::string& scenarios = {}) {
  MockSut sut;
  sut.start(port);
  write_file(dir / "mock.yaml", mock_oas_document());
  write_file(dir / "scenarios.json", scenarios.empty() ? mock_scenarios_document(sut.base_url()) : scenarios);
  RunConfig config;
  config.oas_path = dir / "mock.yaml";
  config.scenarios_path = dir / "scenarios.json";
  config.report_dir = dir / "report";
  config.agent = table1(seed);
  std::ostringstream log;
  FullRun out;
  out.exit_code = run(config, log);
  sut.stop();
  out.log = log.str();
  out.report_json = slurp(dir / "report" / "report.json");
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fuzztherest_acceptance_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int free_port() {
  MockSut probe;
  probe.start();
  const int port = probe.port();
  probe.stop();
  return port;
}

}  // namespace

int main() {
  std::cout << "fuzztherest acceptance suite" << std::endl;

  criterion(1, "reward table over status codes 100-599 (exact)", 1.0, [] {
    int mismatches = 0;
    for (int code = 100; code <= 599; ++code) {
      const int expected = code / 100 == 1 ? 0 : code / 100 == 2 ? 5 : code / 100 == 3 ? 5 : code / 100 == 4 ? -20 : 10;
      if (reward(code) != expected) ++mismatches;
    }
    return Verdict{mismatches == 0, std::to_string(500 - mismatches) + "/500 codes match 0/+5/+5/-20/+10"};
  });

  criterion(2, "Bellman update vs independent oracle (|diff| <= 1e-12)", 1.0, [] {
    Rng rng(2024);
    std::uniform_real_distribution<double> qd(-100, 100), rd(-20, 10), ad(1e-6, 1.0), gd(0.0, 0.999999);
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      QTable table(Datatype::String);
      for (auto s : kAllStates) {
        for (auto& q : table.row(s)) q = qd(rng);
      }
      const auto s = kAllStates[rng() % kStateCount];
      const auto next = kAllStates[1 + rng() % (kStateCount - 1)];
      const auto a = table.actions()[rng() % table.actions().size()];
      const double r = rd(rng), alpha = ad(rng), gamma = gd(rng);
      const double q = table.q(s, a);
      const auto row = table.row(next);
      const double oracle = q + alpha * (r + gamma * *std::max_element(row.begin(), row.end()) - q);
      const double got = update_q(table, s, a, r, next, alpha, gamma);
      worst = std::max({worst, std::abs(got - oracle), std::abs(table.q(s, a) - oracle)});
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "1000 tuples, max |diff| = %.3g", worst);
    return Verdict{worst <= 1e-12, buf};
  });

  criterion(3, "epsilon schedule max(0.01, 0.99^k), floor active at k=500 (exact)", 1.0, [] {
    auto stub = testing::StubExecutor::always(500);
    IdentifierStore store;
    const auto dict = Dictionary::with_defaults();
    AgentEnvironment env{stub, store, dict, "http://sut", {}, {}, std::nullopt, {}};
    auto config = table1(3);
    config.episodes = 501;
    const auto fns = testing::petstore();
    const auto result = train_agent(testing::find_function(fns, "getInventory"), env, config);
    double oracle = 1.0;
    int exact = 0;
    double worst_closed = 0;
    for (std::size_t k = 0; k < result.episodes.size(); ++k) {
      if (k > 0) oracle = std::max(0.01, oracle * (1.0 - 0.01));
      if (result.episodes[k].epsilon == oracle) ++exact;
      worst_closed = std::max(worst_closed, std::abs(result.episodes[k].epsilon -
                                                     std::max(0.01, std::pow(0.99, static_cast<double>(k)))));
    }
    const bool floor = result.episodes.at(500).epsilon == 0.01 && std::pow(0.99, 500.0) < 0.01;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/501 episodes equal the recurrence bit-for-bit, max |eps - closed form| = %.2g, eps(500) = %g",
                  exact, worst_closed, result.episodes.at(500).epsilon);
    return Verdict{exact == 501 && floor && worst_closed <= 1e-12, buf};
  });

  criterion(4, "mutator properties, >=1000 cases per datatype", 10.0, [] {
    const auto dict = Dictionary::with_defaults();
    std::map<std::string, int> failures;
    std::map<Datatype, int> cases;
    for (auto type : kLeafDatatypes) {
      const DictionaryView view{dict.entries(type), {}};
      Rng gen(static_cast<std::uint64_t>(type) + 100);
      for (int i = 0; i < 1000; ++i) {
        const auto value = random_value(type, gen);
        ++cases[type];
        for (auto action : applicable_actions(type)) {
          Rng a(i * 8 + static_cast<int>(action)), b(i * 8 + static_cast<int>(action));
          const auto x = mutate(value, action, a, view);
          if (x.datatype() != type) ++failures["type"];
          if (!same(x, mutate(value, action, b, view))) ++failures["determinism"];
          const auto in = value.canonical_bytes();
          const auto out = x.canonical_bytes();
          if (action == MutationAction::ByteShuffle) {
            auto s1 = in, s2 = out;
            std::sort(s1.begin(), s1.end());
            std::sort(s2.begin(), s2.end());
            if (s1 != s2) ++failures["shuffle"];
          }
          if (action == MutationAction::Truncate && out.size() > in.size()) ++failures["truncate"];
        }
        std::vector<std::size_t> bits;
        const auto nbits = value.canonical_bytes().size() * 8;
        for (std::size_t k = 0; k < 4 && nbits > 0; ++k) {
          const auto bit = static_cast<std::size_t>(gen() % nbits);
          if (std::find(bits.begin(), bits.end(), bit) == bits.end()) bits.push_back(bit);
        }
        if (!same(flip_bits(flip_bits(value, bits), bits), value)) ++failures["bitflip"];
      }
    }
    std::string detail = "type/determinism/shuffle/bitflip/truncate over";
    for (const auto& [type, n] : cases) detail += " " + std::string(to_string(type)) + "=" + std::to_string(n);
    int total = 0;
    for (const auto& [name, n] : failures) {
      detail += "; " + name + " failures " + std::to_string(n);
      total += n;
    }
    return Verdict{total == 0, detail};
  });

  criterion(5, "always-500 stub: every trace has length 1 for max_steps 5 and 10", 5.0, [] {
    const auto fns = testing::petstore();
    std::size_t traces = 0, bad = 0;
    for (std::size_t max_steps : {5u, 10u}) {
      for (const char* op : {"addPet", "getPetById", "findPetsByTags", "uploadFile"}) {
        auto stub = testing::StubExecutor::always(500, "Internal Server Error");
        IdentifierStore store;
        const auto dict = Dictionary::with_defaults();
        AgentEnvironment env{stub, store, dict, "http://sut", {}, {}, std::nullopt, {}};
        auto config = table1(5);
        config.max_steps = max_steps;
        const auto result = train_agent(testing::find_function(fns, op), env, config);
        for (const auto& ep : result.episodes) {
          ++traces;
          if (ep.steps.size() != 1) ++bad;
        }
      }
    }
    return Verdict{bad == 0 && traces == 4000, std::to_string(traces - bad) + "/" + std::to_string(traces) + " traces of length 1"};
  });

  const int port = free_port();
  const auto dir = scratch("e2e");
  FullRun first;

  criterion(6, "seeded mock run: >=5/6 archetypes incl. 2XX white-space, <=10 unique records", 300.0, [&] {
    first = full_run(dir, port, 42);
    const auto j = nlohmann::json::parse(first.report_json);
    std::set<std::pair<std::string, std::string>> found;
    for (const auto& v : j["vulnerabilities"]) found.insert({v["status_class"].get<std::string>(), v["signature"].get<std::string>()});
    int hits = 0;
    bool whitespace = false;
    std::string missing;
    for (const auto& info : seeded_vulnerabilities()) {
      if (found.count({std::string(to_string(info.status_class)), std::string(info.signature)})) {
        ++hits;
        if (info.id == SeededVuln::InvalidWhitespaceStore) whitespace = true;
      } else {
        missing += " " + std::string(info.name);
      }
    }
    std::size_t server_errors = 0;
    for (const auto& a : j["agents"]) {
      for (const auto& n : a["series"]["status_counts"]["5XX"]) server_errors += n.get<std::size_t>();
    }
    const auto records = j["vulnerabilities"].size();
    std::string detail = std::to_string(hits) + "/6 archetypes" + (whitespace ? " incl. 2XX white-space" : "") +
                         ", " + std::to_string(server_errors) + " 5XX exchanges, " +
                         std::to_string(j["summary"]["findings"].get<std::size_t>()) + " findings -> " +
                         std::to_string(records) + " records, exit " + std::to_string(first.exit_code);
    if (!missing.empty()) detail += ", missing:" + missing;
    return Verdict{hits >= 5 && whitespace && records <= 10 && server_errors >= 1000 && first.exit_code == 1, detail};
  });

  criterion(7, "fetch-by-id learning: last 100 > first 100 (2XX+5XX), greedy INIT integer = dictionary", 120.0, [] {
    const auto sdir = scratch("learning");
    const int p = free_port();
    const std::string scenarios = R"({"base_url": "http://127.0.0.1:)" + std::to_string(p) +
                                  R"(", "scenarios": [{"name": "pet", "steps": ["addPet", "getPetById"]}]})";
    const auto r = full_run(sdir, p, 42, scenarios);
    const auto j = nlohmann::json::parse(r.report_json);
    const nlohmann::json* agent = nullptr;
    for (const auto& a : j["agents"]) {
      if (a["operation_id"] == "getPetById") agent = &a;
    }
    if (agent == nullptr) return Verdict{false, "no getPetById agent in report"};
    const auto& counts = (*agent)["series"]["status_counts"];
    const std::size_t n = counts["2XX"].size();
    auto window = [&](std::size_t from) {
      std::size_t sum = 0;
      for (std::size_t i = from; i < from + 100; ++i) sum += counts["2XX"][i].get<std::size_t>() + counts["5XX"][i].get<std::size_t>();
      return sum;
    };
    const auto early = window(0), late = window(n - 100);
    const std::string greedy = (*agent)["final_q_tables"]["integer"]["greedy_at_init"];

    // Brute force from INIT: every integer action applied to fresh samples of
    // petId against a store holding the pets the run created.
    const auto oas = parse_oas(mock_oas_document(), OasFormat::Yaml);
    const auto& get = testing::find_function(oas.functions, "getPetById");
    MockApi api;
    IdentifierStore store;
    for (int i = 0; i < 20; ++i) {
      const auto created = api.handle("POST", "/pet", R"({"name":"p)" + std::to_string(i) + R"(","status":"available"})");
      store.harvest(testing::find_function(oas.functions, "addPet"), created.body);
    }
    const auto dict = Dictionary::with_defaults();
    std::set<std::string> productive;
    std::string tally;
    for (auto action : applicable_actions(Datatype::Integer)) {
      int non4xx = 0;
      for (int i = 0; i < 2000; ++i) {
        Rng rng(derive_seed(7, {static_cast<std::uint64_t>(action), static_cast<std::uint64_t>(i)}));
        const auto sample = instantiate_function(get, rng);
        const auto mutated = mutate_function_inputs(sample, {{"path.petId", action}}, rng, dict, &store);
        const auto req = build_request(mutated, "");
        if (api.handle("GET", req.url, "").status / 100 != 4) ++non4xx;
      }
      if (non4xx > 0) productive.insert(std::string(to_string(action)));
      tally += " " + std::string(to_string(action)) + "=" + std::to_string(non4xx);
    }
    const bool only_dictionary = productive == std::set<std::string>{"dictionary"};
    const std::string detail = "2XX+5XX first 100 = " + std::to_string(early) + ", last 100 = " + std::to_string(late) +
                               ", greedy " + greedy + ", non-4XX per action over 2000 draws:" + tally;
    return Verdict{late > early && greedy == "dictionary" && only_dictionary, detail};
  });

  criterion(8, "two identical seeded runs give byte-identical report.json modulo timing", 300.0, [&] {
    if (first.report_json.empty()) return Verdict{false, "first run missing"};
    const auto again = full_run(scratch("e2e"), port, 42);
    const auto a = without_timing(first.report_json), b = without_timing(again.report_json);
    const bool cut = a.size() < first.report_json.size();
    return Verdict{cut && a == b, std::to_string(a.size()) + " bytes compared, " + (a == b ? "identical" : "different")};
  });

  std::cout << (g_failures == 0 ? "ALL PASS" : std::to_string(g_failures) + " FAILED") << std::endl;
  return g_failures == 0 ? 0 : 1;
}
