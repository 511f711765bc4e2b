#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/report.hpp"
#include "support.hpp"

using namespace fuzztherest;
using fuzztherest::testing::find_function;
using fuzztherest::testing::StubExecutor;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("fuzztherest_report_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

AgentResult train(StubExecutor& stub, std::size_t episodes) {
  static const auto fns = fuzztherest::testing::petstore();
  IdentifierStore store;
  const auto dict = Dictionary::with_defaults();
  AgentEnvironment env{stub, store, dict, "http://sut", {}, {}, std::nullopt, {}};
  AgentConfig config;
  config.episodes = episodes;
  config.max_steps = 4;
  config.seed = 5;
  return train_agent(find_function(fns, "getPetById"), env, config);
}

RunReport report_from(const AgentResult& result) {
  RunReport r;
  r.config = {{"seed", 5}};
  r.started_at = "2024-01-01T00:00:00Z";
  r.finished_at = "2024-01-01T00:00:01Z";
  r.agents.push_back(summarize_agent(result, "pet"));
  r.total_findings = result.findings.size();
  r.vulnerabilities = dedupe(result.findings);
  for (const auto& ep : result.episodes) r.total_requests += ep.steps.size();
  return r;
}

}  // namespace

TEST(SummarizeAgent, SeriesMatchTrace) {
  auto stub = StubExecutor::always(404);
  const auto result = train(stub, 12);
  const auto a = summarize_agent(result, "pet");
  ASSERT_EQ(a.episodes.size(), 12u);
  long long running = 0;
  for (std::size_t i = 0; i < a.episodes.size(); ++i) {
    const auto& ep = a.episodes[i];
    EXPECT_EQ(ep.reward, -80);
    running += ep.reward;
    EXPECT_EQ(ep.cumulative_reward, running);
    EXPECT_EQ(ep.steps, 4u);
    EXPECT_EQ(ep.status_counts[3], 4u);
    EXPECT_EQ(ep.epsilon, result.episodes[i].epsilon);
    std::size_t actions = 0;
    for (const auto& [action, n] : ep.action_counts) actions += n;
    EXPECT_EQ(actions, 4u);
  }
}

TEST(Report, NoVulnerabilitiesSection) {
  auto stub = StubExecutor::always(404);
  const auto report = report_from(train(stub, 3));
  const auto md = report_markdown(report);
  EXPECT_NE(md.find("## No vulnerabilities found"), std::string::npos);
  EXPECT_EQ(md.find("| Vulnerability |"), std::string::npos);
  const auto j = report_json(report);
  EXPECT_TRUE(j["vulnerabilities"].empty());
  EXPECT_EQ(j["summary"]["requests"], 12);
}

TEST(Report, VulnerabilityTable) {
  auto stub = StubExecutor::always(500, R"({"code":500,"message":"NumberFormatException: For input string: \"x|y\""})");
  const auto report = report_from(train(stub, 5));
  const auto md = report_markdown(report);
  EXPECT_NE(md.find("| Vulnerability | Status Code | Description | Faulty Framework | Operations | Count |"),
            std::string::npos);
  EXPECT_NE(md.find("| Number Format | 500 | For input string: \"x\\|y\" | Not applicable | getPetById | 5 |"),
            std::string::npos);
  const auto j = report_json(report);
  ASSERT_EQ(j["vulnerabilities"].size(), 1u);
  const auto& v = j["vulnerabilities"][0];
  EXPECT_EQ(v["count"], 5);
  EXPECT_EQ(v["signature"], "numberformatexception");
  EXPECT_EQ(v["examples"].size(), 3u);
  EXPECT_EQ(v["first_seen"]["episode"], 0);
  const auto& agent = j["agents"][0];
  EXPECT_EQ(agent["series"]["reward"].size(), 5u);
  EXPECT_EQ(agent["series"]["status_counts"]["5XX"].size(), 5u);
  EXPECT_TRUE(agent["final_q_tables"].contains("integer"));
}

TEST(EmitReport, ByteIdenticalOnReemit) {
  auto stub = StubExecutor::always(500, "Boom");
  const auto report = report_from(train(stub, 4));
  const auto dir = temp_dir("reemit");
  emit_report(report, dir);
  const auto json1 = slurp(dir / "report.json");
  const auto md1 = slurp(dir / "report.md");
  emit_report(report, dir);
  EXPECT_EQ(slurp(dir / "report.json"), json1);
  EXPECT_EQ(slurp(dir / "report.md"), md1);
  EXPECT_FALSE(nlohmann::json::parse(json1).is_discarded());
  std::filesystem::remove_all(dir);
}

TEST(EmitReport, UnwritableDirectory) {
  const auto dir = temp_dir("blocked");
  std::filesystem::create_directories(dir.parent_path());
  { std::ofstream(dir.string()) << "file"; }
  EXPECT_THROW(emit_report(RunReport{}, dir / "sub"), IoError);
  std::filesystem::remove(dir);
}
