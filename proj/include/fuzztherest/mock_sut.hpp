#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "fuzztherest/rl.hpp"
#include "fuzztherest/schema.hpp"

namespace fuzztherest {

enum class SeededVuln {
  StringToNumber,
  MaliciousContent,
  IllegalSurrogatePair,
  UnmatchedSurrogatePair,
  InvalidWhitespaceStore,
  FetchStatusError,
};

struct SeededVulnInfo {
  SeededVuln id;
  std::string_view name;
  int status;
  /// Status class under which the fuzzer reports it.
  State status_class;
  std::string_view description;
  /// Normalized error signature the fuzzer derives from the error body.
  std::string_view signature;
};

const std::array<SeededVulnInfo, 6>& seeded_vulnerabilities();

struct MockSutOptions {
  std::uint64_t seed = 0;
  /// When false every seeded fault answers 400 instead.
  bool vulnerabilities = true;
};

struct MockResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// In-memory pet/order/user API behind the mock server. Thread-safe; ids are
/// sequential from 1 per instance.
class MockApi {
 public:
  explicit MockApi(MockSutOptions options = {});

  /// `target` is the raw request-target (percent-encoded path and query).
  MockResponse handle(std::string_view method, std::string_view target, std::string_view body);

 private:
  struct Pet {
    std::int64_t id;
    std::string name;
    std::string status;
  };
  struct Order {
    std::int64_t id;
    std::int64_t pet_id;
    std::int64_t quantity;
    std::string status;
    bool complete;
  };
  struct User {
    std::int64_t id;
    std::string username;
    std::string email;
    std::string password;
    std::int64_t user_status;
  };

  MockResponse dispatch(std::string_view operation, const std::vector<std::string>& captures,
                        const std::map<std::string, std::string>& query, std::string_view body);

  MockSutOptions options_;
  std::string session_token_;
  std::mutex mutex_;
  std::int64_t next_pet_ = 1;
  std::int64_t next_order_ = 1;
  std::int64_t next_user_ = 1;
  std::map<std::int64_t, Pet> pets_;
  std::map<std::int64_t, Order> orders_;
  std::map<std::string, User> users_;
};

/// Path templates served by the mock, with their methods.
std::vector<std::pair<HttpMethod, std::string>> mock_routes();

/// OpenAPI 3 (YAML) description of the mock API.
std::string mock_oas_document();

/// CRUD-ordered pet, store and user scenarios against `base_url`.
std::string mock_scenarios_document(std::string_view base_url);

/// The mock API served over HTTP/1.1 on 127.0.0.1.
class MockSut {
 public:
  explicit MockSut(MockSutOptions options = {});
  ~MockSut();
  MockSut(const MockSut&) = delete;
  MockSut& operator=(const MockSut&) = delete;

  /// Binds (port 0 picks an ephemeral port) and serves on a background
  /// thread with a fresh store. Throws BindError.
  void start(int port = 0);
  void stop();

  int port() const noexcept { return port_; }
  std::string base_url() const;

 private:
  struct Server;
  MockSutOptions options_;
  std::shared_ptr<MockApi> api_;
  std::unique_ptr<Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace fuzztherest
