#pragma once

#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "fuzztherest/executor.hpp"
#include "fuzztherest/oas.hpp"

namespace fuzztherest::testing {

inline std::string fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline std::vector<ApiFunction> petstore() {
  return parse_oas(fixture("petstore3.yaml"), OasFormat::Yaml).functions;
}

inline const ApiFunction& find_function(const std::vector<ApiFunction>& fns, const std::string& id) {
  for (const auto& f : fns) {
    if (f.operation_id == id) return f;
  }
  throw std::runtime_error("no function " + id);
}

/// Answers every request through a callback and records what it saw.
class StubExecutor final : public Executor {
 public:
  using Handler = std::function<HttpExchange(const HttpRequest&)>;

  explicit StubExecutor(Handler handler) : handler_(std::move(handler)) {}

  static StubExecutor always(int status, std::string body = {}) {
    return StubExecutor([status, body](const HttpRequest& r) {
      HttpExchange e;
      e.request = r;
      e.outcome = status;
      e.response_body = body;
      return e;
    });
  }

  HttpExchange execute(const HttpRequest& request) override {
    std::lock_guard lock(mutex_);
    requests.push_back(request);
    return handler_(request);
  }

  std::vector<HttpRequest> requests;

 private:
  Handler handler_;
  std::mutex mutex_;
};

}  // namespace fuzztherest::testing
