#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fuzztherest/rl.hpp"
#include "fuzztherest/schema.hpp"

namespace fuzztherest {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

struct HttpRequest {
  HttpMethod method = HttpMethod::Get;
  std::string url;
  HeaderList headers;
  std::string body;

  std::string summary() const;
};

inline constexpr std::size_t kMaxStoredBody = 64 * 1024;

struct HttpExchange {
  HttpRequest request;
  Outcome outcome = TransportFailure::ProtocolError;
  /// First 64 KiB of the response body.
  std::string response_body;
  double latency_ms = 0.0;

  bool is_status_class(int hundreds) const {
    return std::holds_alternative<int>(outcome) && std::get<int>(outcome) / 100 == hundreds;
  }
};

/// RFC 3986 percent-encoding; only unreserved characters pass through.
std::string percent_encode(std::string_view bytes);

/// Serializes an instantiated schema to JSON text. Surrogate code points
/// encoded in the string bytes become \uXXXX escapes, invalid UTF-8 is
/// passed through verbatim, NaN/Infinity are written as bare tokens and
/// Byte values are base64-encoded.
std::string serialize_json(const SchemaNode& node);

/// Builds the concrete request for an instantiated function. Pure; throws
/// MissingSample when a leaf has no sample.
HttpRequest build_request(const ApiFunction& function, std::string_view base_url,
                          const HeaderList& extra_headers = {});

/// Sends requests and reports their outcome. Implementations never throw
/// for HTTP-level errors and never retry.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual HttpExchange execute(const HttpRequest& request) = 0;
};

/// HTTP/1.1 client facade with a per-origin keep-alive connection pool.
class HttpExecutor final : public Executor {
 public:
  explicit HttpExecutor(int timeout_ms = 5000);
  ~HttpExecutor() override;

  HttpExchange execute(const HttpRequest& request) override;

 private:
  struct Pool;
  int timeout_ms_;
  std::unique_ptr<Pool> pool_;
};

}  // namespace fuzztherest
