#include "fuzztherest/executor.hpp"

#include <httplib.h>

#include <cmath>
#include <cstdio>
#include <map>

#include "fuzztherest/errors.hpp"

namespace fuzztherest {

std::string HttpRequest::summary() const {
  return std::string(to_string(method)) + " " + url;
}

std::string percent_encode(std::string_view bytes) {
  static const char hex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(bytes.size());
  for (unsigned char c : bytes) {
    if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

namespace {

void append_unicode_escape(std::string& out, unsigned code) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "\\u%04x", code);
  out += buf;
}

// Length of a generalized-UTF-8 sequence at `i` (surrogate code points
// allowed), or 0 when the bytes are not a well-formed sequence.
std::size_t sequence_length(std::string_view s, std::size_t i, unsigned& code) {
  const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char lead = byte(i);
  std::size_t len = 0;
  if (lead >= 0xC2 && lead <= 0xDF) {
    len = 2;
    code = lead & 0x1F;
  } else if (lead >= 0xE0 && lead <= 0xEF) {
    len = 3;
    code = lead & 0x0F;
  } else if (lead >= 0xF0 && lead <= 0xF4) {
    len = 4;
    code = lead & 0x07;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((byte(i + k) & 0xC0) != 0x80) return 0;
    code = (code << 6) | (byte(i + k) & 0x3F);
  }
  if ((len == 3 && code < 0x800) || (len == 4 && (code < 0x10000 || code > 0x10FFFF))) return 0;
  return len;
}

void append_json_string(std::string& out, std::string_view s) {
  out += '"';
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (c < 0x20) {
            append_unicode_escape(out, c);
          } else {
            out += static_cast<char>(c);
          }
      }
      ++i;
      continue;
    }
    unsigned code = 0;
    const auto len = sequence_length(s, i, code);
    if (len == 0) {
      out += static_cast<char>(c);
      ++i;
    } else if (code >= 0xD800 && code <= 0xDFFF) {
      append_unicode_escape(out, code);
      i += len;
    } else {
      out.append(s.substr(i, len));
      i += len;
    }
  }
  out += '"';
}

void append_leaf_json(std::string& out, const FieldValue& value) {
  switch (value.datatype()) {
    case Datatype::Integer:
    case Datatype::Float:
    case Datatype::Boolean:
      out += value.to_text();
      return;
    case Datatype::String:
      append_json_string(out, value.as_string());
      return;
    case Datatype::Byte: {
      const auto& b = value.as_bytes();
      append_json_string(out, httplib::detail::base64_encode(std::string(b.begin(), b.end())));
      return;
    }
    default:
      return;
  }
}

void append_json(std::string& out, const SchemaNode& node, const std::string& where) {
  if (is_leaf(node.type)) {
    if (!node.sample) throw MissingSample("no sample for '" + where + "'");
    append_leaf_json(out, *node.sample);
    return;
  }
  const bool object = node.type == Datatype::Object;
  out += object ? '{' : '[';
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (i > 0) out += ',';
    const auto& child = node.children[i];
    if (object) {
      append_json_string(out, child.name);
      out += ':';
    }
    append_json(out, child, where + (object ? "." + child.name : "[" + std::to_string(i) + "]"));
  }
  out += object ? '}' : ']';
}

const FieldValue& require_sample(const SchemaNode& node, const std::string& where) {
  if (!node.sample) throw MissingSample("no sample for '" + where + "'");
  return *node.sample;
}

// Text form of a parameter: leaves verbatim, arrays comma-joined, objects as JSON.
std::string parameter_text(const Parameter& p, const std::string& where) {
  const auto& s = p.schema;
  if (is_leaf(s.type)) return require_sample(s, where).to_text();
  if (s.type == Datatype::Array) {
    std::string out;
    for (std::size_t i = 0; i < s.children.size(); ++i) {
      if (i > 0) out += ',';
      const auto& item = s.children[i];
      if (is_leaf(item.type)) {
        out += require_sample(item, where).to_text();
      } else {
        append_json(out, item, where);
      }
    }
    return out;
  }
  std::string out;
  append_json(out, s, where);
  return out;
}

std::string header_safe(std::string_view value) {
  static const char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if ((c >= 0x20 && c < 0x7F) || c == '\t') {
      out += static_cast<char>(c);
    } else {
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

}  // namespace

std::string serialize_json(const SchemaNode& node) {
  std::string out;
  append_json(out, node, "body");
  return out;
}

HttpRequest build_request(const ApiFunction& function, std::string_view base_url,
                          const HeaderList& extra_headers) {
  HttpRequest request;
  request.method = function.method;

  std::string path;
  const auto& tmpl = function.path_template;
  for (std::size_t i = 0; i < tmpl.size();) {
    if (tmpl[i] == '{') {
      const auto close = tmpl.find('}', i);
      const auto name = tmpl.substr(i + 1, close - i - 1);
      const Parameter* param = nullptr;
      for (const auto& p : function.path_parameters) {
        if (p.name == name) param = &p;
      }
      if (param == nullptr) throw MissingSample("no path parameter for {" + name + "}");
      path += percent_encode(parameter_text(*param, "path." + name));
      i = close + 1;
    } else {
      path += tmpl[i++];
    }
  }

  std::string query;
  auto append_query = [&](const std::string& key, const std::string& value) {
    query += query.empty() ? '?' : '&';
    query += percent_encode(key);
    query += '=';
    query += percent_encode(value);
  };
  for (const auto& p : function.query_parameters) {
    const auto where = "query." + p.name;
    if (p.schema.type == Datatype::Array) {
      for (const auto& item : p.schema.children) {
        if (is_leaf(item.type)) {
          append_query(p.name, require_sample(item, where).to_text());
        } else {
          std::string json;
          append_json(json, item, where);
          append_query(p.name, json);
        }
      }
    } else {
      append_query(p.name, parameter_text(p, where));
    }
  }

  std::string base(base_url);
  while (!base.empty() && base.back() == '/') base.pop_back();
  request.url = base + path + query;

  for (const auto& [name, value] : extra_headers) request.headers.emplace_back(name, value);
  for (const auto& p : function.headers) {
    request.headers.emplace_back(p.name, header_safe(parameter_text(p, "header." + p.name)));
  }
  if (function.body) {
    request.body = serialize_json(*function.body);
    request.headers.emplace_back("Content-Type", "application/json");
  }
  return request;
}

struct HttpExecutor::Pool {
  std::mutex mutex;
  std::map<std::string, std::vector<std::unique_ptr<httplib::Client>>> idle;
};

HttpExecutor::HttpExecutor(int timeout_ms)
    : timeout_ms_(timeout_ms), pool_(std::make_unique<Pool>()) {}

HttpExecutor::~HttpExecutor() = default;

HttpExchange HttpExecutor::execute(const HttpRequest& request) {
  HttpExchange exchange;
  exchange.request = request;
  const auto started = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
        .count();
  };

  const auto scheme_end = request.url.find("://");
  if (scheme_end == std::string::npos) {
    exchange.outcome = TransportFailure::ProtocolError;
    return exchange;
  }
  const auto path_start = request.url.find('/', scheme_end + 3);
  const auto origin = request.url.substr(0, path_start);
  const auto target = path_start == std::string::npos ? std::string("/") : request.url.substr(path_start);

  std::unique_ptr<httplib::Client> client;
  {
    std::lock_guard lock(pool_->mutex);
    auto& idle = pool_->idle[origin];
    if (!idle.empty()) {
      client = std::move(idle.back());
      idle.pop_back();
    }
  }
  if (!client) {
    client = std::make_unique<httplib::Client>(origin);
    const auto timeout = std::chrono::milliseconds(timeout_ms_);
    client->set_connection_timeout(timeout);
    client->set_read_timeout(timeout);
    client->set_write_timeout(timeout);
    client->set_keep_alive(true);
    client->set_url_encode(false);
  }

  httplib::Request req;
  req.method = std::string(to_string(request.method));
  req.path = target;
  for (const auto& [name, value] : request.headers) req.headers.emplace(name, value);
  req.body = request.body;

  httplib::Response res;
  httplib::Error error = httplib::Error::Success;
  const bool ok = client->send(req, res, error);
  exchange.latency_ms = elapsed_ms();

  if (!ok) {
    switch (error) {
      case httplib::Error::Connection:
        exchange.outcome = TransportFailure::ConnectionRefused;
        break;
      case httplib::Error::ConnectionTimeout:
        exchange.outcome = TransportFailure::Timeout;
        break;
      case httplib::Error::Read:
      case httplib::Error::Write:
        exchange.outcome = exchange.latency_ms >= timeout_ms_ ? TransportFailure::Timeout
                                                              : TransportFailure::ProtocolError;
        break;
      default:
        exchange.outcome = TransportFailure::ProtocolError;
    }
    return exchange;
  }

  if (res.status < 100 || res.status > 599) {
    exchange.outcome = TransportFailure::ProtocolError;
    return exchange;
  }
  exchange.outcome = res.status;
  exchange.response_body = res.body.substr(0, kMaxStoredBody);
  std::lock_guard lock(pool_->mutex);
  pool_->idle[origin].push_back(std::move(client));
  return exchange;
}

}  // namespace fuzztherest
