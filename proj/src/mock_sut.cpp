#include "fuzztherest/mock_sut.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <optional>

#include "fuzztherest/errors.hpp"
#include "fuzztherest/random.hpp"

namespace fuzztherest {

using nlohmann::ordered_json;

const std::array<SeededVulnInfo, 6>& seeded_vulnerabilities() {
  static const std::array<SeededVulnInfo, 6> kInfo = {{
      {SeededVuln::StringToNumber, "Number Format", 500, State::S5xx,
       "Conversion error from string input to number", "numberformatexception"},
      {SeededVuln::MaliciousContent, "Security Filter", 500, State::S5xx,
       "URL rejected by the security filter", "org.springframework.security.securityfilterexception"},
      {SeededVuln::IllegalSurrogatePair, "Illegal Surrogate Pair", 500, State::S5xx,
       "Request body contains a lone low surrogate",
       "com.fasterxml.jackson.core.illegalsurrogatepairexception"},
      {SeededVuln::UnmatchedSurrogatePair, "Unmatched Surrogate Pair", 500, State::S5xx,
       "Second part of surrogate pair missing",
       "com.fasterxml.jackson.core.unmatchedsurrogatepairexception"},
      {SeededVuln::InvalidWhitespaceStore, "Invalid White Space", 200, State::S2xx,
       "Pet stored with control whitespace in its name cannot be fetched",
       "com.fasterxml.jackson.core.jsongenerationexception"},
      {SeededVuln::FetchStatusError, "Invalid Pet Status", 500, State::S5xx,
       "Pet stored with a status outside the enum cannot be fetched", "invalidpetstatusexception"},
  }};
  return kInfo;
}

namespace {

struct Route {
  HttpMethod method;
  std::string_view path;
  std::string_view operation;
};

// Literal segments come before parameter segments at the same depth so the
// first match wins.
constexpr std::array<Route, 17> kRoutes = {{
    {HttpMethod::Get, "/ping", "ping"},
    {HttpMethod::Post, "/pet", "addPet"},
    {HttpMethod::Put, "/pet", "updatePet"},
    {HttpMethod::Get, "/pet/findByStatus", "findPetsByStatus"},
    {HttpMethod::Get, "/pet/{petId}", "getPetById"},
    {HttpMethod::Delete, "/pet/{petId}", "deletePet"},
    {HttpMethod::Post, "/pet/{petId}/uploadImage", "uploadFile"},
    {HttpMethod::Get, "/store/inventory", "getInventory"},
    {HttpMethod::Post, "/store/order", "placeOrder"},
    {HttpMethod::Get, "/store/order/{orderId}", "getOrderById"},
    {HttpMethod::Delete, "/store/order/{orderId}", "deleteOrder"},
    {HttpMethod::Post, "/user", "createUser"},
    {HttpMethod::Get, "/user/login", "loginUser"},
    {HttpMethod::Get, "/user/logout", "logoutUser"},
    {HttpMethod::Get, "/user/{username}", "getUserByName"},
    {HttpMethod::Put, "/user/{username}", "updateUser"},
    {HttpMethod::Delete, "/user/{username}", "deleteUser"},
}};

const std::array<std::string_view, 3> kPetStatuses = {"available", "pending", "sold"};
const std::array<std::string_view, 3> kOrderStatuses = {"placed", "approved", "delivered"};

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t start = 1;
  while (start <= path.size()) {
    const auto end = std::min(path.find('/', start), path.size());
    out.push_back(path.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string percent_decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out += static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2]));
      i += 2;
    } else {
      out += s[i];
    }
  }
  return out;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool malicious_target(std::string_view target) {
  const auto lower = lowercase(target);
  for (std::string_view bad : {";", "%3b", "%2f", "%5c", "%25", "//"}) {
    if (lower.find(bad) != std::string::npos) return true;
  }
  const auto decoded = percent_decode(target);
  if (decoded.find("..") != std::string::npos) return true;
  return std::any_of(decoded.begin(), decoded.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x20 || u == 0x7F;
  });
}

std::map<std::string, std::string> parse_query(std::string_view query) {
  std::map<std::string, std::string> out;
  while (!query.empty()) {
    const auto amp = query.find('&');
    const auto pair = query.substr(0, amp);
    const auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      out.emplace(percent_decode(pair), "");
    } else {
      out.emplace(percent_decode(pair.substr(0, eq)), percent_decode(pair.substr(eq + 1)));
    }
    if (amp == std::string_view::npos) break;
    query.remove_prefix(amp + 1);
  }
  return out;
}

std::optional<std::int64_t> parse_long(std::string_view s) {
  std::int64_t v = 0;
  if (s.empty()) return std::nullopt;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

MockResponse json_response(int status, const ordered_json& body) {
  return MockResponse{status, dump(body), "application/json"};
}

MockResponse error_response(int status, std::string_view message) {
  return json_response(status, ordered_json{{"code", status}, {"message", std::string(message)}});
}

std::string clip(std::string_view s) { return std::string(s.substr(0, 64)); }

MockResponse number_format(std::string_view input) {
  return error_response(500, "NumberFormatException: For input string: \"" + clip(input) + "\"");
}

unsigned read_hex4(std::string_view s, std::size_t at, bool& ok) {
  ok = at + 4 <= s.size();
  unsigned code = 0;
  for (std::size_t k = 0; ok && k < 4; ++k) {
    const int h = hex_value(s[at + k]);
    if (h < 0) ok = false;
    code = code * 16 + static_cast<unsigned>(std::max(h, 0));
  }
  return code;
}

// Scans \uXXXX escapes the way a strict UTF-16 aware JSON reader does.
std::optional<MockResponse> surrogate_error(std::string_view body) {
  for (std::size_t i = 0; i + 1 < body.size(); ++i) {
    if (body[i] != '\\') continue;
    if (body[i + 1] != 'u') {
      ++i;
      continue;
    }
    bool ok = false;
    const unsigned code = read_hex4(body, i + 2, ok);
    if (!ok) return std::nullopt;
    char hex[8];
    std::snprintf(hex, sizeof hex, "0x%04X", code);
    if (code >= 0xD800 && code <= 0xDBFF) {
      bool low_ok = false;
      unsigned low = 0;
      if (i + 12 <= body.size() && body[i + 6] == '\\' && body[i + 7] == 'u') {
        low = read_hex4(body, i + 8, low_ok);
      }
      if (!low_ok || low < 0xDC00 || low > 0xDFFF) {
        return error_response(500, std::string("com.fasterxml.jackson.core.UnmatchedSurrogatePairException: "
                                               "Unmatched first part of surrogate pair (") +
                                       hex + "); second part of surrogate pair missing");
      }
      i += 11;
    } else if (code >= 0xDC00 && code <= 0xDFFF) {
      return error_response(500, std::string("com.fasterxml.jackson.core.IllegalSurrogatePairException: "
                                             "Illegal surrogate pair, unexpected low surrogate (") +
                                     hex + ")");
    } else {
      i += 5;
    }
  }
  return std::nullopt;
}

bool has_control_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return u == 0x0B || u == 0x0C || (u >= 0x1C && u <= 0x1F);
  });
}

template <std::size_t N>
bool one_of(std::string_view value, const std::array<std::string_view, N>& allowed) {
  return std::find(allowed.begin(), allowed.end(), value) != allowed.end();
}

bool optional_is(const ordered_json& obj, const char* key, bool (ordered_json::*check)() const noexcept) {
  return !obj.contains(key) || (obj.at(key).*check)();
}

}  // namespace

MockApi::MockApi(MockSutOptions options) : options_(options) {
  Rng rng(derive_seed(options.seed, {0x5e55}));
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
  session_token_ = buf;
}

MockResponse MockApi::handle(std::string_view method, std::string_view target, std::string_view body) {
  const auto qmark = target.find('?');
  const auto raw_path = target.substr(0, qmark);
  const auto raw_query = qmark == std::string_view::npos ? std::string_view{} : target.substr(qmark + 1);

  if (malicious_target(target)) {
    if (!options_.vulnerabilities) return error_response(400, "Rejected request URL");
    return error_response(500,
                          "org.springframework.security.SecurityFilterException: The request was "
                          "rejected because the URL contained a potentially malicious String");
  }

  const auto segments = split_path(raw_path);
  bool path_known = false;
  for (const auto& route : kRoutes) {
    const auto pattern = split_path(route.path);
    if (pattern.size() != segments.size()) continue;
    std::vector<std::string> captures;
    bool match = true;
    for (std::size_t i = 0; i < pattern.size() && match; ++i) {
      if (pattern[i].starts_with('{')) {
        if (segments[i].empty()) match = false;
        captures.push_back(percent_decode(segments[i]));
      } else {
        match = pattern[i] == segments[i];
      }
    }
    if (!match) continue;
    path_known = true;
    if (to_string(route.method) != method) continue;
    return dispatch(route.operation, captures, parse_query(raw_query), body);
  }
  return path_known ? error_response(405, "Method not allowed") : error_response(404, "Not found");
}

MockResponse MockApi::dispatch(std::string_view op, const std::vector<std::string>& captures,
                               const std::map<std::string, std::string>& query, std::string_view body) {
  const bool vulns = options_.vulnerabilities;
  std::lock_guard lock(mutex_);

  auto parse_body = [&](ordered_json& out) -> std::optional<MockResponse> {
    if (auto err = surrogate_error(body)) {
      if (!vulns) return error_response(400, "Malformed JSON body");
      return err;
    }
    try {
      out = ordered_json::parse(body);
    } catch (const ordered_json::exception&) {
      return error_response(400, "Malformed JSON body");
    }
    if (!out.is_object()) return error_response(400, "Expected a JSON object");
    return std::nullopt;
  };

  auto numeric_id = [&](const std::string& text) -> std::optional<std::int64_t> {
    return parse_long(text);
  };

  auto pet_json = [](const Pet& pet) {
    return ordered_json{{"id", pet.id}, {"name", pet.name}, {"status", pet.status}};
  };

  // Validates a pet payload; returns an error response or fills name/status.
  auto check_pet = [&](const ordered_json& j, std::string& name,
                       std::string& status) -> std::optional<MockResponse> {
    if (!j.contains("name") || !j["name"].is_string()) return error_response(400, "Invalid pet name");
    if (!optional_is(j, "id", &ordered_json::is_number_integer) ||
        !optional_is(j, "status", &ordered_json::is_string)) {
      return error_response(400, "Invalid pet payload");
    }
    name = j["name"].get<std::string>();
    status = j.contains("status") ? j["status"].get<std::string>() : "available";
    if (!vulns && (has_control_whitespace(name) || !one_of(status, kPetStatuses))) {
      return error_response(400, "Invalid pet payload");
    }
    return std::nullopt;
  };

  if (op == "ping") return json_response(200, ordered_json{{"status", "ok"}});

  if (op == "addPet") {
    ordered_json j;
    if (auto err = parse_body(j)) return *err;
    Pet pet{next_pet_, {}, {}};
    if (auto err = check_pet(j, pet.name, pet.status)) return *err;
    ++next_pet_;
    pets_[pet.id] = pet;
    return json_response(200, pet_json(pet));
  }

  if (op == "updatePet") {
    ordered_json j;
    if (auto err = parse_body(j)) return *err;
    if (!j.contains("id") || !j["id"].is_number_integer()) return error_response(400, "Invalid ID supplied");
    Pet pet{j["id"].get<std::int64_t>(), {}, {}};
    if (auto err = check_pet(j, pet.name, pet.status)) return *err;
    auto it = pets_.find(pet.id);
    if (it == pets_.end()) return error_response(404, "Pet not found");
    it->second = pet;
    return json_response(200, pet_json(pet));
  }

  if (op == "findPetsByStatus") {
    const auto it = query.find("status");
    if (it == query.end() || !one_of(it->second, kPetStatuses)) {
      return error_response(400, "Invalid status value");
    }
    auto list = ordered_json::array();
    for (const auto& [id, pet] : pets_) {
      if (pet.status == it->second && !has_control_whitespace(pet.name)) list.push_back(pet_json(pet));
    }
    return json_response(200, list);
  }

  if (op == "getPetById" || op == "deletePet" || op == "uploadFile") {
    const auto id = numeric_id(captures.at(0));
    if (!id) return vulns ? number_format(captures.at(0)) : error_response(400, "Invalid ID supplied");
    auto it = pets_.find(*id);
    if (it == pets_.end()) return error_response(404, "Pet not found");
    const auto& pet = it->second;
    if (op == "deletePet") {
      pets_.erase(it);
      return json_response(200, ordered_json{{"code", 200}, {"message", "Pet deleted"}});
    }
    if (op == "uploadFile") {
      ordered_json j;
      if (auto err = parse_body(j)) return *err;
      if (!optional_is(j, "additionalMetadata", &ordered_json::is_string) ||
          !optional_is(j, "file", &ordered_json::is_string)) {
        return error_response(400, "Invalid upload payload");
      }
      const auto size = j.contains("file") ? j["file"].get<std::string>().size() * 3 / 4 : 0;
      return json_response(200, ordered_json{{"code", 200},
                                             {"message", "uploaded " + std::to_string(size) + " bytes"}});
    }
    if (has_control_whitespace(pet.name)) {
      const auto bad = *std::find_if(pet.name.begin(), pet.name.end(),
                                     [](char c) { return has_control_whitespace(std::string_view(&c, 1)); });
      return error_response(500, "com.fasterxml.jackson.core.JsonGenerationException: Invalid white space "
                                 "character (code " +
                                     std::to_string(static_cast<int>(bad)) + ") in pet name");
    }
    if (!one_of(pet.status, kPetStatuses)) {
      return error_response(500, "InvalidPetStatusException: Unexpected status \"" + clip(pet.status) +
                                     "\" for pet record " + std::to_string(pet.id));
    }
    return json_response(200, pet_json(pet));
  }

  if (op == "getInventory") {
    ordered_json counts;
    for (auto status : kPetStatuses) counts[std::string(status)] = 0;
    for (const auto& [id, pet] : pets_) {
      if (one_of(pet.status, kPetStatuses)) counts[pet.status] = counts[pet.status].get<int>() + 1;
    }
    return json_response(200, counts);
  }

  if (op == "placeOrder") {
    ordered_json j;
    if (auto err = parse_body(j)) return *err;
    if (!j.contains("petId") || !j["petId"].is_number_integer() ||
        !optional_is(j, "quantity", &ordered_json::is_number_integer) ||
        !optional_is(j, "price", &ordered_json::is_number) ||
        !optional_is(j, "shipDate", &ordered_json::is_string) ||
        !optional_is(j, "status", &ordered_json::is_string) ||
        !optional_is(j, "complete", &ordered_json::is_boolean)) {
      return error_response(400, "Invalid order");
    }
    Order order{next_order_++, j["petId"].get<std::int64_t>(),
                j.value("quantity", std::int64_t{1}), j.value("status", std::string("placed")),
                j.value("complete", false)};
    if (!one_of(order.status, kOrderStatuses)) return error_response(400, "Invalid order status");
    orders_[order.id] = order;
    return json_response(200, ordered_json{{"id", order.id},
                                           {"petId", order.pet_id},
                                           {"quantity", order.quantity},
                                           {"status", order.status},
                                           {"complete", order.complete}});
  }

  if (op == "getOrderById" || op == "deleteOrder") {
    const auto id = numeric_id(captures.at(0));
    if (!id) return vulns ? number_format(captures.at(0)) : error_response(400, "Invalid ID supplied");
    auto it = orders_.find(*id);
    if (it == orders_.end()) return error_response(404, "Order not found");
    if (op == "deleteOrder") {
      orders_.erase(it);
      return json_response(200, ordered_json{{"code", 200}, {"message", "Order deleted"}});
    }
    const auto& order = it->second;
    return json_response(200, ordered_json{{"id", order.id},
                                           {"petId", order.pet_id},
                                           {"quantity", order.quantity},
                                           {"status", order.status},
                                           {"complete", order.complete}});
  }

  auto check_user = [&](const ordered_json& j) -> std::optional<MockResponse> {
    if (!j.contains("username") || !j["username"].is_string() || j["username"].get<std::string>().empty() ||
        !optional_is(j, "id", &ordered_json::is_number_integer) ||
        !optional_is(j, "email", &ordered_json::is_string) ||
        !optional_is(j, "password", &ordered_json::is_string) ||
        !optional_is(j, "userStatus", &ordered_json::is_number_integer)) {
      return error_response(400, "Invalid user");
    }
    return std::nullopt;
  };

  if (op == "createUser") {
    ordered_json j;
    if (auto err = parse_body(j)) return *err;
    if (auto err = check_user(j)) return *err;
    User user{next_user_, j["username"].get<std::string>(), j.value("email", std::string()),
              j.value("password", std::string()), j.value("userStatus", std::int64_t{0})};
    if (users_.count(user.username)) return error_response(409, "Username taken");
    ++next_user_;
    users_[user.username] = user;
    return json_response(200, ordered_json{{"id", user.id}, {"username", user.username}});
  }

  if (op == "loginUser") {
    const auto u = query.find("username");
    const auto p = query.find("password");
    if (u == query.end() || p == query.end()) return error_response(400, "Missing credentials");
    const auto it = users_.find(u->second);
    if (it == users_.end() || it->second.password != p->second) {
      return error_response(400, "Invalid username/password supplied");
    }
    return MockResponse{200, "logged in user session:" + session_token_, "text/plain"};
  }

  if (op == "logoutUser") return json_response(200, ordered_json{{"code", 200}, {"message", "ok"}});

  if (op == "getUserByName" || op == "updateUser" || op == "deleteUser") {
    auto it = users_.find(captures.at(0));
    if (op == "updateUser") {
      ordered_json j;
      if (auto err = parse_body(j)) return *err;
      if (auto err = check_user(j)) return *err;
      if (it == users_.end()) return error_response(404, "User not found");
      it->second.email = j.value("email", it->second.email);
      it->second.password = j.value("password", it->second.password);
      it->second.user_status = j.value("userStatus", it->second.user_status);
      return json_response(200, ordered_json{{"id", it->second.id}, {"username", it->second.username}});
    }
    if (it == users_.end()) return error_response(404, "User not found");
    if (op == "deleteUser") {
      users_.erase(it);
      return json_response(200, ordered_json{{"code", 200}, {"message", "User deleted"}});
    }
    const auto& user = it->second;
    return json_response(200, ordered_json{{"id", user.id},
                                           {"username", user.username},
                                           {"email", user.email},
                                           {"userStatus", user.user_status}});
  }

  return error_response(404, "Not found");
}

std::vector<std::pair<HttpMethod, std::string>> mock_routes() {
  std::vector<std::pair<HttpMethod, std::string>> out;
  for (const auto& r : kRoutes) out.emplace_back(r.method, std::string(r.path));
  return out;
}

std::string mock_oas_document() {
  return R"(openapi: 3.0.3
info:
  title: Mock Pet Store
  version: 1.0.0
servers:
  - url: http://127.0.0.1:8080
paths:
  /ping:
    get:
      operationId: ping
      responses:
        '200':
          description: alive
  /pet:
    post:
      operationId: addPet
      requestBody:
        $ref: '#/components/requestBodies/Pet'
      responses:
        '200':
          description: created
    put:
      operationId: updatePet
      requestBody:
        $ref: '#/components/requestBodies/Pet'
      responses:
        '200':
          description: updated
  /pet/findByStatus:
    get:
      operationId: findPetsByStatus
      parameters:
        - name: status
          in: query
          required: true
          schema:
            type: string
            enum: [available, pending, sold]
      responses:
        '200':
          description: matching pets
  /pet/{petId}:
    parameters:
      - $ref: '#/components/parameters/PetId'
    get:
      operationId: getPetById
      responses:
        '200':
          description: the pet
    delete:
      operationId: deletePet
      parameters:
        - name: api_key
          in: header
          required: false
          schema:
            type: string
      responses:
        '200':
          description: deleted
  /pet/{petId}/uploadImage:
    post:
      operationId: uploadFile
      parameters:
        - $ref: '#/components/parameters/PetId'
      requestBody:
        required: true
        content:
          application/json:
            schema:
              type: object
              properties:
                additionalMetadata:
                  type: string
                file:
                  type: string
                  format: byte
      responses:
        '200':
          description: uploaded
  /store/inventory:
    get:
      operationId: getInventory
      responses:
        '200':
          description: counts by status
  /store/order:
    post:
      operationId: placeOrder
      requestBody:
        required: true
        content:
          application/json:
            schema:
              $ref: '#/components/schemas/Order'
      responses:
        '200':
          description: placed
  /store/order/{orderId}:
    parameters:
      - name: orderId
        in: path
        required: true
        schema:
          type: string
    get:
      operationId: getOrderById
      responses:
        '200':
          description: the order
    delete:
      operationId: deleteOrder
      responses:
        '200':
          description: deleted
  /user:
    post:
      operationId: createUser
      requestBody:
        required: true
        content:
          application/json:
            schema:
              $ref: '#/components/schemas/User'
      responses:
        '200':
          description: created
  /user/login:
    get:
      operationId: loginUser
      parameters:
        - name: username
          in: query
          required: true
          schema:
            type: string
        - name: password
          in: query
          required: true
          schema:
            type: string
      responses:
        '200':
          description: session
  /user/logout:
    get:
      operationId: logoutUser
      responses:
        '200':
          description: logged out
  /user/{username}:
    parameters:
      - name: username
        in: path
        required: true
        schema:
          type: string
    get:
      operationId: getUserByName
      responses:
        '200':
          description: the user
    put:
      operationId: updateUser
      requestBody:
        required: true
        content:
          application/json:
            schema:
              $ref: '#/components/schemas/User'
      responses:
        '200':
          description: updated
    delete:
      operationId: deleteUser
      responses:
        '200':
          description: deleted
components:
  parameters:
    PetId:
      name: petId
      in: path
      required: true
      schema:
        type: integer
        format: int64
  requestBodies:
    Pet:
      required: true
      content:
        application/json:
          schema:
            $ref: '#/components/schemas/Pet'
  schemas:
    Pet:
      type: object
      required: [name]
      properties:
        id:
          type: integer
          format: int64
        name:
          type: string
          maxLength: 32
        status:
          type: string
          enum: [available, pending, sold]
    Order:
      type: object
      required: [petId]
      properties:
        id:
          type: integer
          format: int64
        petId:
          type: integer
          format: int64
        quantity:
          type: integer
          format: int32
          minimum: 1
          maximum: 100
        price:
          type: number
          format: double
        shipDate:
          type: string
          format: date-time
        status:
          type: string
          enum: [placed, approved, delivered]
        complete:
          type: boolean
    User:
      type: object
      required: [username]
      properties:
        id:
          type: integer
          format: int64
        username:
          type: string
          minLength: 1
        email:
          type: string
          format: email
        password:
          type: string
        userStatus:
          type: integer
          format: int32
)";
}

std::string mock_scenarios_document(std::string_view base_url) {
  ordered_json doc;
  doc["base_url"] = std::string(base_url);
  doc["scenarios"] = ordered_json::array({
      {{"name", "pet"},
       {"steps", {"addPet", "getPetById", "findPetsByStatus", "updatePet", "uploadFile", "deletePet"}}},
      {{"name", "store"}, {"steps", {"placeOrder", "getOrderById", "getInventory", "deleteOrder"}}},
      {{"name", "user"},
       {"steps", {"createUser", "getUserByName", "loginUser", "updateUser", "deleteUser"}}},
  });
  return doc.dump(2) + "\n";
}

struct MockSut::Server {
  httplib::Server http;
};

MockSut::MockSut(MockSutOptions options) : options_(options) {}

MockSut::~MockSut() { stop(); }

void MockSut::start(int port) {
  stop();
  api_ = std::make_shared<MockApi>(options_);
  server_ = std::make_unique<Server>();
  auto& http = server_->http;
  http.set_keep_alive_max_count(1'000'000);
  http.set_keep_alive_timeout(1);
  const auto api = api_;
  const auto handler = [api](const httplib::Request& req, httplib::Response& res) {
    const auto out = api->handle(req.method, req.target, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string any = R"([\s\S]*)";
  http.Get(any, handler);
  http.Post(any, handler);
  http.Put(any, handler);
  http.Delete(any, handler);
  http.Patch(any, handler);

  if (port == 0) {
    port_ = http.bind_to_any_port("127.0.0.1");
    if (port_ < 0) throw BindError("cannot bind an ephemeral port on 127.0.0.1");
  } else {
    if (!http.bind_to_port("127.0.0.1", port)) {
      throw BindError("cannot bind 127.0.0.1:" + std::to_string(port));
    }
    port_ = port;
  }
  thread_ = std::thread([&http] { http.listen_after_bind(); });
  http.wait_until_ready();
}

void MockSut::stop() {
  if (server_) server_->http.stop();
  if (thread_.joinable()) thread_.join();
  server_.reset();
}

std::string MockSut::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

}  // namespace fuzztherest
