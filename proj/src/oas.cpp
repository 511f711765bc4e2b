#include "fuzztherest/oas.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <regex>
#include <set>

#include "fuzztherest/errors.hpp"

namespace fuzztherest {

using Json = nlohmann::ordered_json;

OasFormat format_from_path(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".yaml" || ext == ".yml" ? OasFormat::Yaml : OasFormat::Json;
}

namespace {

constexpr int kMaxSchemaDepth = 64;

// YAML scalars arrive untyped; plain (untagged) scalars are typed with the
// YAML 1.2 core schema, quoted ones stay strings.
Json yaml_scalar(const YAML::Node& node) {
  const std::string& text = node.Scalar();
  if (node.Tag() == "!") return text;

  static const std::regex kInt(R"([-+]?[0-9]+)");
  static const std::regex kFloat(R"([-+]?(\.[0-9]+|[0-9]+(\.[0-9]*)?)([eE][-+]?[0-9]+)?)");
  if (text.empty() || text == "~" || text == "null" || text == "Null" || text == "NULL") {
    return nullptr;
  }
  if (text == "true" || text == "True" || text == "TRUE") return true;
  if (text == "false" || text == "False" || text == "FALSE") return false;
  if (std::regex_match(text, kInt)) {
    std::int64_t v = 0;
    const char* begin = text.data() + (text[0] == '+' ? 1 : 0);
    auto res = std::from_chars(begin, text.data() + text.size(), v);
    if (res.ec == std::errc{}) return v;
    return std::stod(text);
  }
  if (std::regex_match(text, kFloat)) return std::stod(text);
  return text;
}

Json yaml_to_json(const YAML::Node& node) {
  switch (node.Type()) {
    case YAML::NodeType::Null:
    case YAML::NodeType::Undefined:
      return nullptr;
    case YAML::NodeType::Scalar:
      return yaml_scalar(node);
    case YAML::NodeType::Sequence: {
      Json out = Json::array();
      for (const auto& item : node) out.push_back(yaml_to_json(item));
      return out;
    }
    case YAML::NodeType::Map: {
      Json out = Json::object();
      for (const auto& kv : node) out[kv.first.as<std::string>()] = yaml_to_json(kv.second);
      return out;
    }
  }
  return nullptr;
}

Json load_document(std::string_view text, OasFormat format) {
  if (format == OasFormat::Json) {
    try {
      return Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed JSON document: ") + e.what());
    }
  }
  try {
    return yaml_to_json(YAML::Load(std::string(text)));
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("malformed YAML document: ") + e.what());
  }
}

std::string unescape_pointer_token(std::string token) {
  std::string out;
  for (std::size_t i = 0; i < token.size(); ++i) {
    if (token[i] == '~' && i + 1 < token.size()) {
      out += token[i + 1] == '1' ? '/' : '~';
      ++i;
    } else {
      out += token[i];
    }
  }
  return out;
}

class Reducer {
 public:
  explicit Reducer(const Json& root) : root_(root) {}

  std::vector<std::string> warnings;

  const Json& resolve(const std::string& ref) const {
    if (ref.rfind("#/", 0) != 0 && ref != "#") throw UnresolvableRef(ref);
    const Json* node = &root_;
    std::size_t pos = 2;
    while (ref != "#" && pos <= ref.size()) {
      const auto next = ref.find('/', pos);
      const auto token = unescape_pointer_token(ref.substr(pos, next - pos));
      if (node->is_object()) {
        auto it = node->find(token);
        if (it == node->end()) throw UnresolvableRef(ref);
        node = &*it;
      } else if (node->is_array()) {
        std::size_t index = 0;
        auto res = std::from_chars(token.data(), token.data() + token.size(), index);
        if (res.ec != std::errc{} || index >= node->size()) throw UnresolvableRef(ref);
        node = &(*node)[index];
      } else {
        throw UnresolvableRef(ref);
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return *node;
  }

  // Follows a chain of `$ref` objects (parameters, request bodies, path items).
  const Json& deref(const Json& node) const {
    const Json* current = &node;
    for (int hops = 0; current->is_object() && current->contains("$ref"); ++hops) {
      if (hops > kMaxSchemaDepth) throw UnsupportedSchema("$ref chain too deep");
      const auto& ref = (*current)["$ref"];
      if (!ref.is_string()) throw ParseError("$ref must be a string");
      current = &resolve(ref.get<std::string>());
    }
    return *current;
  }

  SchemaNode schema(const Json& node, const std::string& where) {
    std::vector<std::string> stack;
    return convert(node, where, stack, 0);
  }

 private:
  // Flattens an allOf composition into a single schema object.
  Json merge_all_of(const Json& node, const std::string& where, int depth) {
    if (depth > kMaxSchemaDepth) throw UnsupportedSchema(where + ": allOf nesting too deep");
    Json merged = Json::object();
    auto absorb = [&](const Json& part) {
      for (auto it = part.begin(); it != part.end(); ++it) {
        if (it.key() == "properties" && it->is_object()) {
          if (!merged.contains("properties")) merged["properties"] = Json::object();
          for (auto p = it->begin(); p != it->end(); ++p) merged["properties"][p.key()] = *p;
        } else if (it.key() == "required" && it->is_array()) {
          if (!merged.contains("required")) merged["required"] = Json::array();
          for (const auto& r : *it) {
            if (std::find(merged["required"].begin(), merged["required"].end(), r) ==
                merged["required"].end()) {
              merged["required"].push_back(r);
            }
          }
        } else if (it.key() != "allOf" && !merged.contains(it.key())) {
          merged[it.key()] = *it;
        }
      }
    };
    const auto& parts = node["allOf"];
    if (!parts.is_array()) throw ParseError(where + ": allOf must be an array");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Json& part = deref(parts[i]);
      if (part.is_object() && part.contains("allOf")) {
        absorb(merge_all_of(part, where + "/allOf/" + std::to_string(i), depth + 1));
      } else if (part.is_object()) {
        absorb(part);
      } else {
        throw ParseError(where + ": allOf entry is not an object");
      }
    }
    Json own = node;
    own.erase("allOf");
    absorb(own);
    return merged;
  }

  static std::optional<Datatype> infer_type(const Json& node, const std::string& where) {
    if (node.contains("type")) {
      const Json& type = node["type"];
      std::string name;
      if (type.is_string()) {
        name = type.get<std::string>();
      } else if (type.is_array()) {
        std::vector<std::string> kinds;
        for (const auto& t : type) {
          if (t.is_string() && t != "null") kinds.push_back(t.get<std::string>());
        }
        if (kinds.size() != 1) throw UnsupportedSchema(where + ": multi-type schema");
        name = kinds.front();
      } else {
        throw ParseError(where + ": type must be a string");
      }
      const std::string format = node.value("format", "");
      if (name == "integer") return Datatype::Integer;
      if (name == "number") return Datatype::Float;
      if (name == "boolean") return Datatype::Boolean;
      if (name == "string") {
        return format == "byte" || format == "binary" ? Datatype::Byte : Datatype::String;
      }
      if (name == "object") return Datatype::Object;
      if (name == "array") return Datatype::Array;
      throw UnsupportedSchema(where + ": unsupported type '" + name + "'");
    }
    if (node.contains("properties") || node.contains("additionalProperties")) {
      return Datatype::Object;
    }
    if (node.contains("items")) return Datatype::Array;
    if (node.contains("enum") && node["enum"].is_array() && !node["enum"].empty()) {
      const auto& first = node["enum"].front();
      if (first.is_number_integer()) return Datatype::Integer;
      if (first.is_number()) return Datatype::Float;
      if (first.is_boolean()) return Datatype::Boolean;
      if (first.is_string()) return Datatype::String;
    }
    return std::nullopt;
  }

  static std::optional<FieldValue> enum_value(const Json& v, Datatype type) {
    switch (type) {
      case Datatype::Integer:
        if (v.is_number_integer()) return FieldValue::integer(v.get<std::int64_t>());
        break;
      case Datatype::Float:
        if (v.is_number()) return FieldValue::floating(v.get<double>());
        break;
      case Datatype::Boolean:
        if (v.is_boolean()) return FieldValue::boolean(v.get<bool>());
        break;
      case Datatype::String:
        if (v.is_string()) return FieldValue::string(v.get<std::string>());
        break;
      case Datatype::Byte:
        if (v.is_string()) {
          const auto s = v.get<std::string>();
          return FieldValue::bytes(Bytes(s.begin(), s.end()));
        }
        break;
      default:
        break;
    }
    return std::nullopt;
  }

  static Constraints constraints(const Json& node, Datatype type) {
    Constraints c;
    c.format = node.value("format", "");
    if (node.contains("enum") && node["enum"].is_array()) {
      for (const auto& v : node["enum"]) {
        if (auto fv = enum_value(v, type)) c.enum_values.push_back(*fv);
      }
    }
    const double step = type == Datatype::Integer ? 1.0 : 0.0;
    if (node.contains("minimum") && node["minimum"].is_number()) {
      c.minimum = node["minimum"].get<double>();
      if (node.value("exclusiveMinimum", Json(false)) == Json(true)) *c.minimum += step;
    }
    if (node.contains("exclusiveMinimum") && node["exclusiveMinimum"].is_number()) {
      c.minimum = node["exclusiveMinimum"].get<double>() + step;
    }
    if (node.contains("maximum") && node["maximum"].is_number()) {
      c.maximum = node["maximum"].get<double>();
      if (node.value("exclusiveMaximum", Json(false)) == Json(true)) *c.maximum -= step;
    }
    if (node.contains("exclusiveMaximum") && node["exclusiveMaximum"].is_number()) {
      c.maximum = node["exclusiveMaximum"].get<double>() - step;
    }
    if (node.contains("minLength") && node["minLength"].is_number_unsigned()) {
      c.min_length = node["minLength"].get<std::size_t>();
    }
    if (node.contains("maxLength") && node["maxLength"].is_number_unsigned()) {
      c.max_length = node["maxLength"].get<std::size_t>();
    }
    return c;
  }

  SchemaNode convert(const Json& raw, const std::string& where, std::vector<std::string>& stack,
                     int depth) {
    if (depth > kMaxSchemaDepth) throw UnsupportedSchema(where + ": schema nesting too deep");
    if (!raw.is_object()) throw ParseError(where + ": schema must be an object");

    if (raw.contains("$ref")) {
      const auto ref = raw["$ref"].get<std::string>();
      if (std::find(stack.begin(), stack.end(), ref) != stack.end()) {
        warnings.push_back(where + ": recursive reference " + ref + " truncated to empty object");
        SchemaNode node;
        node.type = Datatype::Object;
        return node;
      }
      stack.push_back(ref);
      auto node = convert(resolve(ref), where, stack, depth + 1);
      stack.pop_back();
      return node;
    }
    if (raw.contains("allOf")) {
      return convert(merge_all_of(raw, where, depth), where, stack, depth + 1);
    }
    for (const char* key : {"oneOf", "anyOf"}) {
      if (raw.contains(key)) {
        const auto& alternatives = raw[key];
        if (!alternatives.is_array() || alternatives.empty()) {
          throw ParseError(where + ": " + key + " must be a non-empty array");
        }
        warnings.push_back(where + ": " + key + " resolved to its first alternative");
        return convert(alternatives.front(), where + "/" + key + "/0", stack, depth + 1);
      }
    }
    if (raw.contains("not")) throw UnsupportedSchema(where + ": 'not' schemas are unsupported");

    const auto type = infer_type(raw, where);
    if (!type) throw UnsupportedSchema(where + ": schema has no determinable type");

    SchemaNode node;
    node.type = *type;
    if (is_leaf(*type)) {
      node.constraints = constraints(raw, *type);
      return node;
    }
    if (*type == Datatype::Object) {
      std::set<std::string> required;
      if (raw.contains("required") && raw["required"].is_array()) {
        for (const auto& r : raw["required"]) {
          if (r.is_string()) required.insert(r.get<std::string>());
        }
      }
      if (raw.contains("properties")) {
        const auto& props = raw["properties"];
        if (!props.is_object()) throw ParseError(where + ": properties must be an object");
        for (auto it = props.begin(); it != props.end(); ++it) {
          auto child = convert(*it, where + "/properties/" + it.key(), stack, depth + 1);
          child.name = it.key();
          child.required = required.count(it.key()) > 0;
          node.children.push_back(std::move(child));
        }
      }
      return node;
    }
    if (!raw.contains("items")) throw UnsupportedSchema(where + ": array without items");
    node.element = std::make_shared<SchemaNode>(convert(raw["items"], where + "/items", stack, depth + 1));
    return node;
  }

  const Json& root_;
};

std::optional<HttpMethod> method_from(const std::string& key) {
  if (key == "get") return HttpMethod::Get;
  if (key == "post") return HttpMethod::Post;
  if (key == "put") return HttpMethod::Put;
  if (key == "delete") return HttpMethod::Delete;
  if (key == "patch") return HttpMethod::Patch;
  return std::nullopt;
}

bool is_operation_key(const std::string& key) {
  return key == "get" || key == "post" || key == "put" || key == "delete" || key == "patch" ||
         key == "head" || key == "options" || key == "trace";
}

std::string synthesize_operation_id(const std::string& method, const std::string& path) {
  std::string out = method;
  bool pending_sep = true;
  for (char c : path) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      if (pending_sep) out += '_';
      out += c;
      pending_sep = false;
    } else {
      pending_sep = true;
    }
  }
  return out;
}

std::vector<std::string> placeholders(const std::string& path) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while ((pos = path.find('{', pos)) != std::string::npos) {
    const auto close = path.find('}', pos);
    if (close == std::string::npos) throw ParseError("unterminated placeholder in path " + path);
    names.push_back(path.substr(pos + 1, close - pos - 1));
    pos = close + 1;
  }
  return names;
}

bool ignored_header(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  return name == "accept" || name == "content-type" || name == "authorization" || name == "host";
}

const Json* pick_media_schema(const Json& content) {
  if (!content.is_object() || content.empty()) return nullptr;
  const Json* chosen = nullptr;
  if (content.contains("application/json")) {
    chosen = &content["application/json"];
  } else {
    for (auto it = content.begin(); it != content.end(); ++it) {
      if (it.key().find("json") != std::string::npos) {
        chosen = &*it;
        break;
      }
    }
    if (chosen == nullptr) chosen = &content.begin().value();
  }
  if (!chosen->is_object() || !chosen->contains("schema")) return nullptr;
  return &(*chosen)["schema"];
}

}  // namespace

OasParseResult parse_oas(std::string_view document_text, OasFormat format) {
  const Json root = load_document(document_text, format);
  if (!root.is_object()) throw ParseError("OAS document root must be an object");
  if (root.contains("swagger")) throw ParseError("Swagger 2.0 documents are not supported");
  if (!root.contains("openapi") || !root["openapi"].is_string() ||
      root["openapi"].get<std::string>().rfind("3.", 0) != 0) {
    throw ParseError("document is not an OpenAPI 3.x specification");
  }

  Reducer reducer(root);
  OasParseResult result;
  if (!root.contains("paths")) return result;
  const Json& paths = root["paths"];
  if (!paths.is_object()) throw ParseError("paths must be an object");

  std::set<std::string> seen_ids;
  for (auto path_it = paths.begin(); path_it != paths.end(); ++path_it) {
    const std::string& path = path_it.key();
    const Json& item = reducer.deref(*path_it);
    if (!item.is_object()) throw ParseError(path + ": path item must be an object");
    const Json shared_params = item.value("parameters", Json::array());

    for (auto op_it = item.begin(); op_it != item.end(); ++op_it) {
      if (!is_operation_key(op_it.key())) continue;
      const std::string where = "#/paths/" + path + "/" + op_it.key();
      const auto method = method_from(op_it.key());
      if (!method) throw UnsupportedSchema(where + ": unsupported HTTP method");
      const Json& op = *op_it;

      ApiFunction fn;
      fn.method = *method;
      fn.path_template = path;
      fn.operation_id = op.contains("operationId") && op["operationId"].is_string()
                            ? op["operationId"].get<std::string>()
                            : synthesize_operation_id(op_it.key(), path);
      if (!seen_ids.insert(fn.operation_id).second) {
        throw ParseError("duplicate operationId '" + fn.operation_id + "'");
      }

      // Operation-level parameters override path-level ones by (name, in).
      std::vector<std::pair<const Json*, std::string>> params;
      auto add_params = [&](const Json& list, const std::string& base) {
        if (!list.is_array()) throw ParseError(base + ": parameters must be an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
          const Json& p = reducer.deref(list[i]);
          if (!p.is_object() || !p.contains("name") || !p.contains("in")) {
            throw ParseError(base + "/parameters/" + std::to_string(i) + ": malformed parameter");
          }
          auto same = std::find_if(params.begin(), params.end(), [&](const auto& existing) {
            return (*existing.first)["name"] == p["name"] && (*existing.first)["in"] == p["in"];
          });
          const auto loc = base + "/parameters/" + std::to_string(i);
          if (same != params.end()) {
            *same = {&p, loc};
          } else {
            params.emplace_back(&p, loc);
          }
        }
      };
      add_params(shared_params, "#/paths/" + path);
      if (op.contains("parameters")) add_params(op["parameters"], where);

      for (const auto& [param_ptr, loc] : params) {
        const Json& p = *param_ptr;
        const auto name = p["name"].get<std::string>();
        const auto in = p["in"].get<std::string>();
        const Json* schema = p.contains("schema") ? &p["schema"]
                             : p.contains("content") ? pick_media_schema(p["content"])
                                                     : nullptr;
        if (schema == nullptr) throw ParseError(loc + ": parameter '" + name + "' has no schema");
        Parameter param{name, reducer.schema(*schema, loc + "/schema")};
        param.schema.name = name;
        param.schema.required = p.value("required", false) || in == "path";
        if (in == "path") {
          fn.path_parameters.push_back(std::move(param));
        } else if (in == "query") {
          fn.query_parameters.push_back(std::move(param));
        } else if (in == "header") {
          if (ignored_header(name)) {
            reducer.warnings.push_back(loc + ": header '" + name + "' is managed by the client");
            continue;
          }
          fn.headers.push_back(std::move(param));
        } else {
          throw UnsupportedSchema(loc + ": parameter location '" + in + "' is unsupported");
        }
      }

      const auto names = placeholders(path);
      for (const auto& name : names) {
        const bool found = std::any_of(fn.path_parameters.begin(), fn.path_parameters.end(),
                                       [&](const Parameter& p) { return p.name == name; });
        if (!found) throw ParseError(where + ": placeholder {" + name + "} has no path parameter");
      }
      std::erase_if(fn.path_parameters, [&](const Parameter& p) {
        const bool used = std::find(names.begin(), names.end(), p.name) != names.end();
        if (!used) {
          reducer.warnings.push_back(where + ": path parameter '" + p.name + "' not in template");
        }
        return !used;
      });

      if (op.contains("requestBody")) {
        const Json& body = reducer.deref(op["requestBody"]);
        if (body.is_object() && body.contains("content")) {
          if (const Json* schema = pick_media_schema(body["content"])) {
            fn.body = reducer.schema(*schema, where + "/requestBody");
            fn.body->required = body.value("required", false);
          }
        }
      }
      result.functions.push_back(std::move(fn));
    }
  }
  result.warnings = std::move(reducer.warnings);
  return result;
}

namespace {

const char kAlphanumeric[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

std::string random_alnum(std::size_t length, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(kAlphanumeric) - 2);
  std::string out(length, 'a');
  for (auto& c : out) c = kAlphanumeric[pick(rng)];
  return out;
}

std::string formatted_string(const std::string& format, Rng& rng) {
  auto num = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto pad = [](int v, int width) {
    auto s = std::to_string(v);
    return std::string(width - std::min<int>(width, s.size()), '0') + s;
  };
  if (format == "date") {
    return pad(num(1970, 2037), 4) + "-" + pad(num(1, 12), 2) + "-" + pad(num(1, 28), 2);
  }
  if (format == "date-time") {
    return pad(num(1970, 2037), 4) + "-" + pad(num(1, 12), 2) + "-" + pad(num(1, 28), 2) + "T" +
           pad(num(0, 23), 2) + ":" + pad(num(0, 59), 2) + ":" + pad(num(0, 59), 2) + "Z";
  }
  if (format == "email") return random_alnum(8, rng) + "@example.com";
  if (format == "uuid") {
    static const char hex[] = "0123456789abcdef";
    std::string out;
    for (int i = 0; i < 32; ++i) {
      if (i == 8 || i == 12 || i == 16 || i == 20) out += '-';
      out += hex[num(0, 15)];
    }
    return out;
  }
  return {};
}

std::pair<std::size_t, std::size_t> length_range(const Constraints& c,
                                                 const InstantiateOptions& options) {
  const std::size_t lo = c.min_length.value_or(0);
  const std::size_t hi = c.max_length ? *c.max_length
                                      : std::max(lo, options.default_max_string_length);
  if (lo > hi) {
    throw UnsatisfiableConstraint("minLength " + std::to_string(lo) + " exceeds maxLength " +
                                  std::to_string(hi));
  }
  return {lo, hi};
}

FieldValue sample_leaf(const SchemaNode& node, Rng& rng, const InstantiateOptions& options) {
  const auto& c = node.constraints;
  if (c.minimum && c.maximum && *c.minimum > *c.maximum) {
    throw UnsatisfiableConstraint("minimum exceeds maximum for '" + node.name + "'");
  }
  if (!c.enum_values.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, c.enum_values.size() - 1);
    return c.enum_values[pick(rng)];
  }
  switch (node.type) {
    case Datatype::Integer: {
      const bool narrow = c.format == "int32";
      const double type_lo = narrow ? std::numeric_limits<std::int32_t>::min()
                                    : static_cast<double>(std::numeric_limits<std::int64_t>::min());
      const double type_hi = narrow ? std::numeric_limits<std::int32_t>::max()
                                    : 9223372036854774784.0;  // largest double below 2^63
      const double lo = std::ceil(std::max(c.minimum.value_or(type_lo), type_lo));
      const double hi = std::floor(std::min(c.maximum.value_or(type_hi), type_hi));
      if (lo > hi) throw UnsatisfiableConstraint("empty integer range for '" + node.name + "'");
      std::uniform_int_distribution<std::int64_t> dist(static_cast<std::int64_t>(lo),
                                                       static_cast<std::int64_t>(hi));
      return FieldValue::integer(dist(rng));
    }
    case Datatype::Float: {
      double lo = c.minimum.value_or(c.maximum ? *c.maximum - 1e6 : -1e6);
      double hi = c.maximum.value_or(c.minimum ? *c.minimum + 1e6 : 1e6);
      if (lo == hi) return FieldValue::floating(lo);
      return FieldValue::floating(std::uniform_real_distribution<double>(lo, hi)(rng));
    }
    case Datatype::Boolean:
      return FieldValue::boolean(std::bernoulli_distribution(0.5)(rng));
    case Datatype::String: {
      const auto [lo, hi] = length_range(c, options);
      if (!c.format.empty()) {
        auto formatted = formatted_string(c.format, rng);
        if (!formatted.empty() && formatted.size() >= lo && formatted.size() <= hi) {
          return FieldValue::string(std::move(formatted));
        }
      }
      const auto length = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
      return FieldValue::string(random_alnum(length, rng));
    }
    case Datatype::Byte: {
      const auto [lo, hi] = length_range(c, options);
      const auto length = std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
      Bytes out(length);
      std::uniform_int_distribution<int> byte(0, 255);
      for (auto& b : out) b = static_cast<std::uint8_t>(byte(rng));
      return FieldValue::bytes(std::move(out));
    }
    default:
      break;
  }
  throw std::logic_error("sample_leaf on non-leaf");
}

}  // namespace

SchemaNode instantiate_sample(const SchemaNode& schema, Rng& rng,
                              const InstantiateOptions& options) {
  SchemaNode out = schema;
  if (is_leaf(schema.type)) {
    out.sample = sample_leaf(schema, rng, options);
    return out;
  }
  out.sample.reset();
  if (schema.type == Datatype::Object) {
    for (auto& child : out.children) child = instantiate_sample(child, rng, options);
    return out;
  }
  out.children.clear();
  if (schema.element) {
    for (std::size_t i = 0; i < options.array_length; ++i) {
      out.children.push_back(instantiate_sample(*schema.element, rng, options));
    }
  }
  return out;
}

ApiFunction instantiate_function(const ApiFunction& function, Rng& rng,
                                 const InstantiateOptions& options) {
  ApiFunction out = function;
  for (auto* params : {&out.path_parameters, &out.query_parameters, &out.headers}) {
    for (auto& p : *params) p.schema = instantiate_sample(p.schema, rng, options);
  }
  if (out.body) out.body = instantiate_sample(*out.body, rng, options);
  return out;
}

}  // namespace fuzztherest
