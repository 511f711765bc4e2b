#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzztherest/value.hpp"

namespace fuzztherest {

struct Constraints {
  std::vector<FieldValue> enum_values;
  std::optional<double> minimum;
  std::optional<double> maximum;
  std::optional<std::size_t> min_length;
  std::optional<std::size_t> max_length;
  std::string format;
};

/// One node of a reduced input schema. Leaves carry a sample; Object nodes
/// carry named children; Array nodes carry an element template plus the
/// instantiated items as children.
struct SchemaNode {
  Datatype type = Datatype::String;
  Constraints constraints;
  std::string name;
  bool required = false;
  std::vector<SchemaNode> children;
  std::shared_ptr<const SchemaNode> element;
  std::optional<FieldValue> sample;

  static SchemaNode leaf(Datatype type, std::string name = {});
};

struct Parameter {
  std::string name;
  SchemaNode schema;
};

enum class HttpMethod { Get, Post, Put, Delete, Patch };

std::string_view to_string(HttpMethod method) noexcept;

struct ApiFunction {
  std::string operation_id;
  HttpMethod method = HttpMethod::Get;
  std::string path_template;
  std::vector<Parameter> headers;
  std::vector<Parameter> query_parameters;
  std::vector<Parameter> path_parameters;
  std::optional<SchemaNode> body;

  bool is_creational() const noexcept { return method == HttpMethod::Post; }
};

enum class SlotLocation { Path, Query, Header, Body };

/// Address of one mutable leaf inside an ApiFunction, e.g. `path.petId`,
/// `body.category.name` or `query.tags[0]`.
struct SlotRef {
  std::string path;
  SlotLocation location = SlotLocation::Body;
  Datatype type = Datatype::String;
  /// Property or parameter name of the leaf; array items inherit the
  /// array's name.
  std::string name;
  /// Name of the nearest enclosing object property, empty at top level.
  std::string owner;
};

/// Enumerates every leaf slot in a fixed order: path, query, header, body
/// (depth first, declaration order).
std::vector<SlotRef> leaf_slots(const ApiFunction& function);

SchemaNode* find_leaf(ApiFunction& function, std::string_view slot_path);
const SchemaNode* find_leaf(const ApiFunction& function, std::string_view slot_path);

}  // namespace fuzztherest
