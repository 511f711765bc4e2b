#include "fuzztherest/schema.hpp"

namespace fuzztherest {

SchemaNode SchemaNode::leaf(Datatype type, std::string name) {
  SchemaNode node;
  node.type = type;
  node.name = std::move(name);
  return node;
}

std::string_view to_string(HttpMethod method) noexcept {
  switch (method) {
    case HttpMethod::Get: return "GET";
    case HttpMethod::Post: return "POST";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Delete: return "DELETE";
    case HttpMethod::Patch: return "PATCH";
  }
  return "GET";
}

namespace {

void collect(const SchemaNode& node, const std::string& path, SlotLocation location,
             const std::string& name, const std::string& owner, std::vector<SlotRef>& out) {
  if (is_leaf(node.type)) {
    out.push_back(SlotRef{path, location, node.type, name, owner});
    return;
  }
  if (node.type == Datatype::Object) {
    for (const auto& child : node.children) {
      collect(child, path + "." + child.name, location, child.name, name, out);
    }
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    collect(node.children[i], path + "[" + std::to_string(i) + "]", location, name, owner,
            out);
  }
}

template <typename Node>
Node* descend(Node* node, std::string_view rest) {
  while (node != nullptr && !rest.empty()) {
    if (rest.front() == '.') {
      rest.remove_prefix(1);
      const auto end = rest.find_first_of(".[");
      const auto key = rest.substr(0, end);
      rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
      Node* next = nullptr;
      if (node->type == Datatype::Object) {
        for (auto& child : node->children) {
          if (child.name == key) {
            next = &child;
            break;
          }
        }
      }
      node = next;
    } else if (rest.front() == '[') {
      const auto close = rest.find(']');
      if (close == std::string_view::npos || node->type != Datatype::Array) return nullptr;
      std::size_t index = 0;
      for (char c : rest.substr(1, close - 1)) {
        if (c < '0' || c > '9') return nullptr;
        index = index * 10 + static_cast<std::size_t>(c - '0');
      }
      rest.remove_prefix(close + 1);
      node = index < node->children.size() ? &node->children[index] : nullptr;
    } else {
      return nullptr;
    }
  }
  return node;
}

template <typename Function>
auto find_leaf_impl(Function& function, std::string_view slot_path)
    -> decltype(&function.body->children[0]) {
  using NodePtr = decltype(&function.body->children[0]);
  const auto dot = slot_path.find_first_of(".[");
  const auto head = slot_path.substr(0, dot);
  const auto rest = dot == std::string_view::npos ? std::string_view{} : slot_path.substr(dot);

  NodePtr node = nullptr;
  if (head == "body") {
    if (!function.body) return nullptr;
    node = &*function.body;
    node = descend(node, rest);
  } else {
    auto* params = head == "path"     ? &function.path_parameters
                   : head == "query"  ? &function.query_parameters
                   : head == "header" ? &function.headers
                                      : nullptr;
    if (params == nullptr || rest.empty() || rest.front() != '.') return nullptr;
    auto after = rest.substr(1);
    const auto end = after.find('[');
    const auto param_name = after.substr(0, end);
    for (auto& param : *params) {
      if (param.name == param_name) {
        node = &param.schema;
        break;
      }
    }
    if (node == nullptr) return nullptr;
    node = descend(node, end == std::string_view::npos ? std::string_view{}
                                                              : after.substr(end));
  }
  if (node == nullptr || !is_leaf(node->type)) return nullptr;
  return node;
}

}  // namespace

std::vector<SlotRef> leaf_slots(const ApiFunction& function) {
  std::vector<SlotRef> out;
  for (const auto& p : function.path_parameters) {
    collect(p.schema, "path." + p.name, SlotLocation::Path, p.name, {}, out);
  }
  for (const auto& p : function.query_parameters) {
    collect(p.schema, "query." + p.name, SlotLocation::Query, p.name, {}, out);
  }
  for (const auto& p : function.headers) {
    collect(p.schema, "header." + p.name, SlotLocation::Header, p.name, {}, out);
  }
  if (function.body) collect(*function.body, "body", SlotLocation::Body, {}, {}, out);
  return out;
}

SchemaNode* find_leaf(ApiFunction& function, std::string_view slot_path) {
  return find_leaf_impl(function, slot_path);
}

const SchemaNode* find_leaf(const ApiFunction& function, std::string_view slot_path) {
  return find_leaf_impl(function, slot_path);
}

}  // namespace fuzztherest
