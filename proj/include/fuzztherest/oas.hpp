#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fuzztherest/random.hpp"
#include "fuzztherest/schema.hpp"

namespace fuzztherest {

enum class OasFormat { Json, Yaml };

/// Guesses the document format from a file extension (.json vs .yaml/.yml).
OasFormat format_from_path(const std::filesystem::path& path);

struct OasParseResult {
  std::vector<ApiFunction> functions;
  /// Lossy reductions that did not abort the parse, e.g. a `oneOf` resolved
  /// to its first alternative. Each entry names the JSON location.
  std::vector<std::string> warnings;
};

/// Reduces an OpenAPI 3.x document to one ApiFunction per (path, method).
/// API information, responses and security schemes are discarded; every
/// `$ref` into the document is resolved inline.
///
/// Throws ParseError, UnresolvableRef or UnsupportedSchema.
OasParseResult parse_oas(std::string_view document_text, OasFormat format);

struct InstantiateOptions {
  std::size_t array_length = 1;
  std::size_t default_max_string_length = 16;
};

/// Returns a copy of `schema` where every leaf carries a sample satisfying
/// its declared constraints. Throws UnsatisfiableConstraint.
SchemaNode instantiate_sample(const SchemaNode& schema, Rng& rng,
                              const InstantiateOptions& options = {});

/// Instantiates every parameter and the body of a function.
ApiFunction instantiate_function(const ApiFunction& function, Rng& rng,
                                 const InstantiateOptions& options = {});

}  // namespace fuzztherest
