#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "mkit/count.hpp"
#include "mkit/matroid.hpp"
#include "mkit/multigraph.hpp"

namespace mkit {

using Json = nlohmann::ordered_json;

// Result of building a matroid description: the matroid itself, plus the
// graph and count parameters when the top-level node is graph-backed, so
// reports can include vertex-level findings.
struct BuiltMatroid {
  Matroid matroid;
  std::optional<Multigraph> graph;
  std::optional<CountParams> count;
};

// Text to JSON; malformed input raises ParseError with position info.
Json parse_spec_text(const std::string& text);

// Reads and parses a file; missing or unreadable files raise ParseError.
Json load_spec_file(const std::string& path);

// Structural validation of a matroid description. Raises SchemaError naming
// the offending location. Accepted "type" values: uniform, linear, graphic,
// count, circuits, dual, restrict, direct_sum, two_sum, parallel_connection.
void validate_spec(const Json& j, const std::string& path = "$");

// Normal form: fixed key order, matrix entries as integers when possible and
// "p/q" strings otherwise, children normalized recursively. Validates first.
// Idempotent, so parse-serialize-parse round trips compare equal.
Json canonical_spec(const Json& j);

// Constructs the matroid. Assumes a validated description; construction
// preconditions that fail raise DomainError.
BuiltMatroid build_matroid(const Json& j);

}  // namespace mkit
