#pragma once

#include <stdexcept>
#include <string>

namespace mkit {

// Invalid argument or violated precondition (bad labels, malformed
// constructions, subsets outside the ground set, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid matroid description (wrong fields or field types).
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntactically invalid input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Request exceeds the configured enumeration capacity.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Default cap on ground-set size for exhaustive enumerations (circuits,
// k-fold circuit scans, lattices). Reads MKIT_MAX_GROUND once; falls back
// to 20. Values are clamped to [1, 30].
int default_enumeration_bound();

// Resolves an explicit bound argument: 0 means "use the default".
int resolve_enumeration_bound(int requested);

}  // namespace mkit
