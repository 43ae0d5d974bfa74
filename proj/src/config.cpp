#include <algorithm>
#include <cstdlib>
#include <string>

#include "mkit/errors.hpp"

namespace mkit {

static int read_bound_from_env() {
  const char* raw = std::getenv("MKIT_MAX_GROUND");
  if (!raw || !*raw) return 20;
  try {
    int v = std::stoi(std::string(raw));
    return std::clamp(v, 1, 30);
  } catch (const std::exception&) {
    return 20;
  }
}

int default_enumeration_bound() {
  static const int bound = read_bound_from_env();
  return bound;
}

int resolve_enumeration_bound(int requested) {
  if (requested < 0) throw DomainError("enumeration bound must be positive");
  if (requested == 0) return default_enumeration_bound();
  return std::min(requested, 30);
}

}  // namespace mkit
