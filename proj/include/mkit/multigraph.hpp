#pragma once

#include <utility>
#include <vector>

#include "mkit/mask.hpp"

namespace mkit {

// Undirected multigraph. Parallel edges are repeated entries; a loop is an
// edge with both endpoints equal. Edge i of a mask refers to edges[i].
struct Multigraph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  // Throws DomainError on out-of-range endpoints or more than 64 edges.
  void validate() const;

  // Vertices incident to at least one edge of the subset, ascending.
  std::vector<int> spanned_vertices(Mask s) const;
  int spanned_count(Mask s) const;
};

}  // namespace mkit
