#pragma once

#include <vector>

#include "mkit/matroid.hpp"
#include "mkit/multigraph.hpp"

namespace mkit {

// Sparsity parameters: a subset F of edges is independent when every
// non-empty subset F' satisfies |F'| <= a * |V(F')| - b.
struct CountParams {
  int a = 1;
  int b = 0;

  void validate() const;
};

// Rank of an edge subset under the (a,b) count, computed by a pebble game:
// every vertex carries a pebbles, accepting a non-loop edge requires b+1
// free pebbles gatherable on its endpoints (b+1 on the single vertex for a
// loop), and accepted edges hold one pebble as an orientation.
int count_rank(CountParams p, const Multigraph& g, Mask s);

// The count matroid of g. Default labels are edge indices "0".."m-1".
Matroid count_matroid(CountParams p, const Multigraph& g,
                      std::vector<std::string> labels = {});

// Complete (a,b)-graph on n vertices: max(a-b, 0) loops per vertex and
// 2a-b parallel edges per pair, ordered loops first (by vertex) then pairs
// in lexicographic order, copies consecutive.
Multigraph ab_clique(CountParams p, int n);

// g is rigid when its rank is a * |V(g)| - b over its spanned vertices.
bool is_rigid(CountParams p, const Multigraph& g);
bool is_rigid_subset(CountParams p, const Multigraph& g, Mask s);

// Closure of an edge subset of g inside the ambient complete (a,b)-graph on
// g's vertices (widened where g itself is denser than the clique).
// edge_map[i] is the ambient index of g's edge i; closure is a subset of
// ambient's edges.
struct CountClosure {
  Multigraph ambient;
  std::vector<int> edge_map;
  Mask closure = 0;
};

CountClosure count_closure(CountParams p, const Multigraph& g, Mask s);

// Vertices covered by edges of at least two different parts, ascending.
std::vector<int> technicolour_vertices(const Multigraph& g,
                                       const std::vector<Mask>& parts);

}  // namespace mkit
