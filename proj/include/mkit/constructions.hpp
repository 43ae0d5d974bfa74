#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "mkit/matroid.hpp"
#include "mkit/multigraph.hpp"

namespace mkit {

// U_{r,n}: rank of a subset is min(|subset|, r). Default labels "1".."n".
Matroid uniform_matroid(int rank, int n, std::vector<std::string> labels = {});

// Column matroid of an exact matrix, either over the rationals (prime == 0)
// or over the integers mod a prime. Columns are the ground elements;
// default labels "v1".."vn".
struct LinearMatroidSpec {
  long prime = 0;
  std::vector<std::vector<mpq_class>> matrix;  // row major
  std::vector<std::string> labels;

  int rows() const { return static_cast<int>(matrix.size()); }
  int cols() const { return matrix.empty() ? 0 : static_cast<int>(matrix[0].size()); }
  void validate() const;
};

Matroid linear_matroid(LinearMatroidSpec spec);

// Dimension of the intersection of the spans of the given column families,
// inside the ambient vector space of the matrix. At least one family is
// required.
int subspace_intersection_dim(const LinearMatroidSpec& spec,
                              const std::vector<Mask>& families);

// Cycle matroid: a subset is independent when it is a forest. Default
// labels are the edge indices "0".."m-1".
Matroid graphic_matroid(const Multigraph& g, std::vector<std::string> labels = {});

// Matroid given by its full list of circuits. Validates the circuit axioms
// (no empty circuit, antichain, weak elimination) and ranks subsets by
// greedily growing an independent subset.
Matroid explicit_circuits_matroid(GroundPtr ground, std::vector<Mask> circuits);

// Direct sum; ground sets must have pairwise disjoint labels. Ranks add
// across the summands.
Matroid direct_sum(const std::vector<Matroid>& parts);

// Parallel connection across the single shared label e, which must be
// neither a loop nor a coloop on either side, with both sides of size at
// least two. Circuits are the circuits of either side together with the
// merged pairs (C1 u C2) - e with e on both.
Matroid parallel_connection(const Matroid& left, const Matroid& right,
                            const std::string& shared);

// Parallel connection with e deleted afterwards. Same preconditions.
Matroid two_sum(const Matroid& left, const Matroid& right,
                const std::string& shared);

// Test hook: parallel connection ranked through the explicit merged circuit
// list instead of the two-sided rank formula. Small grounds only.
Matroid parallel_connection_by_circuits(const Matroid& left, const Matroid& right,
                                        const std::string& shared);

}  // namespace mkit
