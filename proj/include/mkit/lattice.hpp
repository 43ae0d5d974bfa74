#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mkit/kfold.hpp"
#include "mkit/matroid.hpp"

namespace mkit {

// A finite lattice of sets ordered by inclusion. The family must be
// intersection-closed with a greatest element, or union-closed with a least
// element; either property makes every meet and join exist and computable.
class FiniteLattice {
 public:
  explicit FiniteLattice(std::vector<Mask> sets);

  int size() const { return static_cast<int>(sets_.size()); }
  Mask node(int i) const { return sets_[static_cast<size_t>(i)]; }
  int index_of(Mask s) const;
  bool has(Mask s) const;

  bool leq(int a, int b) const;
  int meet(int a, int b) const;
  int join(int a, int b) const;
  int bottom() const { return 0; }
  int top() const { return size() - 1; }

  // Per-node values, registered by name and read back for checks.
  void set_function(const std::string& name,
                    const std::function<long long(Mask)>& f);
  const std::vector<long long>& values(const std::string& name) const;
  std::vector<std::string> function_names() const;

  // (lower, upper) with upper covering lower, ordered by upper then lower.
  const std::vector<std::pair<int, int>>& cover_pairs() const;

 private:
  std::vector<Mask> sets_;
  int words_ = 0;
  std::vector<std::uint64_t> below_;  // row i: indices j with sets[j] subseteq sets[i]
  std::vector<std::uint64_t> above_;
  bool meet_closed_ = false;
  bool join_closed_ = false;
  std::map<std::string, std::vector<long long>> functions_;
  mutable std::vector<std::pair<int, int>> covers_;
  mutable bool covers_ready_ = false;
};

// Lattice of all flats, with a "rank" function. Node count is capped.
FiniteLattice lattice_of_flats(const Matroid& m, int bound = 0);

// Lattice of all cyclic sets (unions of circuits), with a "rho" function
// assigning |s| - rank(s). Node count is capped.
FiniteLattice lattice_of_cyclic_sets(const Matroid& m, int bound = 0);

bool is_modular_pair(const FiniteLattice& l, int a, int b,
                     const std::string& fname = "rank");

// Geometric lattice test for a flats lattice: graded by rank across covers,
// atomistic, and rank-semimodular.
struct GeometricReport {
  bool graded = false;
  bool atomistic = false;
  bool semimodular = false;

  bool geometric() const { return graded && atomistic && semimodular; }
};

GeometricReport check_geometric(const FiniteLattice& l,
                                const std::string& fname = "rank");

// Pseudomodularity of a function f on the lattice: whenever
// f(x v z) - f(x) = f(y v z) - f(y) = f(x v y v z) - f(x v y), the meet
// (x v z) ^ (y v z) must satisfy f of it minus f(x ^ y) equal to that
// common difference.
enum class ScanMode { exhaustive, sampled, auto_scan };

struct PseudomodularReport {
  bool pseudomodular = true;
  bool exhaustive = false;
  long long checked = 0;
  std::optional<std::array<int, 3>> witness;  // node indices x, y, z
};

PseudomodularReport check_pseudomodular(const FiniteLattice& l,
                                        const std::string& fname,
                                        ScanMode mode = ScanMode::auto_scan,
                                        unsigned seed = 0,
                                        long long samples = 100000);

// For two functions that are each non-decreasing, semimodular, and
// pseudomodular on the lattice, their sum must again be pseudomodular.
struct SumCheckReport {
  bool first_qualifies = false;
  bool second_qualifies = false;
  bool sum_pseudomodular = false;
  bool implication_holds = true;
};

SumCheckReport pseudomodular_sum_check(FiniteLattice& l,
                                       const std::string& first,
                                       const std::string& second);

// Order embedding of the Boolean lattice over the parts of a k-fold circuit
// into the lattice of flats: a part subset maps to the intersection of the
// complement closures of the parts outside it, and the target height is
// sum(|part| - 1 over chosen parts) + ell - k. The three local conditions
// (meets preserved, joins reaching the top, heights matching near the top)
// together with balance give a modular sublattice image on which the target
// height equals the rank.
struct EmbeddingReport {
  bool meet_preserving = false;
  bool join_at_top = false;
  bool rho_matches_near_top = false;
  bool image_meet_closed = false;
  bool image_join_closed = false;
  bool image_modular = false;
  bool rho_matches_everywhere = false;
  bool balanced = false;

  bool local_conditions() const {
    return meet_preserving && join_at_top && rho_matches_near_top;
  }
  bool modular_embedding() const {
    return image_meet_closed && image_join_closed && image_modular &&
           rho_matches_everywhere;
  }
};

EmbeddingReport verify_modular_embedding(const Matroid& m,
                                         const KFoldCircuit& kf);

// Graphviz rendering with one node per lattice element, labelled by its
// member labels and registered function values.
std::string lattice_dot(const FiniteLattice& l, const GroundSet& g);

}  // namespace mkit
