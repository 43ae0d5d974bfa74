#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mkit/matroid.hpp"

namespace mkit {

// A k-fold circuit: a cyclic set whose rank is |support| - k, together with
// its principal partition. Removing any part leaves a (k-1)-fold circuit,
// and the parts refine every circuit inside the support.
struct KFoldCircuit {
  Mask support = 0;
  int k = 0;
  std::vector<Mask> parts;  // sorted by smallest element
  bool connected = false;

  int ell() const { return static_cast<int>(parts.size()); }
};

// |s| - rank(s) when s is cyclic, empty otherwise. The empty set is the
// unique 0-fold circuit.
std::optional<int> kfold_order(const Matroid& m, Mask s);

// Principal partition of a non-empty cyclic set: e and f share a part
// exactly when rank(d - e - f) == rank(d) - 1.
KFoldCircuit principal_partition(const Matroid& m, Mask d, int bound = 0);

// A k-fold circuit is trivial when it has exactly k parts; the restriction
// then splits as a direct sum of the parts, each a circuit.
bool is_trivial(const KFoldCircuit& kf);

// Ear decomposition of a connected cyclic set: a circuit sequence where
// every later circuit meets the union so far, adds something new, and adds
// an inclusion-minimal ear. A connected k-fold circuit has exactly k ears.
struct EarDecomposition {
  std::vector<Mask> circuits;  // chosen circuits in order
  std::vector<Mask> unions;    // prefix unions
  std::vector<Mask> ears;      // ears[0] is the first circuit itself

  int ear_count() const { return static_cast<int>(circuits.size()); }
};

// Deterministic: starts from the lexicographically smallest circuit, then
// repeatedly picks the lexicographically smallest inclusion-minimal ear
// (ties broken by the smaller circuit).
EarDecomposition ear_decomposition(const Matroid& m, Mask d, int bound = 0);

// All k-fold circuits, by full subset scan over the ground set (capacity
// limited), in ascending mask order.
std::vector<KFoldCircuit> enumerate_kfold_circuits(const Matroid& m, int k,
                                                   int bound = 0);

// A pair (I, j) of part indices whose closure flats fail the modular rank
// equality.
struct ModularPairWitness {
  std::vector<int> prefix_parts;
  int part = 0;
};

// Searches for a non-modular pair (intersection of the I-side closures
// against one more part closure). Exhaustive over all (I, j) for up to 8
// parts; beyond that scans prefixes of the identity order plus ell^2 seeded
// random orders. Returns empty when every scanned pair is modular.
std::optional<ModularPairWitness> find_nonmodular_pair(const Matroid& m,
                                                       const KFoldCircuit& kf,
                                                       unsigned seed = 0);

// Balance of a k-fold circuit: the intersection of the part-complement
// closures has rank at most ell - k; balanced means equality. Unbalanced
// reports carry a violating modular pair.
struct BalanceReport {
  KFoldCircuit circuit;
  Mask intersection = 0;
  int intersection_rank = 0;
  bool balanced = false;
  std::optional<ModularPairWitness> violation;
};

BalanceReport balance_report(const Matroid& m, const KFoldCircuit& kf);

// Checks every k-fold circuit with 1 <= k <= k_max for balance.
struct PropertyVerdict {
  bool pass = true;
  std::map<int, long long> checked;
  std::vector<BalanceReport> counterexamples;
};

PropertyVerdict verify_kfold_property(const Matroid& m, int k_max, int bound = 0);

// Per-component balance of a disconnected k-fold circuit. Balanced
// components always compose to a balanced whole; the converse can fail, so
// the report keeps both sides.
struct ComponentBalance {
  KFoldCircuit circuit;
  bool balanced = false;
};

struct ComposeCheck {
  std::vector<ComponentBalance> components;
  bool whole_balanced = false;
  bool composition_sound = true;
};

ComposeCheck disconnected_compose_check(const Matroid& m, const KFoldCircuit& kf,
                                        int bound = 0);

// Upper bound for k-uniform matroid matching: over every flat z and every
// partition of the flat family, rank(z) plus the sum over groups of
// floor((rank(z u group-union) - rank(z)) / k) bounds the best matching.
struct MatchingInstance {
  Matroid m;
  int k = 1;
  std::vector<Mask> flats;
};

struct MatchingBound {
  int exact = 0;  // best |H'| with rank(union) == k |H'|, by subset scan
  int bound = 0;
  Mask witness_flat = 0;
  std::vector<std::vector<int>> witness_partition;
};

MatchingBound matching_upper_bound(const MatchingInstance& inst);

}  // namespace mkit
