#pragma once

#include <memory>
#include <vector>

#include "mkit/ground.hpp"
#include "mkit/mask.hpp"

namespace mkit {

// Rank function backend. Implementations must satisfy the matroid axioms:
// rank(empty) = 0, monotone, unit increase, submodular. They are called
// through Matroid, which memoizes, so they may be arbitrarily slow per query.
class RankOracle {
 public:
  virtual ~RankOracle() = default;
  virtual int rank(Mask s) const = 0;
};

// Immutable matroid handle: a ground set plus a memoized rank oracle.
// Copies are cheap and share the cache; all methods are safe to call from
// several threads at once.
class Matroid {
 public:
  Matroid(GroundPtr ground, std::shared_ptr<const RankOracle> oracle);

  const GroundSet& ground() const { return *ground_; }
  GroundPtr ground_ptr() const { return ground_; }
  int size() const { return ground_->size(); }
  Mask full() const { return ground_->full(); }

  int rank(Mask s) const;
  int rank_full() const { return rank(full()); }

  // rank of s in the dual: r(E minus s) + |s| - r(E).
  int dual_rank(Mask s) const;

  // All x with rank(s + x) == rank(s); always contains s.
  Mask closure(Mask s) const;
  bool is_flat(Mask s) const { return closure(s) == s; }

  // s is cyclic when removing any single element keeps the rank.
  // Equivalently s is a union of circuits; the empty set is cyclic.
  bool is_cyclic(Mask s) const;

  // Largest cyclic subset of s: the elements of s lying in a circuit of
  // the restriction to s, i.e. those whose removal keeps rank(s).
  Mask cyclic_core(Mask s) const;

  // All circuits (minimal dependent sets), found by extending independent
  // sets one element at a time. Capacity-limited; the result is cached.
  const std::vector<Mask>& circuits(int bound = 0) const;

  // Partition of s into connectivity classes: e and f are together when
  // some circuit inside s contains both. Elements on no circuit of the
  // restriction are singleton classes. Parts are sorted by smallest element.
  std::vector<Mask> components(Mask s, int bound = 0) const;

  // True when components(s) is a single class. The empty set is not
  // connected.
  bool is_connected_subset(Mask s, int bound = 0) const;

  // Matroid on the elements of s, labels preserved, declared order kept.
  Matroid restrict(Mask s) const;

  Matroid dual() const;

 private:
  struct Cache;

  void check_subset(Mask s) const;

  GroundPtr ground_;
  std::shared_ptr<const RankOracle> oracle_;
  std::shared_ptr<Cache> cache_;
};

// True when both matroids have the same ground labels in the same order and
// identical rank functions (checked on every subset).
bool same_matroid(const Matroid& a, const Matroid& b);

// Every flat, grown breadth-first from closure(empty) by single-element
// extensions. Capacity-limited by the ground size; sorted ascending as masks.
std::vector<Mask> all_flats(const Matroid& m, int bound = 0);

}  // namespace mkit
