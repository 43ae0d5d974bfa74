#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mkit {

// Subset of a ground set with at most 64 elements, one bit per position.
using Mask = std::uint64_t;

constexpr Mask bit(int i) { return Mask{1} << i; }

constexpr bool contains(Mask m, int i) { return (m >> i) & 1; }

// All positions 0..n-1.
constexpr Mask all_of(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline int popcount(Mask m) { return std::popcount(m); }

inline int lowest_element(Mask m) { return std::countr_zero(m); }

inline std::vector<int> elements(Mask m) {
  std::vector<int> out;
  for (Mask t = m; t; t &= t - 1) out.push_back(std::countr_zero(t));
  return out;
}

inline Mask mask_of(const std::vector<int>& elems) {
  Mask m = 0;
  for (int e : elems) m |= bit(e);
  return m;
}

// Orders sets by their sorted element sequences ({0,5} < {1,2}, {0} < {0,2}).
// Below the smallest differing element the sets agree; whoever owns it wins
// unless the other side is exhausted there, making the shorter set smaller.
inline bool lex_less(Mask a, Mask b) {
  if (a == b) return false;
  Mask d = a ^ b;
  Mask low = d & (~d + 1);
  Mask before = low - 1;
  if (a & low) return (b & ~before) != 0;
  return (a & ~before) == 0;
}

template <class F>
void for_each_element(Mask m, F&& f) {
  for (Mask t = m; t; t &= t - 1) f(std::countr_zero(t));
}

// Visits every subset of m, including m itself and the empty set.
template <class F>
void for_each_subset(Mask m, F&& f) {
  Mask s = m;
  while (true) {
    f(s);
    if (s == 0) break;
    s = (s - 1) & m;
  }
}

}  // namespace mkit
