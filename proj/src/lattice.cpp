#include "mkit/lattice.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mkit/errors.hpp"

namespace mkit {

namespace {

constexpr int kLatticeNodeCap = 4096;

}  // namespace

FiniteLattice::FiniteLattice(std::vector<Mask> sets) : sets_(std::move(sets)) {
  if (sets_.empty()) throw DomainError("a lattice needs at least one set");
  std::sort(sets_.begin(), sets_.end());
  sets_.erase(std::unique(sets_.begin(), sets_.end()), sets_.end());
  int n = size();
  if (n > kLatticeNodeCap)
    throw CapacityError("lattice build capped at " +
                        std::to_string(kLatticeNodeCap) + " nodes, got " +
                        std::to_string(n));

  words_ = (n + 63) / 64;
  below_.assign(static_cast<size_t>(n) * words_, 0);
  above_.assign(static_cast<size_t>(n) * words_, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((sets_[j] & ~sets_[i]) == 0) {
        below_[static_cast<size_t>(i) * words_ + j / 64] |= Mask{1} << (j % 64);
        above_[static_cast<size_t>(j) * words_ + i / 64] |= Mask{1} << (i % 64);
      }

  Mask everything = 0;
  Mask common = ~Mask{0};
  for (Mask s : sets_) {
    everything |= s;
    common &= s;
  }
  meet_closed_ = sets_.back() == everything;
  join_closed_ = sets_.front() == common;
  for (int i = 0; i < n && (meet_closed_ || join_closed_); ++i)
    for (int j = i + 1; j < n && (meet_closed_ || join_closed_); ++j) {
      if (meet_closed_ && !has(sets_[i] & sets_[j])) meet_closed_ = false;
      if (join_closed_ && !has(sets_[i] | sets_[j])) join_closed_ = false;
    }
  if (!meet_closed_ && !join_closed_)
    throw DomainError(
        "the family is neither intersection-closed with a greatest set nor "
        "union-closed with a least set");
}

int FiniteLattice::index_of(Mask s) const {
  auto it = std::lower_bound(sets_.begin(), sets_.end(), s);
  if (it == sets_.end() || *it != s)
    throw DomainError("set is not a lattice node");
  return static_cast<int>(it - sets_.begin());
}

bool FiniteLattice::has(Mask s) const {
  return std::binary_search(sets_.begin(), sets_.end(), s);
}

bool FiniteLattice::leq(int a, int b) const {
  return (sets_[static_cast<size_t>(a)] & ~sets_[static_cast<size_t>(b)]) == 0;
}

int FiniteLattice::meet(int a, int b) const {
  if (meet_closed_)
    return index_of(sets_[static_cast<size_t>(a)] & sets_[static_cast<size_t>(b)]);
  const std::uint64_t* ra = below_.data() + static_cast<size_t>(a) * words_;
  const std::uint64_t* rb = below_.data() + static_cast<size_t>(b) * words_;
  for (int w = words_ - 1; w >= 0; --w) {
    std::uint64_t both = ra[w] & rb[w];
    if (both) return w * 64 + 63 - std::countl_zero(both);
  }
  throw std::logic_error("lattice pair without a lower bound");
}

int FiniteLattice::join(int a, int b) const {
  if (join_closed_)
    return index_of(sets_[static_cast<size_t>(a)] | sets_[static_cast<size_t>(b)]);
  const std::uint64_t* ra = above_.data() + static_cast<size_t>(a) * words_;
  const std::uint64_t* rb = above_.data() + static_cast<size_t>(b) * words_;
  for (int w = 0; w < words_; ++w) {
    std::uint64_t both = ra[w] & rb[w];
    if (both) return w * 64 + std::countr_zero(both);
  }
  throw std::logic_error("lattice pair without an upper bound");
}

void FiniteLattice::set_function(const std::string& name,
                                 const std::function<long long(Mask)>& f) {
  std::vector<long long> vals(sets_.size());
  for (size_t i = 0; i < sets_.size(); ++i) vals[i] = f(sets_[i]);
  functions_[name] = std::move(vals);
}

const std::vector<long long>& FiniteLattice::values(
    const std::string& name) const {
  auto it = functions_.find(name);
  if (it == functions_.end())
    throw DomainError("no function named '" + name + "' on this lattice");
  return it->second;
}

std::vector<std::string> FiniteLattice::function_names() const {
  std::vector<std::string> names;
  for (const auto& [name, vals] : functions_) {
    (void)vals;
    names.push_back(name);
  }
  return names;
}

const std::vector<std::pair<int, int>>& FiniteLattice::cover_pairs() const {
  if (covers_ready_) return covers_;
  int n = size();
  for (int up = 0; up < n; ++up) {
    for (int lo = 0; lo < n; ++lo) {
      if (lo == up || !leq(lo, up)) continue;
      bool direct = true;
      for (int mid = 0; mid < n && direct; ++mid)
        if (mid != lo && mid != up && leq(lo, mid) && leq(mid, up))
          direct = false;
      if (direct) covers_.emplace_back(lo, up);
    }
  }
  covers_ready_ = true;
  return covers_;
}

FiniteLattice lattice_of_flats(const Matroid& m, int bound) {
  FiniteLattice l(all_flats(m, bound));
  l.set_function("rank", [&m](Mask s) { return m.rank(s); });
  return l;
}

FiniteLattice lattice_of_cyclic_sets(const Matroid& m, int bound) {
  const auto& circuits = m.circuits(bound);
  std::set<Mask> seen;
  std::vector<Mask> queue = {0};
  seen.insert(0);
  for (size_t head = 0; head < queue.size(); ++head) {
    Mask s = queue[head];
    for (Mask c : circuits) {
      Mask u = s | c;
      if (seen.insert(u).second) {
        if (static_cast<int>(seen.size()) > kLatticeNodeCap)
          throw CapacityError("lattice build capped at " +
                              std::to_string(kLatticeNodeCap) + " nodes");
        queue.push_back(u);
      }
    }
  }
  FiniteLattice l({seen.begin(), seen.end()});
  l.set_function("rho", [&m](Mask s) { return popcount(s) - m.rank(s); });
  return l;
}

bool is_modular_pair(const FiniteLattice& l, int a, int b,
                     const std::string& fname) {
  const auto& f = l.values(fname);
  return f[static_cast<size_t>(a)] + f[static_cast<size_t>(b)] ==
         f[static_cast<size_t>(l.meet(a, b))] +
             f[static_cast<size_t>(l.join(a, b))];
}

GeometricReport check_geometric(const FiniteLattice& l,
                                const std::string& fname) {
  const auto& f = l.values(fname);
  GeometricReport rep;

  rep.graded = true;
  for (const auto& [lo, up] : l.cover_pairs())
    if (f[static_cast<size_t>(up)] != f[static_cast<size_t>(lo)] + 1)
      rep.graded = false;

  std::vector<Mask> atoms;
  for (const auto& [lo, up] : l.cover_pairs())
    if (lo == l.bottom()) atoms.push_back(l.node(up));
  rep.atomistic = true;
  int n = l.size();
  for (int x = 0; x < n; ++x) {
    Mask u = l.node(l.bottom());
    for (Mask atom : atoms)
      if ((atom & ~l.node(x)) == 0) u |= atom;
    int join_of_atoms = -1;
    for (int v = 0; v < n; ++v)
      if ((u & ~l.node(v)) == 0) {
        join_of_atoms = v;
        break;
      }
    if (join_of_atoms != x) rep.atomistic = false;
  }

  rep.semimodular = true;
  for (int a = 0; a < n && rep.semimodular; ++a)
    for (int b = a + 1; b < n && rep.semimodular; ++b)
      if (f[static_cast<size_t>(l.meet(a, b))] +
              f[static_cast<size_t>(l.join(a, b))] >
          f[static_cast<size_t>(a)] + f[static_cast<size_t>(b)])
        rep.semimodular = false;
  return rep;
}

namespace {

// Shared inner test: under the equal-difference hypothesis the meet of the
// two one-sided joins must rise by that same difference above x ^ y.
template <typename MeetFn, typename JoinFn>
bool pseudomodular_triple(const std::vector<long long>& f, MeetFn&& meet,
                          JoinFn&& join, int x, int y, int z) {
  auto fv = [&](int i) { return f[static_cast<size_t>(i)]; };
  int xz = join(x, z);
  int yz = join(y, z);
  long long d = fv(xz) - fv(x);
  if (fv(yz) - fv(y) != d) return true;
  int xy = join(x, y);
  if (fv(join(xy, z)) - fv(xy) != d) return true;
  return fv(meet(xz, yz)) - fv(meet(x, y)) == d;
}

}  // namespace

PseudomodularReport check_pseudomodular(const FiniteLattice& l,
                                        const std::string& fname, ScanMode mode,
                                        unsigned seed, long long samples) {
  const auto& f = l.values(fname);
  int n = l.size();
  if (mode == ScanMode::auto_scan)
    mode = n <= 200 ? ScanMode::exhaustive : ScanMode::sampled;

  PseudomodularReport rep;
  if (mode == ScanMode::exhaustive) {
    if (n > 400)
      throw CapacityError("exhaustive pseudomodularity scan capped at 400 "
                          "nodes; use the sampled mode");
    rep.exhaustive = true;
    std::vector<int> meet_table(static_cast<size_t>(n) * n);
    std::vector<int> join_table(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        meet_table[static_cast<size_t>(a) * n + b] = l.meet(a, b);
        join_table[static_cast<size_t>(a) * n + b] = l.join(a, b);
      }
    auto meet = [&](int a, int b) {
      return meet_table[static_cast<size_t>(a) * n + b];
    };
    auto join = [&](int a, int b) {
      return join_table[static_cast<size_t>(a) * n + b];
    };
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          ++rep.checked;
          if (!pseudomodular_triple(f, meet, join, x, y, z)) {
            rep.pseudomodular = false;
            rep.witness = {x, y, z};
            return rep;
          }
        }
    return rep;
  }

  auto meet = [&](int a, int b) { return l.meet(a, b); };
  auto join = [&](int a, int b) { return l.join(a, b); };
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (long long i = 0; i < samples; ++i) {
    int x = pick(rng), y = pick(rng), z = pick(rng);
    ++rep.checked;
    if (!pseudomodular_triple(f, meet, join, x, y, z)) {
      rep.pseudomodular = false;
      rep.witness = {x, y, z};
      return rep;
    }
  }
  return rep;
}

namespace {

bool qualifies_for_sum(const FiniteLattice& l, const std::string& fname) {
  const auto& f = l.values(fname);
  for (const auto& [lo, up] : l.cover_pairs())
    if (f[static_cast<size_t>(lo)] > f[static_cast<size_t>(up)]) return false;
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (f[static_cast<size_t>(l.meet(a, b))] +
              f[static_cast<size_t>(l.join(a, b))] >
          f[static_cast<size_t>(a)] + f[static_cast<size_t>(b)])
        return false;
  return check_pseudomodular(l, fname, ScanMode::exhaustive).pseudomodular;
}

}  // namespace

SumCheckReport pseudomodular_sum_check(FiniteLattice& l,
                                       const std::string& first,
                                       const std::string& second) {
  SumCheckReport rep;
  rep.first_qualifies = qualifies_for_sum(l, first);
  rep.second_qualifies = qualifies_for_sum(l, second);

  const auto& f = l.values(first);
  const auto& g = l.values(second);
  std::string sum_name = first + "+" + second;
  {
    size_t idx = 0;
    l.set_function(sum_name, [&](Mask) {
      long long v = f[idx] + g[idx];
      ++idx;
      return v;
    });
  }
  rep.sum_pseudomodular =
      check_pseudomodular(l, sum_name, ScanMode::exhaustive).pseudomodular;
  rep.implication_holds =
      !(rep.first_qualifies && rep.second_qualifies && !rep.sum_pseudomodular);
  return rep;
}

EmbeddingReport verify_modular_embedding(const Matroid& m,
                                         const KFoldCircuit& kf) {
  int ell = kf.ell();
  if (ell < 1) throw DomainError("embedding check needs at least one part");
  if (ell > 12) throw CapacityError("embedding check capped at 12 parts");

  std::vector<Mask> cl(ell);
  for (int i = 0; i < ell; ++i)
    cl[i] = m.closure(kf.support & ~kf.parts[i]);
  Mask top = (Mask{1} << ell) - 1;

  std::vector<Mask> phi(top + 1);
  std::vector<long long> rho(top + 1);
  for (Mask i_set = 0; i_set <= top; ++i_set) {
    Mask complement = top & ~i_set;
    if (complement == 0) {
      phi[i_set] = m.closure(kf.support);
    } else {
      Mask x = m.full();
      for_each_element(complement, [&](int i) { x &= cl[i]; });
      phi[i_set] = x;
    }
    long long h = ell - kf.k;
    for_each_element(i_set, [&](int i) { h += popcount(kf.parts[i]) - 1; });
    rho[i_set] = h;
  }

  EmbeddingReport rep;
  rep.meet_preserving = true;
  for (Mask a = 0; a <= top && rep.meet_preserving; ++a)
    for (Mask b = a; b <= top; ++b)
      if (phi[a & b] != (phi[a] & phi[b])) {
        rep.meet_preserving = false;
        break;
      }

  rep.join_at_top = true;
  for (Mask a = 0; a <= top && rep.join_at_top; ++a)
    for (Mask b = a; b <= top; ++b) {
      if ((a | b) != top) continue;
      if (m.closure(phi[a] | phi[b]) != phi[top]) {
        rep.join_at_top = false;
        break;
      }
    }

  rep.rho_matches_near_top = true;
  for (Mask i_set = 0; i_set <= top; ++i_set) {
    if (popcount(top & ~i_set) > 2) continue;
    if (m.rank(phi[i_set]) != rho[i_set]) rep.rho_matches_near_top = false;
  }

  std::set<Mask> image(phi.begin(), phi.end());
  rep.image_meet_closed = true;
  rep.image_join_closed = true;
  rep.image_modular = true;
  for (auto ia = image.begin(); ia != image.end(); ++ia)
    for (auto ib = std::next(ia); ib != image.end(); ++ib) {
      Mask x = *ia, y = *ib;
      if (!image.count(x & y)) rep.image_meet_closed = false;
      Mask j = m.closure(x | y);
      if (!image.count(j)) rep.image_join_closed = false;
      if (m.rank(x) + m.rank(y) != m.rank(x & y) + m.rank(j))
        rep.image_modular = false;
    }

  rep.rho_matches_everywhere = true;
  for (Mask i_set = 0; i_set <= top; ++i_set)
    if (m.rank(phi[i_set]) != rho[i_set]) rep.rho_matches_everywhere = false;

  rep.balanced = balance_report(m, kf).balanced;
  return rep;
}

std::string lattice_dot(const FiniteLattice& l, const GroundSet& g) {
  std::ostringstream out;
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  auto names = l.function_names();
  for (int i = 0; i < l.size(); ++i) {
    out << "  n" << i << " [label=\"{";
    bool first = true;
    for (int e : elements(l.node(i))) {
      if (!first) out << ",";
      out << g.label(e);
      first = false;
    }
    out << "}";
    for (const auto& name : names)
      out << "\\n" << name << "=" << l.values(name)[static_cast<size_t>(i)];
    out << "\"];\n";
  }
  for (const auto& [lo, up] : l.cover_pairs())
    out << "  n" << lo << " -> n" << up << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace mkit
