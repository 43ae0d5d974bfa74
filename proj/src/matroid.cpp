#include "mkit/matroid.hpp"

#include <atomic>
#include <bit>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

#include "mkit/errors.hpp"

namespace mkit {

namespace {

// Dense memo tables stay affordable up to 2^22 one-byte entries.
constexpr int kDenseLimit = 22;

}  // namespace

struct Matroid::Cache {
  explicit Cache(int n) : n(n) {}

  int n;

  std::once_flag dense_init;
  std::unique_ptr<std::atomic<signed char>[]> dense;

  std::shared_mutex map_mu;
  std::unordered_map<Mask, signed char> map;

  std::mutex circuits_mu;
  bool have_circuits = false;
  std::vector<Mask> circuit_list;

  std::atomic<signed char>* dense_table() {
    std::call_once(dense_init, [this] {
      std::size_t cells = std::size_t{1} << n;
      dense = std::make_unique<std::atomic<signed char>[]>(cells);
      for (std::size_t i = 0; i < cells; ++i)
        dense[i].store(-1, std::memory_order_relaxed);
    });
    return dense.get();
  }
};

Matroid::Matroid(GroundPtr ground, std::shared_ptr<const RankOracle> oracle)
    : ground_(std::move(ground)),
      oracle_(std::move(oracle)),
      cache_(std::make_shared<Cache>(ground_->size())) {
  if (!ground_ || !oracle_) throw DomainError("matroid needs a ground set and an oracle");
}

void Matroid::check_subset(Mask s) const {
  if (s & ~full()) throw DomainError("subset has elements outside the ground set");
}

int Matroid::rank(Mask s) const {
  check_subset(s);
  if (size() <= kDenseLimit) {
    auto* table = cache_->dense_table();
    signed char hit = table[s].load(std::memory_order_relaxed);
    if (hit >= 0) return hit;
    int r = oracle_->rank(s);
    table[s].store(static_cast<signed char>(r), std::memory_order_relaxed);
    return r;
  }
  {
    std::shared_lock lock(cache_->map_mu);
    auto it = cache_->map.find(s);
    if (it != cache_->map.end()) return it->second;
  }
  int r = oracle_->rank(s);
  std::unique_lock lock(cache_->map_mu);
  cache_->map.emplace(s, static_cast<signed char>(r));
  return r;
}

int Matroid::dual_rank(Mask s) const {
  check_subset(s);
  return rank(full() ^ s) + popcount(s) - rank_full();
}

Mask Matroid::closure(Mask s) const {
  check_subset(s);
  int r = rank(s);
  Mask out = s;
  for_each_element(full() & ~s, [&](int e) {
    if (rank(s | bit(e)) == r) out |= bit(e);
  });
  return out;
}

bool Matroid::is_cyclic(Mask s) const {
  check_subset(s);
  int r = rank(s);
  bool cyclic = true;
  for_each_element(s, [&](int e) {
    if (cyclic && rank(s ^ bit(e)) != r) cyclic = false;
  });
  return cyclic;
}

Mask Matroid::cyclic_core(Mask s) const {
  check_subset(s);
  int r = rank(s);
  Mask core = 0;
  for_each_element(s, [&](int e) {
    if (rank(s ^ bit(e)) == r) core |= bit(e);
  });
  return core;
}

const std::vector<Mask>& Matroid::circuits(int bound) const {
  {
    std::lock_guard lock(cache_->circuits_mu);
    if (cache_->have_circuits) return cache_->circuit_list;
  }
  int cap = resolve_enumeration_bound(bound);
  if (size() > cap)
    throw CapacityError("circuit enumeration over " + std::to_string(size()) +
                        " elements exceeds the bound of " + std::to_string(cap) +
                        " (set MKIT_MAX_GROUND to raise it)");

  // Walk all independent sets, generated once each by always extending with
  // an element above the current maximum. Every dependent one-element
  // extension is a circuit candidate.
  std::vector<Mask> stack{0};
  std::unordered_set<Mask> found, rejected;
  std::vector<Mask> result;
  const int n = size();
  while (!stack.empty()) {
    Mask indep = stack.back();
    stack.pop_back();
    int top = indep == 0 ? -1 : 63 - std::countl_zero(indep);
    for (int e = 0; e < n; ++e) {
      if (contains(indep, e)) continue;
      Mask cand = indep | bit(e);
      if (rank(cand) == popcount(cand)) {
        if (e > top) stack.push_back(cand);
        continue;
      }
      if (found.count(cand) || rejected.count(cand)) continue;
      bool minimal = true;
      for_each_element(cand, [&](int f) {
        if (minimal && rank(cand ^ bit(f)) != popcount(cand) - 1) minimal = false;
      });
      if (minimal) {
        found.insert(cand);
        result.push_back(cand);
      } else {
        rejected.insert(cand);
      }
    }
  }
  std::sort(result.begin(), result.end());

  std::lock_guard lock(cache_->circuits_mu);
  if (!cache_->have_circuits) {
    cache_->circuit_list = std::move(result);
    cache_->have_circuits = true;
  }
  return cache_->circuit_list;
}

std::vector<Mask> Matroid::components(Mask s, int bound) const {
  check_subset(s);
  const auto& all = circuits(bound);

  std::vector<int> parent(size());
  for (int i = 0; i < size(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  for (Mask c : all) {
    if ((c & s) != c) continue;
    int head = lowest_element(c);
    for_each_element(c, [&](int e) { parent[find(e)] = find(head); });
  }

  std::unordered_map<int, Mask> groups;
  for_each_element(s, [&](int e) { groups[find(e)] |= bit(e); });
  std::vector<Mask> parts;
  parts.reserve(groups.size());
  for (auto& [root, m] : groups) parts.push_back(m);
  std::sort(parts.begin(), parts.end(),
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });
  return parts;
}

bool Matroid::is_connected_subset(Mask s, int bound) const {
  return s != 0 && components(s, bound).size() == 1;
}

namespace {

class RestrictOracle final : public RankOracle {
 public:
  RestrictOracle(Matroid parent, Mask keep)
      : parent_(std::move(parent)), positions_(elements(keep)) {}

  int rank(Mask s) const override {
    Mask up = 0;
    for_each_element(s, [&](int i) { up |= bit(positions_[i]); });
    return parent_.rank(up);
  }

 private:
  Matroid parent_;
  std::vector<int> positions_;
};

class DualOracle final : public RankOracle {
 public:
  explicit DualOracle(Matroid primal) : primal_(std::move(primal)) {}

  int rank(Mask s) const override { return primal_.dual_rank(s); }

 private:
  Matroid primal_;
};

}  // namespace

Matroid Matroid::restrict(Mask s) const {
  check_subset(s);
  std::vector<std::string> labels;
  for_each_element(s, [&](int e) { labels.push_back(ground_->label(e)); });
  return Matroid(make_ground(std::move(labels)),
                 std::make_shared<RestrictOracle>(*this, s));
}

Matroid Matroid::dual() const {
  return Matroid(ground_, std::make_shared<DualOracle>(*this));
}

bool same_matroid(const Matroid& a, const Matroid& b) {
  if (a.ground().labels() != b.ground().labels()) return false;
  if (a.size() > 24)
    throw CapacityError("exhaustive matroid comparison capped at 24 elements");
  Mask full = a.full();
  for (Mask s = 0;; ++s) {
    if (a.rank(s) != b.rank(s)) return false;
    if (s == full) break;
  }
  return true;
}

std::vector<Mask> all_flats(const Matroid& m, int bound) {
  int cap = resolve_enumeration_bound(bound);
  if (m.size() > cap)
    throw CapacityError("flat enumeration over " + std::to_string(m.size()) +
                        " elements exceeds the bound of " + std::to_string(cap) +
                        " (set MKIT_MAX_GROUND to raise it)");
  Mask full = m.full();
  std::set<Mask> seen;
  std::vector<Mask> queue = {m.closure(0)};
  seen.insert(queue.front());
  for (size_t head = 0; head < queue.size(); ++head) {
    Mask f = queue[head];
    for_each_element(full & ~f, [&](int e) {
      Mask g = m.closure(f | bit(e));
      if (seen.insert(g).second) queue.push_back(g);
    });
  }
  return {seen.begin(), seen.end()};
}

}  // namespace mkit
