#include "mkit/constructions.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "mkit/errors.hpp"

namespace mkit {

namespace {

class UniformOracle final : public RankOracle {
 public:
  explicit UniformOracle(int r) : r_(r) {}
  int rank(Mask s) const override { return std::min(popcount(s), r_); }

 private:
  int r_;
};

class GraphicOracle final : public RankOracle {
 public:
  explicit GraphicOracle(Multigraph g) : g_(std::move(g)) {}

  int rank(Mask s) const override {
    std::vector<int> parent(g_.vertex_count);
    for (int v = 0; v < g_.vertex_count; ++v) parent[v] = v;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int r = 0;
    for_each_element(s, [&](int i) {
      int a = find(g_.edges[i].first), b = find(g_.edges[i].second);
      if (a != b) {
        parent[a] = b;
        ++r;
      }
    });
    return r;
  }

 private:
  Multigraph g_;
};

class CircuitListOracle final : public RankOracle {
 public:
  explicit CircuitListOracle(std::vector<Mask> circuits)
      : circuits_(std::move(circuits)) {}

  int rank(Mask s) const override {
    // Greedy basis of s; correct for any matroid independence system.
    Mask indep = 0;
    int r = 0;
    for_each_element(s, [&](int e) {
      Mask t = indep | bit(e);
      if (independent(t)) {
        indep = t;
        ++r;
      }
    });
    return r;
  }

  bool independent(Mask s) const {
    for (Mask c : circuits_)
      if ((c & s) == c) return false;
    return true;
  }

 private:
  std::vector<Mask> circuits_;
};

class DirectSumOracle final : public RankOracle {
 public:
  DirectSumOracle(std::vector<Matroid> parts, std::vector<int> offsets)
      : parts_(std::move(parts)), offsets_(std::move(offsets)) {}

  int rank(Mask s) const override {
    int r = 0;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      Mask trace = (s >> offsets_[i]) & parts_[i].full();
      r += parts_[i].rank(trace);
    }
    return r;
  }

 private:
  std::vector<Matroid> parts_;
  std::vector<int> offsets_;
};

// Rank of a subset of a parallel connection, split into side traces.
// A subset is spanned either summand-wise or through the base point, so
// the rank is the smaller of the two readings.
class ParallelOracle final : public RankOracle {
 public:
  ParallelOracle(Matroid left, Matroid right, std::vector<int> owner_left,
                 std::vector<int> owner_right, int base_position)
      : left_(std::move(left)),
        right_(std::move(right)),
        owner_left_(std::move(owner_left)),
        owner_right_(std::move(owner_right)),
        base_(base_position) {}

  int rank(Mask s) const override {
    Mask a = 0, b = 0;
    for_each_element(s, [&](int i) {
      if (owner_left_[i] >= 0) a |= bit(owner_left_[i]);
      if (owner_right_[i] >= 0) b |= bit(owner_right_[i]);
    });
    Mask ae = a | bit(owner_left_[base_]);
    Mask be = b | bit(owner_right_[base_]);
    int separate = left_.rank(a) + right_.rank(b);
    int through = left_.rank(ae) + right_.rank(be) - 1;
    return std::min(separate, through);
  }

 private:
  Matroid left_, right_;
  std::vector<int> owner_left_, owner_right_;
  int base_;
};

struct ConnectionLayout {
  std::vector<std::string> labels;   // left order, then right minus shared
  std::vector<int> owner_left;       // position in left ground, -1 if none
  std::vector<int> owner_right;
  int base = -1;                     // position of the shared label
};

ConnectionLayout connection_layout(const Matroid& left, const Matroid& right,
                                   const std::string& shared) {
  const auto& gl = left.ground();
  const auto& gr = right.ground();
  if (!gl.has(shared) || !gr.has(shared))
    throw DomainError("shared element '" + shared + "' must appear on both sides");
  for (const auto& l : gl.labels())
    if (l != shared && gr.has(l))
      throw DomainError("sides may share only '" + shared + "', but both contain '" + l + "'");
  if (gl.size() < 2 || gr.size() < 2)
    throw DomainError("each side of a connection needs at least two elements");

  auto check_side = [&](const Matroid& m, const char* name) {
    int e = m.ground().index(shared);
    if (m.rank(bit(e)) == 0)
      throw DomainError(std::string("shared element is a loop in the ") + name + " side");
    if (m.rank(m.full() ^ bit(e)) != m.rank_full())
      throw DomainError(std::string("shared element is a coloop in the ") + name + " side");
  };
  check_side(left, "left");
  check_side(right, "right");

  ConnectionLayout out;
  for (const auto& l : gl.labels()) out.labels.push_back(l);
  for (const auto& l : gr.labels())
    if (l != shared) out.labels.push_back(l);

  int n = static_cast<int>(out.labels.size());
  out.owner_left.assign(n, -1);
  out.owner_right.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const auto& l = out.labels[i];
    if (gl.has(l)) out.owner_left[i] = gl.index(l);
    if (gr.has(l)) out.owner_right[i] = gr.index(l);
  }
  out.base = static_cast<int>(gl.index(shared));
  return out;
}

}  // namespace

Matroid uniform_matroid(int rank, int n, std::vector<std::string> labels) {
  if (n < 0 || rank < 0 || rank > n)
    throw DomainError("uniform matroid needs 0 <= rank <= size");
  if (labels.empty()) labels = numeric_labels(n);
  if (static_cast<int>(labels.size()) != n)
    throw DomainError("uniform matroid label count must match its size");
  return Matroid(make_ground(std::move(labels)), std::make_shared<UniformOracle>(rank));
}

Matroid graphic_matroid(const Multigraph& g, std::vector<std::string> labels) {
  g.validate();
  if (labels.empty()) labels = numeric_labels(g.edge_count(), 0);
  if (static_cast<int>(labels.size()) != g.edge_count())
    throw DomainError("graphic matroid label count must match the edge count");
  return Matroid(make_ground(std::move(labels)), std::make_shared<GraphicOracle>(g));
}

Matroid explicit_circuits_matroid(GroundPtr ground, std::vector<Mask> circuits) {
  if (!ground) throw DomainError("explicit circuits need a ground set");
  std::sort(circuits.begin(), circuits.end());
  circuits.erase(std::unique(circuits.begin(), circuits.end()), circuits.end());

  auto name = [&](Mask c) {
    std::string s = "{";
    bool first = true;
    for (int e : elements(c)) {
      if (!first) s += ",";
      s += ground->label(e);
      first = false;
    }
    return s + "}";
  };

  for (Mask c : circuits) {
    if (c == 0) throw DomainError("the empty set cannot be a circuit");
    if (c & ~ground->full())
      throw DomainError("circuit " + name(c) + " leaves the ground set");
  }
  for (std::size_t i = 0; i < circuits.size(); ++i)
    for (std::size_t j = 0; j < circuits.size(); ++j) {
      if (i == j) continue;
      if ((circuits[i] & circuits[j]) == circuits[i])
        throw DomainError("circuit " + name(circuits[i]) + " is contained in " +
                          name(circuits[j]));
    }
  // Weak elimination: dropping a common element from a pair must leave a
  // dependent set, i.e. one containing some listed circuit.
  for (std::size_t i = 0; i < circuits.size(); ++i)
    for (std::size_t j = i + 1; j < circuits.size(); ++j) {
      Mask common = circuits[i] & circuits[j];
      Mask merged = circuits[i] | circuits[j];
      bool bad = false;
      for_each_element(common, [&](int e) {
        if (bad) return;
        Mask rest = merged ^ bit(e);
        bool has_circuit = false;
        for (Mask c : circuits)
          if ((c & rest) == c) {
            has_circuit = true;
            break;
          }
        if (!has_circuit) bad = true;
      });
      if (bad)
        throw DomainError("circuit elimination fails for " + name(circuits[i]) +
                          " and " + name(circuits[j]));
    }

  return Matroid(std::move(ground), std::make_shared<CircuitListOracle>(std::move(circuits)));
}

Matroid direct_sum(const std::vector<Matroid>& parts) {
  if (parts.empty()) throw DomainError("direct sum needs at least one part");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  std::vector<int> offsets;
  int offset = 0;
  for (const auto& m : parts) {
    offsets.push_back(offset);
    for (const auto& l : m.ground().labels()) {
      if (!seen.insert(l).second)
        throw DomainError("direct sum parts share the label '" + l + "'");
      labels.push_back(l);
    }
    offset += m.size();
  }
  if (offset > 64) throw DomainError("direct sum exceeds 64 elements");
  return Matroid(make_ground(std::move(labels)),
                 std::make_shared<DirectSumOracle>(parts, std::move(offsets)));
}

Matroid parallel_connection(const Matroid& left, const Matroid& right,
                            const std::string& shared) {
  auto layout = connection_layout(left, right, shared);
  return Matroid(make_ground(layout.labels),
                 std::make_shared<ParallelOracle>(left, right, layout.owner_left,
                                                  layout.owner_right, layout.base));
}

Matroid two_sum(const Matroid& left, const Matroid& right, const std::string& shared) {
  Matroid joined = parallel_connection(left, right, shared);
  int e = joined.ground().index(shared);
  return joined.restrict(joined.full() ^ bit(e));
}

Matroid parallel_connection_by_circuits(const Matroid& left, const Matroid& right,
                                        const std::string& shared) {
  auto layout = connection_layout(left, right, shared);
  if (layout.labels.size() > 16)
    throw CapacityError("circuit-list parallel connection capped at 16 elements");

  auto lift = [&](const Matroid& side, bool is_left) {
    std::vector<int> to_joined(side.size(), -1);
    for (int i = 0; i < static_cast<int>(layout.labels.size()); ++i) {
      int o = is_left ? layout.owner_left[i] : layout.owner_right[i];
      if (o >= 0) to_joined[o] = i;
    }
    return to_joined;
  };
  auto lift_mask = [](Mask m, const std::vector<int>& map) {
    Mask out = 0;
    for_each_element(m, [&](int e) { out |= bit(map[e]); });
    return out;
  };

  auto left_map = lift(left, true);
  auto right_map = lift(right, false);
  Mask base = bit(left_map[left.ground().index(shared)]);

  std::vector<Mask> merged;
  std::vector<Mask> through_left, through_right;
  for (Mask c : left.circuits()) {
    Mask up = lift_mask(c, left_map);
    if (up & base) through_left.push_back(up);
    merged.push_back(up);
  }
  for (Mask c : right.circuits()) {
    Mask up = lift_mask(c, right_map);
    if (up & base) through_right.push_back(up);
    merged.push_back(up);
  }
  for (Mask a : through_left)
    for (Mask b : through_right) merged.push_back((a | b) ^ base);

  return explicit_circuits_matroid(make_ground(layout.labels), std::move(merged));
}

}  // namespace mkit
