#include "mkit/count.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mkit/errors.hpp"

namespace mkit {

void CountParams::validate() const {
  if (a < 1) throw DomainError("count parameter a must be at least 1");
  if (b < 0 || b >= 2 * a)
    throw DomainError("count parameter b must satisfy 0 <= b < 2a");
}

namespace {

struct PebbleGame {
  const Multigraph& g;
  int a, b;
  std::vector<int> pebbles;
  std::vector<std::vector<int>> out;
  std::vector<int> mark, prev;
  int stamp = 0;

  PebbleGame(CountParams p, const Multigraph& graph)
      : g(graph),
        a(p.a),
        b(p.b),
        pebbles(graph.vertex_count, p.a),
        out(graph.vertex_count),
        mark(graph.vertex_count, 0),
        prev(graph.vertex_count, -1) {}

  // Depth-first search along arc directions from `to` for a vertex outside
  // {to, other} holding a free pebble. On success the path is reversed and
  // the pebble moves to `to`.
  bool pull(int to, int other) {
    ++stamp;
    mark[to] = stamp;
    prev[to] = -1;
    std::vector<int> stack{to};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v != to && v != other && pebbles[v] > 0) {
        --pebbles[v];
        ++pebbles[to];
        for (int x = v; prev[x] != -1; x = prev[x]) {
          int p = prev[x];
          out[p].erase(std::find(out[p].begin(), out[p].end(), x));
          out[x].push_back(p);
        }
        return true;
      }
      for (int w : out[v]) {
        if (w == v || mark[w] == stamp) continue;
        mark[w] = stamp;
        prev[w] = v;
        stack.push_back(w);
      }
    }
    return false;
  }

  bool insert(int u, int v) {
    if (u == v) {
      while (pebbles[u] < b + 1 && pull(u, -1)) {
      }
      if (pebbles[u] < b + 1) return false;
      --pebbles[u];
      out[u].push_back(u);
      return true;
    }
    while (pebbles[u] + pebbles[v] < b + 1) {
      if (!pull(u, v) && !pull(v, u)) return false;
    }
    int tail = pebbles[u] > 0 ? u : v;
    int head = tail == u ? v : u;
    --pebbles[tail];
    out[tail].push_back(head);
    return true;
  }
};

void check_edge_subset(const Multigraph& g, Mask s) {
  if (s & ~all_of(g.edge_count()))
    throw DomainError("edge subset leaves the graph");
}

}  // namespace

namespace {

int count_rank_unchecked(CountParams p, const Multigraph& g, Mask s) {
  PebbleGame game(p, g);
  int accepted = 0;
  for_each_element(s, [&](int i) {
    if (game.insert(g.edges[i].first, g.edges[i].second)) ++accepted;
  });
  int free = std::accumulate(game.pebbles.begin(), game.pebbles.end(), 0);
  if (free + accepted != p.a * g.vertex_count)
    throw std::logic_error("pebble conservation violated");
  return accepted;
}

class CountOracle final : public RankOracle {
 public:
  CountOracle(CountParams p, Multigraph g) : p_(p), g_(std::move(g)) {}
  int rank(Mask s) const override { return count_rank_unchecked(p_, g_, s); }

 private:
  CountParams p_;
  Multigraph g_;
};

}  // namespace

int count_rank(CountParams p, const Multigraph& g, Mask s) {
  p.validate();
  g.validate();
  check_edge_subset(g, s);
  return count_rank_unchecked(p, g, s);
}

Matroid count_matroid(CountParams p, const Multigraph& g,
                      std::vector<std::string> labels) {
  p.validate();
  g.validate();
  if (labels.empty()) labels = numeric_labels(g.edge_count(), 0);
  if (static_cast<int>(labels.size()) != g.edge_count())
    throw DomainError("count matroid label count must match the edge count");
  return Matroid(make_ground(std::move(labels)), std::make_shared<CountOracle>(p, g));
}

Multigraph ab_clique(CountParams p, int n) {
  p.validate();
  if (n < 0) throw DomainError("clique size must be non-negative");
  Multigraph g;
  g.vertex_count = n;
  int loops = std::max(p.a - p.b, 0);
  for (int v = 0; v < n; ++v)
    for (int c = 0; c < loops; ++c) g.edges.emplace_back(v, v);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int c = 0; c < 2 * p.a - p.b; ++c) g.edges.emplace_back(u, v);
  g.validate();
  return g;
}

bool is_rigid_subset(CountParams p, const Multigraph& g, Mask s) {
  if (s == 0) throw DomainError("rigidity is undefined for an empty edge set");
  return count_rank(p, g, s) == p.a * g.spanned_count(s) - p.b;
}

bool is_rigid(CountParams p, const Multigraph& g) {
  g.validate();
  return is_rigid_subset(p, g, all_of(g.edge_count()));
}

CountClosure count_closure(CountParams p, const Multigraph& g, Mask s) {
  p.validate();
  g.validate();
  check_edge_subset(g, s);

  // Count multiplicities in g per loop vertex and vertex pair.
  std::map<std::pair<int, int>, int> mult;
  for (auto [u, v] : g.edges) mult[{std::min(u, v), std::max(u, v)}]++;

  CountClosure out;
  out.ambient.vertex_count = g.vertex_count;
  std::map<std::pair<int, int>, int> first_slot;
  int clique_loops = std::max(p.a - p.b, 0);
  int clique_pairs = 2 * p.a - p.b;
  for (int v = 0; v < g.vertex_count; ++v) {
    auto key = std::make_pair(v, v);
    int copies = std::max(clique_loops, mult.count(key) ? mult[key] : 0);
    first_slot[key] = out.ambient.edge_count();
    for (int c = 0; c < copies; ++c) out.ambient.edges.emplace_back(v, v);
  }
  for (int u = 0; u < g.vertex_count; ++u)
    for (int v = u + 1; v < g.vertex_count; ++v) {
      auto key = std::make_pair(u, v);
      int copies = std::max(clique_pairs, mult.count(key) ? mult[key] : 0);
      first_slot[key] = out.ambient.edge_count();
      for (int c = 0; c < copies; ++c) out.ambient.edges.emplace_back(u, v);
    }
  out.ambient.validate();

  std::map<std::pair<int, int>, int> used;
  out.edge_map.reserve(g.edge_count());
  for (auto [u, v] : g.edges) {
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    out.edge_map.push_back(first_slot[key] + used[key]++);
  }

  Mask lifted = 0;
  for_each_element(s, [&](int i) { lifted |= bit(out.edge_map[i]); });
  Matroid ambient = count_matroid(p, out.ambient);
  out.closure = ambient.closure(lifted);
  return out;
}

std::vector<int> technicolour_vertices(const Multigraph& g,
                                       const std::vector<Mask>& parts) {
  g.validate();
  std::vector<int> colours(g.vertex_count, 0);
  std::vector<int> last(g.vertex_count, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    check_edge_subset(g, parts[i]);
    for_each_element(parts[i], [&](int e) {
      for (int v : {g.edges[e].first, g.edges[e].second}) {
        if (last[v] != static_cast<int>(i)) {
          last[v] = static_cast<int>(i);
          ++colours[v];
        }
      }
    });
  }
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count; ++v)
    if (colours[v] >= 2) out.push_back(v);
  return out;
}

}  // namespace mkit
