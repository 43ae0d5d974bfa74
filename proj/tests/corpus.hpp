#pragma once

// Seeded instance pools shared by the property tests and the acceptance
// suite. Everything is built once, deterministically, from fixed seeds, so
// failures reproduce by name.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mkit/constructions.hpp"
#include "mkit/count.hpp"
#include "mkit/matroid.hpp"
#include "mkit/multigraph.hpp"

namespace mkit::testing {

struct CorpusEntry {
  std::string name;
  Matroid m;
};

struct CountEntry {
  std::string name;
  CountParams p;
  Multigraph g;
  Matroid m;
};

inline std::vector<std::string> prefixed_labels(const std::string& prefix,
                                                int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

inline Multigraph random_multigraph(std::mt19937& rng, int vmin, int vmax,
                                    int emin, int emax, bool loops) {
  std::uniform_int_distribution<int> vpick(vmin, vmax);
  Multigraph g;
  g.vertex_count = vpick(rng);
  std::uniform_int_distribution<int> epick(emin, emax);
  std::uniform_int_distribution<int> vertex(0, g.vertex_count - 1);
  std::uniform_int_distribution<int> coin(0, 9);
  int edges = epick(rng);
  for (int i = 0; i < edges; ++i) {
    int u = vertex(rng);
    int v = vertex(rng);
    if (u == v && !(loops && coin(rng) == 0)) {
      v = (u + 1) % g.vertex_count;
    }
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  return g;
}

inline std::vector<std::vector<mpq_class>> random_matrix(std::mt19937& rng,
                                                         int rows, int cols,
                                                         int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  std::vector<std::vector<mpq_class>> m(static_cast<size_t>(rows));
  for (auto& row : m) {
    row.resize(static_cast<size_t>(cols));
    for (auto& x : row) x = entry(rng);
  }
  return m;
}

inline const std::vector<std::pair<int, int>>& count_parameter_pairs() {
  static const std::vector<std::pair<int, int>> pairs = {
      {1, 0}, {1, 1}, {2, 1}, {2, 2}, {2, 3}, {3, 2}};
  return pairs;
}

// Thirty-six seeded count matroids plus a few small cliques, kept with
// their graphs so graph-level checks (rigidity, technicolour vertices) can
// reach the underlying multigraph.
inline const std::vector<CountEntry>& count_corpus() {
  static const std::vector<CountEntry> entries = [] {
    std::vector<CountEntry> out;
    std::mt19937 rng(420101);
    for (int i = 0; i < 36; ++i) {
      auto [a, b] = count_parameter_pairs()[static_cast<size_t>(i) % 6];
      CountParams p{a, b};
      Multigraph g = random_multigraph(rng, 3, 5, 4, 9, true);
      out.push_back({"count-" + std::to_string(i) + "-a" + std::to_string(a) +
                         "b" + std::to_string(b),
                     p, g, count_matroid(p, g)});
    }
    for (auto [a, b] : count_parameter_pairs()) {
      CountParams p{a, b};
      for (int n = 2; n <= 4; ++n) {
        Multigraph g = ab_clique(p, n);
        if (g.edge_count() > 10) continue;
        out.push_back({"clique-" + std::to_string(n) + "-a" +
                           std::to_string(a) + "b" + std::to_string(b),
                       p, g, count_matroid(p, g)});
      }
    }
    return out;
  }();
  return entries;
}

// Two hundred matroids with at most 10 elements spanning every backend:
// uniform, graphic, count, linear over GF(2), GF(3) and the rationals,
// explicit circuit lists, duals, restrictions, direct sums, 2-sums and
// parallel connections.
inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> out;
    std::mt19937 rng(271828);
    auto add = [&](const std::string& name, Matroid m) {
      out.push_back({name + "/" + std::to_string(out.size()), std::move(m)});
    };

    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> npick(4, 9);
      int n = npick(rng);
      std::uniform_int_distribution<int> rpick(0, n);
      add("uniform", uniform_matroid(rpick(rng), n));
    }
    for (int i = 0; i < 20; ++i)
      add("graphic", graphic_matroid(random_multigraph(rng, 3, 6, 4, 9, true)));
    for (size_t i = 0; i < count_corpus().size() && i < 20; ++i)
      out.push_back({count_corpus()[i].name, count_corpus()[i].m});
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> rows(3, 5), cols(5, 9);
      add("gf2", linear_matroid(
                     {2, random_matrix(rng, rows(rng), cols(rng), 0, 1), {}}));
    }
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> rows(3, 5), cols(5, 9);
      if (i % 2 == 0)
        add("gf3", linear_matroid(
                       {3, random_matrix(rng, rows(rng), cols(rng), 0, 2), {}}));
      else
        add("rational",
            linear_matroid(
                {0, random_matrix(rng, rows(rng), cols(rng), -2, 2), {}}));
    }
    for (int i = 0; i < 20; ++i) {
      Matroid g = graphic_matroid(random_multigraph(rng, 3, 5, 4, 8, false));
      add("circuit-list", explicit_circuits_matroid(g.ground_ptr(), g.circuits()));
    }
    for (int i = 0; i < 20; ++i) {
      if (i % 3 == 0) {
        std::uniform_int_distribution<int> npick(4, 9);
        int n = npick(rng);
        std::uniform_int_distribution<int> rpick(0, n);
        add("dual-uniform", uniform_matroid(rpick(rng), n).dual());
      } else if (i % 3 == 1) {
        add("dual-graphic",
            graphic_matroid(random_multigraph(rng, 3, 5, 4, 9, true)).dual());
      } else {
        auto [a, b] = count_parameter_pairs()[static_cast<size_t>(i) % 6];
        add("dual-count",
            count_matroid({a, b}, random_multigraph(rng, 3, 4, 4, 8, true))
                .dual());
      }
    }
    for (int i = 0; i < 20; ++i) {
      Matroid base =
          i % 2 == 0
              ? graphic_matroid(random_multigraph(rng, 4, 6, 7, 10, true))
              : linear_matroid(
                    {2, random_matrix(rng, 4, std::uniform_int_distribution<int>(
                                                  7, 10)(rng),
                                      0, 1),
                     {}});
      Mask s = 0;
      std::uniform_int_distribution<int> coin(0, 2);
      for (int e = 0; e < base.size(); ++e)
        if (coin(rng) != 0) s |= bit(e);
      if (popcount(s) < 4) s = all_of(4);
      add("restrict", base.restrict(s));
    }
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> npick(2, 5);
      int n1 = npick(rng), n2 = npick(rng);
      std::uniform_int_distribution<int> r1(1, n1 - 1), r2(1, n2 - 1);
      add("direct-sum",
          direct_sum({uniform_matroid(r1(rng), n1, prefixed_labels("a", n1)),
                      uniform_matroid(r2(rng), n2, prefixed_labels("b", n2))}));
    }
    for (int i = 0; i < 20; ++i) {
      std::uniform_int_distribution<int> size(3, 5);
      int n1 = size(rng), n2 = size(rng);
      std::uniform_int_distribution<int> r1(1, n1 - 1);
      auto left_labels = prefixed_labels("a", n1 - 1);
      left_labels.push_back("s");
      Matroid left = uniform_matroid(r1(rng), n1, left_labels);
      Multigraph cyc;
      cyc.vertex_count = n2;
      for (int v = 0; v < n2; ++v) cyc.edges.emplace_back(v, (v + 1) % n2);
      auto right_labels = prefixed_labels("b", n2 - 1);
      right_labels.push_back("s");
      Matroid right = graphic_matroid(cyc, right_labels);
      if (i % 2 == 0)
        add("two-sum", two_sum(left, right, "s"));
      else
        add("parallel", parallel_connection(left, right, "s"));
    }
    return out;
  }();
  return entries;
}

// A composed matroid whose full ground set is a k-fold circuit with a known
// principal partition, predicted by the direct sum, 2-sum and parallel
// connection composition rules applied to small hand-verified blocks.
struct PredictedCircuit {
  std::string name;
  Matroid m;
  int k = 0;
  std::vector<std::vector<std::string>> parts;
};

namespace tree_detail {

struct Node {
  // 0 uniform circuit, 1 uniform spread, 2 banana, 3 direct sum, 4 two-sum,
  // 5 parallel connection
  int kind = 0;
  int rank = 1;
  int size = 2;
  std::vector<int> paths;
  std::vector<Node> children;
};

inline int node_size(const Node& n) {
  switch (n.kind) {
    case 0:
    case 1:
      return n.size;
    case 2: {
      int total = 0;
      for (int p : n.paths) total += p;
      return total;
    }
    case 3:
      return node_size(n.children[0]) + node_size(n.children[1]);
    case 4:
      return node_size(n.children[0]) + node_size(n.children[1]) - 2;
    default:
      return node_size(n.children[0]) + node_size(n.children[1]) - 1;
  }
}

inline Node random_node(std::mt19937& rng, int depth, int budget) {
  std::uniform_int_distribution<int> kind_pick(0, depth < 3 && budget >= 8 ? 5
                                                                           : 2);
  Node n;
  n.kind = kind_pick(rng);
  switch (n.kind) {
    case 0: {
      std::uniform_int_distribution<int> r(3, std::min(4, budget - 1));
      n.rank = r(rng);
      n.size = n.rank + 1;
      break;
    }
    case 1: {
      std::uniform_int_distribution<int> s(4, std::min(5, budget));
      n.size = s(rng);
      std::uniform_int_distribution<int> r(1, n.size - 2);
      n.rank = r(rng);
      break;
    }
    case 2: {
      std::uniform_int_distribution<int> t(3, budget >= 8 ? 4 : 3);
      int paths = t(rng);
      std::uniform_int_distribution<int> len(1, budget / paths >= 2 ? 2 : 1);
      for (int i = 0; i < paths; ++i) n.paths.push_back(len(rng));
      break;
    }
    default: {
      n.children.push_back(random_node(rng, depth + 1, budget / 2));
      n.children.push_back(random_node(rng, depth + 1, budget / 2));
      break;
    }
  }
  return n;
}

struct Realized {
  Matroid m;
  int k;
  std::vector<std::vector<std::string>> parts;
};

// `forced` labels are grafted onto base blocks so a parent connection can
// share an element with both children; every base keeps at least one fresh
// label of its own.
inline Realized realize(const Node& n, int& counter,
                        std::vector<std::string> forced) {
  auto fresh = [&] { return "g" + std::to_string(counter++); };
  switch (n.kind) {
    case 0:
    case 1: {
      std::vector<std::string> labels = forced;
      while (static_cast<int>(labels.size()) < n.size) labels.push_back(fresh());
      Matroid m = uniform_matroid(n.rank, n.size, labels);
      std::vector<std::vector<std::string>> parts;
      if (n.kind == 0) {
        parts.push_back(labels);
      } else {
        for (const auto& l : labels) parts.push_back({l});
      }
      return {std::move(m), n.size - n.rank, std::move(parts)};
    }
    case 2: {
      Multigraph g;
      g.vertex_count = 2;
      std::vector<std::vector<std::string>> parts;
      std::vector<std::string> labels;
      size_t next_forced = 0;
      for (size_t p = 0; p < n.paths.size(); ++p) {
        int len = n.paths[p];
        std::vector<std::string> path_labels;
        int prev = 0;
        for (int i = 0; i < len; ++i) {
          int to = i + 1 == len ? 1 : g.vertex_count++;
          g.edges.emplace_back(std::min(prev, to), std::max(prev, to));
          prev = to;
          std::string label = i == 0 && next_forced < forced.size()
                                  ? forced[next_forced++]
                                  : fresh();
          path_labels.push_back(label);
          labels.push_back(label);
        }
        parts.push_back(std::move(path_labels));
      }
      return {graphic_matroid(g, labels), static_cast<int>(n.paths.size()) - 1,
              std::move(parts)};
    }
    case 3: {
      Realized left = realize(n.children[0], counter, std::move(forced));
      Realized right = realize(n.children[1], counter, {});
      Realized out{direct_sum({left.m, right.m}), left.k + right.k,
                   std::move(left.parts)};
      for (auto& p : right.parts) out.parts.push_back(std::move(p));
      return out;
    }
    default: {
      std::string shared = "s" + std::to_string(counter++);
      std::vector<std::string> left_forced = std::move(forced);
      left_forced.push_back(shared);
      Realized left = realize(n.children[0], counter, std::move(left_forced));
      Realized right = realize(n.children[1], counter, {shared});
      auto split = [&](Realized& side) {
        std::vector<std::string> own;
        std::vector<std::vector<std::string>> rest;
        for (auto& part : side.parts) {
          bool has = false;
          std::vector<std::string> kept;
          for (auto& l : part) {
            if (l == shared)
              has = true;
            else
              kept.push_back(l);
          }
          if (has)
            own = std::move(kept);
          else
            rest.push_back(std::move(part));
        }
        side.parts = std::move(rest);
        return own;
      };
      std::vector<std::string> left_home = split(left);
      std::vector<std::string> right_home = split(right);
      Realized out{n.kind == 4 ? two_sum(left.m, right.m, shared)
                               : parallel_connection(left.m, right.m, shared),
                   0,
                   std::move(left.parts)};
      for (auto& p : right.parts) out.parts.push_back(std::move(p));
      if (n.kind == 4) {
        out.k = left.k + right.k - 1;
        std::vector<std::string> merged = left_home;
        merged.insert(merged.end(), right_home.begin(), right_home.end());
        if (!merged.empty()) out.parts.push_back(std::move(merged));
      } else {
        out.k = left.k + right.k;
        if (!left_home.empty()) out.parts.push_back(std::move(left_home));
        if (!right_home.empty()) out.parts.push_back(std::move(right_home));
        out.parts.push_back({shared});
      }
      return out;
    }
  }
}

}  // namespace tree_detail

inline const std::vector<PredictedCircuit>& construction_tree_corpus() {
  static const std::vector<PredictedCircuit> trees = [] {
    std::vector<PredictedCircuit> out;
    std::mt19937 rng(161803);
    for (int i = 0; i < 100; ++i) {
      tree_detail::Node root = tree_detail::random_node(rng, 1, 12);
      int counter = 0;
      tree_detail::Realized r = tree_detail::realize(root, counter, {});
      out.push_back({"tree-" + std::to_string(i), std::move(r.m), r.k,
                     std::move(r.parts)});
    }
    return out;
  }();
  return trees;
}

}  // namespace mkit::testing
