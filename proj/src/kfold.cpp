#include "mkit/kfold.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "mkit/errors.hpp"

namespace mkit {

namespace {

class Dsu {
 public:
  explicit Dsu(int n) : parent_(n) {
    for (int i = 0; i < n; ++i) parent_[i] = i;
  }

  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

  void unite(int a, int b) { parent_[find(a)] = find(b); }

 private:
  std::vector<int> parent_;
};

bool modular_pair(const Matroid& m, Mask x, Mask y) {
  return m.rank(x) + m.rank(y) == m.rank(x & y) + m.rank(x | y);
}

}  // namespace

std::optional<int> kfold_order(const Matroid& m, Mask s) {
  if (!m.is_cyclic(s)) return std::nullopt;
  return popcount(s) - m.rank(s);
}

KFoldCircuit principal_partition(const Matroid& m, Mask d, int bound) {
  if (d == 0) throw DomainError("principal partition needs a non-empty set");
  if (!m.is_cyclic(d))
    throw DomainError("principal partition needs a cyclic set");

  int rd = m.rank(d);
  std::vector<int> els = elements(d);
  int t = static_cast<int>(els.size());
  Dsu dsu(t);
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j) {
      Mask rest = d & ~bit(els[i]) & ~bit(els[j]);
      if (m.rank(rest) == rd - 1) dsu.unite(i, j);
    }

  std::vector<Mask> parts;
  for (int i = 0; i < t; ++i) {
    if (dsu.find(i) != i) continue;
    Mask part = 0;
    for (int j = 0; j < t; ++j)
      if (dsu.find(j) == dsu.find(i)) part |= bit(els[j]);
    parts.push_back(part);
  }
  std::sort(parts.begin(), parts.end(),
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });

  KFoldCircuit kf;
  kf.support = d;
  kf.k = popcount(d) - rd;
  kf.parts = std::move(parts);
  kf.connected = m.is_connected_subset(d, bound);
  return kf;
}

bool is_trivial(const KFoldCircuit& kf) { return kf.ell() == kf.k; }

EarDecomposition ear_decomposition(const Matroid& m, Mask d, int bound) {
  EarDecomposition out;
  if (d == 0) return out;
  if (!m.is_cyclic(d))
    throw DomainError("ear decomposition needs a cyclic set");
  if (!m.is_connected_subset(d, bound))
    throw DomainError(
        "the set splits into several connected pieces; decompose each "
        "separately");

  std::vector<Mask> circs;
  for (Mask c : m.circuits(bound))
    if ((c & ~d) == 0) circs.push_back(c);

  Mask first = circs.front();
  for (Mask c : circs)
    if (lex_less(c, first)) first = c;
  out.circuits.push_back(first);
  out.unions.push_back(first);
  out.ears.push_back(first);

  while (out.unions.back() != d) {
    Mask cur = out.unions.back();
    std::vector<std::pair<Mask, Mask>> candidates;  // (ear, circuit)
    for (Mask c : circs)
      if ((c & cur) != 0 && (c & ~cur) != 0) candidates.emplace_back(c & ~cur, c);
    if (candidates.empty())
      throw std::logic_error("connected cyclic set ran out of ears");

    auto minimal = [&](Mask ear) {
      for (const auto& [other, oc] : candidates) {
        (void)oc;
        if (other != ear && (other & ~ear) == 0) return false;
      }
      return true;
    };
    std::pair<Mask, Mask> pick{0, 0};
    for (const auto& cand : candidates) {
      if (!minimal(cand.first)) continue;
      if (pick.second == 0 || lex_less(cand.first, pick.first) ||
          (cand.first == pick.first && lex_less(cand.second, pick.second)))
        pick = cand;
    }
    out.circuits.push_back(pick.second);
    out.unions.push_back(cur | pick.second);
    out.ears.push_back(pick.first);
  }
  return out;
}

std::vector<KFoldCircuit> enumerate_kfold_circuits(const Matroid& m, int k,
                                                   int bound) {
  if (k < 0) throw DomainError("circuit order must be non-negative");
  if (k == 0) return {KFoldCircuit{}};

  int cap = resolve_enumeration_bound(bound);
  if (m.size() > cap)
    throw CapacityError("subset scan over " + std::to_string(m.size()) +
                        " elements exceeds the bound of " + std::to_string(cap) +
                        " (set MKIT_MAX_GROUND to raise it)");

  std::vector<KFoldCircuit> out;
  Mask full = m.full();
  for (Mask s = 1;; ++s) {
    if (popcount(s) - m.rank(s) == k && m.is_cyclic(s))
      out.push_back(principal_partition(m, s, bound));
    if (s == full) break;
  }
  return out;
}

std::optional<ModularPairWitness> find_nonmodular_pair(const Matroid& m,
                                                       const KFoldCircuit& kf,
                                                       unsigned seed) {
  int ell = kf.ell();
  if (ell <= 1) return std::nullopt;

  std::vector<Mask> cl(ell);
  for (int i = 0; i < ell; ++i)
    cl[i] = m.closure(kf.support & ~kf.parts[i]);

  if (ell <= 8) {
    Mask top = (Mask{1} << ell) - 1;
    for (Mask i_set = 1; i_set < top; ++i_set) {
      Mask x = m.full();
      for_each_element(i_set, [&](int i) { x &= cl[i]; });
      for (int j = 0; j < ell; ++j) {
        if (contains(i_set, j)) continue;
        if (!modular_pair(m, x, cl[j]))
          return ModularPairWitness{elements(i_set), j};
      }
    }
    return std::nullopt;
  }

  std::vector<int> order(ell);
  std::mt19937 rng(seed);
  long long rounds = 1 + static_cast<long long>(ell) * ell;
  for (long long round = 0; round < rounds; ++round) {
    for (int i = 0; i < ell; ++i) order[i] = i;
    if (round > 0) std::shuffle(order.begin(), order.end(), rng);
    Mask x = cl[order[0]];
    for (int t = 1; t < ell; ++t) {
      Mask y = cl[order[t]];
      if (!modular_pair(m, x, y)) {
        std::vector<int> prefix(order.begin(), order.begin() + t);
        std::sort(prefix.begin(), prefix.end());
        return ModularPairWitness{std::move(prefix), order[t]};
      }
      x &= y;
    }
  }
  return std::nullopt;
}

BalanceReport balance_report(const Matroid& m, const KFoldCircuit& kf) {
  BalanceReport rep;
  rep.circuit = kf;

  Mask f;
  if (kf.parts.empty()) {
    f = m.closure(kf.support);
  } else {
    f = m.full();
    for (Mask part : kf.parts) f &= m.closure(kf.support & ~part);
  }
  rep.intersection = f;
  rep.intersection_rank = m.rank(f);

  int slack = kf.ell() - kf.k;
  if (rep.intersection_rank > slack)
    throw std::logic_error(
        "closure intersection outranks its ceiling; the rank backend is not "
        "submodular");
  rep.balanced = rep.intersection_rank == slack;
  if (!rep.balanced) {
    rep.violation = find_nonmodular_pair(m, kf);
    if (!rep.violation)
      throw std::logic_error(
          "rank deficit without a non-modular pair of closures");
  }
  return rep;
}

PropertyVerdict verify_kfold_property(const Matroid& m, int k_max, int bound) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  PropertyVerdict verdict;
  for (int k = 1; k <= k_max; ++k) {
    auto list = enumerate_kfold_circuits(m, k, bound);
    verdict.checked[k] = static_cast<long long>(list.size());
    for (const KFoldCircuit& kf : list) {
      BalanceReport rep = balance_report(m, kf);
      if (!rep.balanced) {
        verdict.pass = false;
        verdict.counterexamples.push_back(std::move(rep));
      }
    }
  }
  return verdict;
}

ComposeCheck disconnected_compose_check(const Matroid& m, const KFoldCircuit& kf,
                                        int bound) {
  if (kf.support == 0)
    throw DomainError("component analysis needs a non-empty circuit");
  if (kf.connected)
    throw DomainError(
        "component analysis applies to disconnected circuits; this one is "
        "connected");

  ComposeCheck check;
  bool all_balanced = true;
  for (Mask comp : m.components(kf.support, bound)) {
    KFoldCircuit sub = principal_partition(m, comp, bound);
    BalanceReport rep = balance_report(m, sub);
    all_balanced = all_balanced && rep.balanced;
    check.components.push_back({std::move(sub), rep.balanced});
  }
  check.whole_balanced = balance_report(m, kf).balanced;
  check.composition_sound = !(all_balanced && !check.whole_balanced);
  return check;
}

MatchingBound matching_upper_bound(const MatchingInstance& inst) {
  const Matroid& m = inst.m;
  if (inst.k < 1) throw DomainError("matching order must be at least 1");
  if (inst.flats.empty())
    throw DomainError("matching bound needs at least one flat");
  if (inst.flats.size() > 8)
    throw CapacityError("matching bound search capped at 8 flats");
  if (m.size() > 12)
    throw CapacityError("matching bound flat enumeration capped at 12 elements");
  for (Mask h : inst.flats)
    if (!m.is_flat(h) || m.rank(h) != inst.k)
      throw DomainError("every member of the family must be a rank-" +
                        std::to_string(inst.k) + " flat");

  MatchingBound out;
  int t = static_cast<int>(inst.flats.size());
  for (Mask sub = 0; sub < (Mask{1} << t); ++sub) {
    Mask u = 0;
    for_each_element(sub, [&](int i) { u |= inst.flats[i]; });
    if (m.rank(u) == inst.k * popcount(sub))
      out.exact = std::max(out.exact, popcount(sub));
  }

  std::vector<Mask> hosts = all_flats(m, 12);
  int best = -1;
  std::vector<int> rgs(t, 0);
  auto evaluate = [&](Mask z) {
    int rz = m.rank(z);
    int group_count = 1 + *std::max_element(rgs.begin(), rgs.end());
    int value = rz;
    for (int g = 0; g < group_count; ++g) {
      Mask u = z;
      for (int i = 0; i < t; ++i)
        if (rgs[i] == g) u |= inst.flats[i];
      value += (m.rank(u) - rz) / inst.k;
    }
    if (best < 0 || value < best) {
      best = value;
      out.witness_flat = z;
      out.witness_partition.assign(group_count, {});
      for (int i = 0; i < t; ++i) out.witness_partition[rgs[i]].push_back(i);
    }
  };

  for (Mask z : hosts) {
    auto gen = [&](auto&& self, int pos, int max_used) -> void {
      if (pos == t) {
        evaluate(z);
        return;
      }
      for (int c = 0; c <= max_used + 1; ++c) {
        rgs[pos] = c;
        self(self, pos + 1, std::max(max_used, c));
      }
    };
    gen(gen, 1, 0);
  }
  out.bound = best;
  if (out.exact > out.bound)
    throw std::logic_error(
        "matching value exceeded its upper bound; the rank backend is not a "
        "matroid");
  return out;
}

}  // namespace mkit
