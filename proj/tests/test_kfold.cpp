#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "corpus.hpp"
#include "oracles.hpp"
#include "mkit/constructions.hpp"
#include "mkit/errors.hpp"
#include "mkit/kfold.hpp"

using namespace mkit;
using namespace mkit::testing;

namespace {

Matroid theta_graph() {
  Multigraph g;
  g.vertex_count = 5;
  g.edges = {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4}};
  return graphic_matroid(g);
}

Matroid k5_with_theta_labels() {
  Multigraph g;
  g.vertex_count = 5;
  std::vector<std::string> labels;
  g.edges = {{0, 1}, {1, 4}, {0, 2}, {2, 4}, {0, 3}, {3, 4},
             {0, 4}, {1, 2}, {1, 3}, {2, 3}};
  return graphic_matroid(g);
}

}  // namespace

TEST_CASE("fold order of simple sets") {
  Matroid m = uniform_matroid(1, 3);
  CHECK(kfold_order(m, 0) == 0);
  CHECK(!kfold_order(m, bit(0)).has_value());
  CHECK(kfold_order(m, bit(0) | bit(1)) == 1);
  CHECK(kfold_order(m, m.full()) == 2);
}

TEST_CASE("principal partition of spread and circuit cases") {
  Matroid circuit = uniform_matroid(2, 3);
  KFoldCircuit kf = principal_partition(circuit, circuit.full());
  CHECK(kf.k == 1);
  CHECK(kf.ell() == 1);
  CHECK(kf.parts[0] == circuit.full());
  CHECK(kf.connected);
  CHECK(is_trivial(kf));

  Matroid spread = uniform_matroid(1, 4);
  KFoldCircuit sp = principal_partition(spread, spread.full());
  CHECK(sp.k == 3);
  CHECK(sp.ell() == 4);
  for (int i = 0; i < 4; ++i) CHECK(sp.parts[i] == bit(i));
  CHECK(sp.connected);
  CHECK(!is_trivial(sp));

  CHECK_THROWS_AS(principal_partition(spread, 0), DomainError);
  CHECK_THROWS_AS(principal_partition(spread, bit(0)), DomainError);
}

TEST_CASE("principal partition of a theta graph is its three paths") {
  Matroid m = theta_graph();
  KFoldCircuit kf = principal_partition(m, m.full());
  CHECK(kf.k == 2);
  CHECK(kf.ell() == 3);
  CHECK(kf.parts == std::vector<Mask>{0b000011, 0b001100, 0b110000});
  CHECK(!is_trivial(kf));
  CHECK(kf.connected);
}

TEST_CASE("every complete graph edge set splits into singleton parts") {
  Multigraph k4;
  k4.vertex_count = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.edges.emplace_back(u, v);
  Matroid m = graphic_matroid(k4);
  KFoldCircuit kf = principal_partition(m, m.full());
  CHECK(kf.k == 3);
  CHECK(kf.ell() == 6);
  for (int i = 0; i < 6; ++i) CHECK(kf.parts[i] == bit(i));
}

TEST_CASE("partition parts are complements of one-lower subcircuits") {
  int done = 0;
  for (const auto& entry : corpus()) {
    if (entry.m.size() > 9) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    auto k = kfold_order(entry.m, d);
    if (!k || *k < 1 || *k > 4) continue;
    if (++done > 80) break;
    CAPTURE(entry.name);
    KFoldCircuit kf = principal_partition(entry.m, d);
    CHECK(kf.parts == parts_via_subcircuits(entry.m, d));
  }
  CHECK(done > 20);
}

TEST_CASE("partition invariants across the corpus") {
  for (const auto& entry : corpus()) {
    if (entry.m.size() > 10) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    if (d == 0) continue;
    CAPTURE(entry.name);
    KFoldCircuit kf = principal_partition(entry.m, d);
    CHECK(kf.ell() >= kf.k);
    Mask seen = 0;
    for (Mask part : kf.parts) {
      CHECK(part != 0);
      CHECK((seen & part) == 0);
      seen |= part;
      CHECK(kfold_order(entry.m, d & ~part) == kf.k - 1);
    }
    CHECK(seen == d);
  }
}

TEST_CASE("circuits inside a fold respect its partition") {
  for (size_t i = 0; i < corpus().size(); i += 3) {
    const auto& entry = corpus()[i];
    if (entry.m.size() > 9) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    if (d == 0) continue;
    CAPTURE(entry.name);
    KFoldCircuit kf = principal_partition(entry.m, d);
    for (Mask c : entry.m.circuits()) {
      if (c & ~d) continue;
      for (Mask part : kf.parts) {
        Mask common = c & part;
        CHECK((common == 0 || common == part));
      }
    }
  }
}

TEST_CASE("trivial folds restrict to a direct sum of circuit parts") {
  Matroid m = direct_sum({uniform_matroid(2, 3, {"a1", "a2", "a3"}),
                          uniform_matroid(1, 2, {"b1", "b2"})});
  KFoldCircuit kf = principal_partition(m, m.full());
  CHECK(kf.k == 2);
  CHECK(is_trivial(kf));
  CHECK(!kf.connected);

  for (const auto& entry : corpus()) {
    if (entry.m.size() > 10) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    if (d == 0) continue;
    KFoldCircuit pp = principal_partition(entry.m, d);
    if (!is_trivial(pp)) continue;
    CAPTURE(entry.name);
    auto circuits = entry.m.circuits();
    int rank_sum = 0;
    for (Mask part : pp.parts) {
      CHECK(std::find(circuits.begin(), circuits.end(), part) != circuits.end());
      rank_sum += entry.m.rank(part);
    }
    CHECK(entry.m.rank(d) == rank_sum);
    for_each_subset(Mask((1u << pp.ell()) - 1), [&](Mask pick) {
      Mask u = 0;
      int sum = 0;
      for_each_element(pick, [&](int i) {
        u |= pp.parts[i];
        sum += entry.m.rank(pp.parts[i]);
      });
      CHECK(entry.m.rank(u) == sum);
    });
  }
}

TEST_CASE("ear decompositions grow one fold at a time") {
  Matroid m = theta_graph();
  EarDecomposition ears = ear_decomposition(m, m.full());
  CHECK(ears.ear_count() == 2);
  CHECK(ears.circuits[0] == 0b001111);
  CHECK(ears.ears[1] == 0b110000);
  CHECK(ears.unions[1] == m.full());

  CHECK(ear_decomposition(m, 0).ear_count() == 0);
  CHECK_THROWS_AS(ear_decomposition(m, bit(0)), DomainError);
  Matroid split = direct_sum({uniform_matroid(1, 2, {"a1", "a2"}),
                              uniform_matroid(1, 2, {"b1", "b2"})});
  CHECK_THROWS_AS(ear_decomposition(split, split.full()), DomainError);
}

TEST_CASE("connected folds have exactly k ears with unit increments") {
  int done = 0;
  for (const auto& entry : corpus()) {
    if (entry.m.size() > 10) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    if (d == 0 || !entry.m.is_connected_subset(d)) continue;
    if (++done > 60) break;
    CAPTURE(entry.name);
    auto k = kfold_order(entry.m, d);
    REQUIRE(k.has_value());
    EarDecomposition ears = ear_decomposition(entry.m, d);
    CHECK(ears.ear_count() == *k);
    Mask seen = 0;
    for (int j = 0; j < ears.ear_count(); ++j) {
      CHECK(ears.ears[j] != 0);
      CHECK((ears.ears[j] & seen) == 0);
      seen |= ears.ears[j];
      CHECK(ears.unions[j] == seen);
      CHECK(kfold_order(entry.m, ears.unions[j]) == j + 1);
      Mask c = ears.circuits[j];
      CHECK(std::find(entry.m.circuits().begin(), entry.m.circuits().end(), c) !=
            entry.m.circuits().end());
      if (j > 0) {
        CHECK((c & ears.unions[j - 1]) != 0);
        CHECK((c & ~ears.unions[j - 1]) == ears.ears[j]);
      }
    }
    CHECK(seen == d);
  }
  CHECK(done > 10);
}

TEST_CASE("fold enumeration joins up with circuits and dual flats") {
  Matroid m = uniform_matroid(1, 4);
  CHECK(enumerate_kfold_circuits(m, 0).size() == 1);
  CHECK(enumerate_kfold_circuits(m, 1).size() == 6);
  CHECK(enumerate_kfold_circuits(m, 2).size() == 4);
  CHECK(enumerate_kfold_circuits(m, 3).size() == 1);
  CHECK(enumerate_kfold_circuits(m, 4).empty());
  CHECK_THROWS_AS(enumerate_kfold_circuits(m, -1), DomainError);
  CHECK_THROWS_AS(enumerate_kfold_circuits(uniform_matroid(2, 21), 1),
                  CapacityError);

  for (size_t i = 0; i < corpus().size(); i += 6) {
    const auto& entry = corpus()[i];
    if (entry.m.size() > 9) continue;
    CAPTURE(entry.name);
    auto ones = enumerate_kfold_circuits(entry.m, 1);
    std::set<Mask> one_supports;
    for (const auto& kf : ones) one_supports.insert(kf.support);
    auto circuits = entry.m.circuits();
    CHECK(one_supports == std::set<Mask>(circuits.begin(), circuits.end()));

    Matroid dual = entry.m.dual();
    auto dual_flats = all_flats(dual);
    for (int k = 1; k <= 3; ++k) {
      auto folds = enumerate_kfold_circuits(entry.m, k);
      size_t matching_flats = 0;
      for (Mask f : dual_flats)
        if (dual.rank_full() - dual.rank(f) == k) ++matching_flats;
      CHECK(folds.size() == matching_flats);
      for (const auto& kf : folds) {
        CHECK(dual.is_flat(entry.m.full() & ~kf.support));
        CHECK(popcount(kf.support) - entry.m.rank(kf.support) == k);
      }
    }
  }
}

TEST_CASE("a theta needs an ambient chord to balance") {
  Matroid theta = theta_graph();
  KFoldCircuit kf = principal_partition(theta, theta.full());
  BalanceReport rep = balance_report(theta, kf);
  CHECK(rep.intersection == 0);
  CHECK(rep.intersection_rank == 0);
  CHECK(!rep.balanced);
  REQUIRE(rep.violation.has_value());
  Mask x = theta.full();
  for (int i : rep.violation->prefix_parts)
    x &= theta.closure(kf.support & ~kf.parts[i]);
  Mask y = theta.closure(kf.support & ~kf.parts[rep.violation->part]);
  CHECK(!modular_pair_masks(theta, x, y));

  Matroid k5 = k5_with_theta_labels();
  Mask support = all_of(6);
  KFoldCircuit inside = principal_partition(k5, support);
  CHECK(inside.k == 2);
  CHECK(inside.ell() == 3);
  BalanceReport rep5 = balance_report(k5, inside);
  CHECK(rep5.balanced);
  CHECK(rep5.intersection == bit(6));
  CHECK(rep5.intersection_rank == 1);
  CHECK(!rep5.violation.has_value());
}

TEST_CASE("balance matches the exhaustive modular pair scan") {
  int done = 0;
  for (const auto& entry : corpus()) {
    if (entry.m.size() > 9) continue;
    Mask d = entry.m.cyclic_core(entry.m.full());
    auto k = kfold_order(entry.m, d);
    if (!k || *k < 1) continue;
    if (++done > 120) break;
    CAPTURE(entry.name);
    KFoldCircuit kf = principal_partition(entry.m, d);
    if (kf.ell() > 10) continue;
    BalanceReport rep = balance_report(entry.m, kf);
    CHECK(rep.intersection_rank <= kf.ell() - kf.k);
    auto violation = full_pair_violation(entry.m, kf);
    CHECK(rep.balanced == !violation.has_value());
    if (rep.violation) {
      Mask x = entry.m.full();
      for (int i : rep.violation->prefix_parts)
        x &= entry.m.closure(kf.support & ~kf.parts[i]);
      Mask y = entry.m.closure(kf.support & ~kf.parts[rep.violation->part]);
      CHECK(!modular_pair_masks(entry.m, x, y));
    }
  }
  CHECK(done > 40);
}

TEST_CASE("property verification flags the complement circuit family") {
  auto ground = make_ground(numeric_labels(6));
  std::vector<Mask> circuits;
  for (int i = 0; i < 3; ++i)
    circuits.push_back(all_of(6) & ~(bit(2 * i) | bit(2 * i + 1)));
  Matroid m = explicit_circuits_matroid(ground, circuits);
  PropertyVerdict verdict = verify_kfold_property(m, 2);
  CHECK(!verdict.pass);
  CHECK(verdict.checked.at(1) == 3);
  CHECK(verdict.checked.at(2) == 1);
  REQUIRE(verdict.counterexamples.size() == 1);
  const BalanceReport& rep = verdict.counterexamples[0];
  CHECK(rep.circuit.support == m.full());
  CHECK(rep.circuit.ell() == 3);
  CHECK(rep.intersection_rank == 0);

  Multigraph k4;
  k4.vertex_count = 4;
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) k4.edges.emplace_back(u, v);
  PropertyVerdict good = verify_kfold_property(graphic_matroid(k4), 3);
  CHECK(good.pass);
  CHECK(good.counterexamples.empty());
  CHECK(good.checked.at(1) == 7);
  CHECK_THROWS_AS(verify_kfold_property(m, 0), DomainError);
}

TEST_CASE("balanced components always compose upward") {
  Matroid split = direct_sum({theta_graph(), uniform_matroid(1, 2, {"p", "q"})});
  Mask d = split.full();
  KFoldCircuit kf = principal_partition(split, d);
  CHECK(!kf.connected);
  ComposeCheck check = disconnected_compose_check(split, kf);
  REQUIRE(check.components.size() == 2);
  CHECK(!check.components[0].balanced);
  CHECK(check.components[1].balanced);
  CHECK(check.composition_sound);

  Matroid theta = theta_graph();
  KFoldCircuit conn = principal_partition(theta, theta.full());
  CHECK_THROWS_AS(disconnected_compose_check(theta, conn), DomainError);

  for (const auto& entry : corpus()) {
    if (entry.m.size() > 10) continue;
    Mask core = entry.m.cyclic_core(entry.m.full());
    if (core == 0) continue;
    KFoldCircuit whole = principal_partition(entry.m, core);
    if (whole.connected) continue;
    CAPTURE(entry.name);
    ComposeCheck c = disconnected_compose_check(entry.m, whole);
    CHECK(c.composition_sound);
    bool all = true;
    for (const auto& comp : c.components) all = all && comp.balanced;
    if (all) CHECK(c.whole_balanced);
  }
}

TEST_CASE("matching bounds dominate the exact subset scan") {
  Matroid m = uniform_matroid(4, 4, {"v1", "v2", "v3", "v4"});
  std::vector<Mask> singles = {bit(0), bit(1), bit(2), bit(3)};
  MatchingBound one = matching_upper_bound({m, 1, singles});
  CHECK(one.exact == 4);
  CHECK(one.bound == 4);

  CHECK_THROWS_AS(matching_upper_bound({m, 1, {}}), DomainError);
  CHECK_THROWS_AS(matching_upper_bound({m, 2, singles}), DomainError);
  CHECK_THROWS_AS(matching_upper_bound({m, 0, singles}), DomainError);
  CHECK_THROWS_AS(
      matching_upper_bound({uniform_matroid(3, 13), 1, {bit(0)}}),
      CapacityError);
  CHECK_THROWS_AS(
      matching_upper_bound(
          {m, 1, std::vector<Mask>(9, bit(0))}),
      CapacityError);

  std::mt19937 rng(5150);
  int done = 0;
  for (const auto& entry : corpus()) {
    if (entry.m.size() > 10) continue;
    for (int k = 1; k <= 2; ++k) {
      std::vector<Mask> flats;
      for (Mask f : all_flats(entry.m))
        if (entry.m.rank(f) == k) flats.push_back(f);
      if (flats.size() < 2) continue;
      std::shuffle(flats.begin(), flats.end(), rng);
      flats.resize(std::min<size_t>(flats.size(), 5));
      MatchingInstance inst{entry.m, k, flats};
      MatchingBound got = matching_upper_bound(inst);
      CHECK(got.exact <= got.bound);
      CHECK(got.exact == exact_matching_scan(entry.m, k, flats));
      CHECK(entry.m.is_flat(got.witness_flat));
      size_t named = 0;
      for (const auto& group : got.witness_partition) named += group.size();
      CHECK(named == flats.size());
      if (++done >= 25) break;
    }
    if (done >= 25) break;
  }
  CHECK(done >= 10);
}
