#include <doctest.h>

#include <cmath>
#include <numeric>

#include <algorithm>
#include <map>
#include <set>

#include "parkfrozen/coupling.hpp"
#include "parkfrozen/frozen.hpp"
#include "parkfrozen/parking.hpp"
#include "parkfrozen/rng.hpp"

using namespace parkfrozen;

TEST_CASE("prufer decoding yields every labeled tree uniformly at k = 4") {
  std::map<std::vector<std::pair<int32_t, int32_t>>, int64_t> counts;
  Rng rng(17);
  const int64_t draws = 64000;
  for (int64_t i = 0; i < draws; ++i) {
    auto edges = uniform_unrooted_tree_edges(4, rng);
    for (auto& [a, b] : edges)
      if (a > b) std::swap(a, b);
    std::sort(edges.begin(), edges.end());
    counts[edges] += 1;
  }
  CHECK(counts.size() == 16); // 4^{4-2}
  double chi2 = 0.0;
  for (auto& [k, c] : counts) {
    double expect = draws / 16.0;
    chi2 += (c - expect) * (c - expect) / expect;
  }
  CHECK(chi2 <= 37.7); // 15 dof, p = 0.001
}

TEST_CASE("peel step on a single vertex reveals the root") {
  InstructionSet s(1);
  Rng rng(3);
  int32_t t = peel_step(s, 0, rng);
  CHECK(t == -1);
  CHECK(s.complete());
}

TEST_CASE("peel step frequencies at n = 2 follow the k/n rule") {
  int64_t roots = 0;
  const int64_t trials = 100000;
  for (int64_t i = 0; i < trials; ++i) {
    InstructionSet s(2);
    Rng rng(replica_seed(99, i));
    if (peel_step(s, 0, rng) == -1) ++roots;
  }
  double p = static_cast<double>(roots) / trials;
  double sigma = std::sqrt(0.25 / trials);
  CHECK(std::fabs(p - 0.5) <= 4.0 * sigma);
}

TEST_CASE("running any peeling algorithm to completion yields a uniform tree") {
  // peel the lowest-index free white root each time; n = 3, chi-square
  std::map<std::vector<int32_t>, int64_t> counts;
  const int64_t draws = 90000;
  for (int64_t i = 0; i < draws; ++i) {
    InstructionSet s(3);
    Rng rng(replica_seed(7, i));
    while (!s.complete()) {
      int32_t v = -1;
      for (int32_t w = 0; w < 3; ++w)
        if (s.target(w) == -2) {
          v = w;
          break;
        }
      peel_step(s, v, rng);
    }
    counts[s.to_tree().parent] += 1;
  }
  CHECK(counts.size() == 9);
  double chi2 = 0.0;
  for (auto& [k, c] : counts) {
    double expect = draws / 9.0;
    chi2 += (c - expect) * (c - expect) / expect;
  }
  CHECK(chi2 <= 26.1); // 8 dof, p = 0.001
}

TEST_CASE("coupled mapping at n = 1") {
  CoupledRun run = couple_mapping(1, 5, 3);
  CHECK(run.spots[0] == 0);          // first car parks at the only vertex
  CHECK(run.final_target[0] == 0);   // sigma(1) = 1
  CHECK(run.unparked.size() == 2);   // later cars loop and exit
  CHECK(run.discarded == std::vector<int64_t>{2, 3});
  CHECK(verify_coupling(run).ok);
}

TEST_CASE("coupled tree at n = 1") {
  CoupledRun run = couple_tree(1, 5, 2);
  CHECK(run.step_target[0] == -1); // the single vertex becomes the root
  CHECK(verify_coupling(run).ok);
}

TEST_CASE("verify_coupling passes across sizes and seeds") {
  for (int64_t n : {2, 3, 10, 50, 200, 500}) {
    for (uint64_t seed = 1; seed <= 6; ++seed) {
      int64_t m = (12 * n) / 10 + 3;
      CoupledRun tree_run = couple_tree(n, seed, m);
      CouplingReport r1 = verify_coupling(tree_run);
      CHECK_MESSAGE(r1.ok, "tree n=", n, " seed=", seed, " m=", r1.first_failing_m, ": ", r1.diff);
      CoupledRun map_run = couple_mapping(n, seed, m);
      CouplingReport r2 = verify_coupling(map_run);
      CHECK_MESSAGE(r2.ok, "map n=", n, " seed=", seed, " m=", r2.first_failing_m, ": ", r2.diff);
    }
  }
}

TEST_CASE("m = 0 coupling is trivially consistent") {
  CoupledRun run = couple_tree(5, 1, 0);
  CHECK(verify_coupling(run).ok);
}

TEST_CASE("fault injection: a flipped redirection fails verification") {
  // find a run with a cycle event, then corrupt its recorded target
  for (uint64_t seed = 1; seed <= 50; ++seed) {
    const int64_t n = 30;
    CoupledRun run = couple_tree(n, seed, 2 * n);
    int64_t cycle_step = -1;
    for (int64_t m = 1; m <= run.m; ++m) {
      if (run.step_target[m - 1] == -1) {
        cycle_step = m;
        break;
      }
    }
    if (cycle_step < 0) continue;
    REQUIRE(verify_coupling(run).ok);
    CoupledRun bad = run;
    // redirect the root-revealing step to some plain vertex instead
    bad.step_target[cycle_step - 1] = bad.spots[cycle_step - 1] == 0 ? 1 : 0;
    CouplingReport rep = verify_coupling(bad);
    CHECK_FALSE(rep.ok);
    CHECK(rep.first_failing_m >= cycle_step);
    return;
  }
  FAIL("no cycle event found in 50 seeds");
}

TEST_CASE("breaking the orientation rule fails the coupling") {
  // keep blue -> white edges instead of white -> blue: the discarded indices
  // stop matching the unparked cars
  const int64_t n = 40;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    EdgeStream stream(n, seed);
    FrozenState wrong(n);
    wrong.orientation_rule = false;
    wrong.p = 0.5;
    CoupledRun run = couple_tree(n, seed, 2 * n);
    // replay the wrong frozen process and compare discarded indices
    std::vector<int64_t> wrong_discarded;
    for (int64_t m = 1; m <= run.m; ++m) {
      OrientedEdge e = stream.next();
      bool tail_blue = wrong.table.color_of(e.tail) == Color::blue;
      bool head_blue = wrong.table.color_of(e.head) == Color::blue;
      // flipped rule: keep iff blue -> white
      double u = (tail_blue && !head_blue) ? 0.0 : 1.0;
      int64_t before = wrong.discarded;
      frozen_step(wrong, e, u);
      if (wrong.discarded > before) wrong_discarded.push_back(m);
    }
    if (!run.unparked.empty() &&
        wrong_discarded != std::vector<int64_t>(run.unparked.begin(), run.unparked.end())) {
      CHECK(true);
      return;
    }
  }
  FAIL("flipped rule never diverged, which should be impossible");
}

TEST_CASE("nearly parked samples park everyone and keep the root free") {
  for (int32_t N : {1, 2, 3, 8, 50}) {
    for (uint64_t seed = 1; seed <= 5; ++seed) {
      NearlyParkedSample s = sample_nearly_parked(N, seed);
      CHECK(s.outcome.unparked.empty());
      CHECK(s.outcome.occupant[s.tree.root] == 0);
      CHECK(s.outcome.parked_count() == N - 1);
      // replaying the arrivals on the final tree reproduces the outcome
      ParkingOutcome replay = park_sequence(s.tree, s.arrivals);
      CHECK(replay.occupant == s.outcome.occupant);
      CHECK(replay.flux == s.outcome.flux);
      CHECK(replay.unparked.empty());
    }
  }
}

TEST_CASE("record predicate on adjacent edges") {
  // path 0 - 1 - 2, edge 1 = {0,1}, edge 2 = {1,2}
  // true exactly when both tails sit at the shared vertex
  for (int32_t o1 = 0; o1 < 2; ++o1) {
    for (int32_t o2 = 0; o2 < 2; ++o2) {
      std::vector<int32_t> tails = {o1 ? 1 : 0, o2 ? 1 : 2};
      std::vector<int32_t> heads = {o1 ? 0 : 1, o2 ? 2 : 1};
      bool expect = (o1 == 1 && o2 == 1);
      CHECK(car_passes_edge(3, tails, heads, 1, 2) == expect);
    }
  }
}

TEST_CASE("record predicate must see j as the running maximum") {
  // path 0-1-2-3 with labels 1,3,2: label 2 is not a record past 3
  std::vector<int32_t> tails = {1, 2, 3};
  std::vector<int32_t> heads = {0, 1, 2};
  // j = 2 sits at the far end {2,3}; label 3 in the middle blocks it
  CHECK_FALSE(car_passes_edge(4, tails, heads, 1, 2));
}

TEST_CASE("record predicate equals direct flux attribution") {
  for (uint64_t seed = 1; seed <= 40; ++seed) {
    const int32_t N = 8;
    Rng rng(seed, 21);
    auto edges = uniform_unrooted_tree_edges(N, rng);
    std::vector<int32_t> perm(N - 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (int32_t i = N - 2; i > 0; --i) {
      int32_t j = static_cast<int32_t>(rng.next_below(static_cast<uint32_t>(i + 1)));
      std::swap(perm[i], perm[j]);
    }
    std::vector<int32_t> tails(N - 1), heads(N - 1);
    for (int32_t l = 0; l < N - 1; ++l) {
      auto [a, b] = edges[perm[l]];
      if (rng.next_bit()) std::swap(a, b);
      tails[l] = a;
      heads[l] = b;
    }
    TraversalLog log;
    log.enabled = true;
    NearlyParkedSample s = nearly_parked_from_labeled_tree(N, tails, heads, &log);
    for (int32_t i = 1; i <= N - 1; ++i) {
      int32_t spot_i = -1;
      for (int32_t v = 0; v < N; ++v)
        if (s.outcome.occupant[v] == i) spot_i = v;
      for (int32_t j = i + 1; j <= N - 1; ++j) {
        bool predicted = car_passes_edge(N, tails, heads, i, j);
        const auto& visited = log.edges_per_car[j - 1];
        bool actual = std::find(visited.begin(), visited.end(), spot_i) != visited.end();
        CHECK_MESSAGE(predicted == actual, "seed=", seed, " i=", i, " j=", j);
      }
    }
  }
}

TEST_CASE("couple_tree_until_complete builds uniform trees (chi-square at n = 3)") {
  std::map<std::vector<int32_t>, int64_t> counts;
  const int64_t draws = 45000;
  for (int64_t i = 0; i < draws; ++i)
    counts[couple_tree_until_complete(3, replica_seed(55, i)).parent] += 1;
  CHECK(counts.size() == 9);
  double chi2 = 0.0;
  for (auto& [k, c] : counts) {
    double expect = draws / 9.0;
    chi2 += (c - expect) * (c - expect) / expect;
  }
  CHECK(chi2 <= 26.1);
}

TEST_CASE("coupled tree summary statistics match a direct uniform sampler") {
  // root degree distribution at n = 50, chi-square against the direct sampler
  const int32_t n = 50;
  const int64_t draws = 20000;
  std::map<int32_t, int64_t> via_coupling, direct;
  for (int64_t i = 0; i < draws; ++i) {
    RootedTree a = couple_tree_until_complete(n, replica_seed(61, i));
    int32_t deg = 0;
    for (int32_t v = 0; v < n; ++v) deg += (a.parent[v] == a.root);
    via_coupling[std::min(deg, 6)] += 1;

    Rng rng(replica_seed(62, i), 2);
    RootedTree b = uniform_rooted_tree(n, rng);
    deg = 0;
    for (int32_t v = 0; v < n; ++v) deg += (b.parent[v] == b.root);
    direct[std::min(deg, 6)] += 1;
  }
  double chi2 = 0.0;
  int dof = 0;
  for (auto& [k, c] : via_coupling) {
    double e = static_cast<double>(direct[k]);
    if (e < 25 || c < 25) continue;
    chi2 += (c - e) * (c - e) / (c + e);
    ++dof;
  }
  CHECK(chi2 <= 10.83 + 3.0 * dof); // loose two-sample band
}
