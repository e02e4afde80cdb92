#include <doctest.h>

#include <cmath>
#include <map>

#include <functional>

#include "parkfrozen/bigint.hpp"
#include "parkfrozen/coupling.hpp"
#include "parkfrozen/dsu.hpp"
#include "parkfrozen/frozen.hpp"
#include "parkfrozen/mulaw.hpp"
#include "parkfrozen/numerics.hpp"
#include "parkfrozen/parking.hpp"
#include "parkfrozen/rng.hpp"

using namespace parkfrozen;

TEST_CASE("p = 0 freezes only through white cycles") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const int64_t n = 500;
    FrozenState st(n, 0.0, false);
    EdgeStream s(n, seed);
    for (int64_t m = 1; m <= n; ++m) {
      OrientedEdge e = s.next();
      FrozenStepReport r = frozen_step(st, e, s.aux_uniform_at(e.index));
      CHECK(r.kind != FrozenStepReport::kept_freeze_merge);
    }
  }
}

TEST_CASE("run_frozen is deterministic in (n, p, seed)") {
  FrozenTrajectory a = run_frozen(3000, 0, 0.5, 99, {-1.0, 0.0, 1.0});
  FrozenTrajectory b = run_frozen(3000, 0, 0.5, 99, {-1.0, 0.0, 1.0});
  REQUIRE(a.snapshots.size() == b.snapshots.size());
  for (size_t i = 0; i < a.snapshots.size(); ++i) {
    CHECK(a.snapshots[i].m == b.snapshots[i].m);
    CHECK(a.snapshots[i].discarded == b.snapshots[i].discarded);
    CHECK(a.snapshots[i].frozen_mass == b.snapshots[i].frozen_mass);
    CHECK(a.snapshots[i].white_sizes == b.snapshots[i].white_sizes);
    CHECK(a.snapshots[i].blue_sizes == b.snapshots[i].blue_sizes);
  }
}

TEST_CASE("run_er snapshots are consistent") {
  ErTrajectory t = run_er(400, 0, 11, {-0.5, 0.5});
  REQUIRE(t.snapshots.size() == 2);
  for (const auto& s : t.snapshots) {
    int64_t total = 0, edges = 0;
    REQUIRE(s.sizes.size() == s.surpluses.size());
    for (size_t i = 0; i < s.sizes.size(); ++i) {
      total += s.sizes[i];
      CHECK(s.surpluses[i] >= 0);
      edges += s.sizes[i] - 1 + s.surpluses[i];
    }
    CHECK(total == 400);
    CHECK(edges == s.m); // every offer lands in some component
  }
}

TEST_CASE("parking conserves cars") {
  Rng rng(5, 1);
  for (int rep = 0; rep < 20; ++rep) {
    RootedTree t = uniform_rooted_tree(60, rng);
    int32_t m = static_cast<int32_t>(rng.next_below(100));
    std::vector<int32_t> arrivals(m);
    for (auto& a : arrivals) a = static_cast<int32_t>(rng.next_below(60));
    ParkingOutcome out = park_sequence(t, arrivals);
    CHECK(out.parked_count() + static_cast<int64_t>(out.unparked.size()) == m);
  }
}

TEST_CASE("exhaustive peeling kernel yields uniform trees at n = 3") {
  // run the fixed lowest-index algorithm over all branchings with their exact
  // kernel weights: root marker with mass k/n, each blue vertex with mass
  // (l+k)/(l n), each outside white vertex with mass 1/n
  const int32_t n = 3;
  std::map<std::vector<int32_t>, BigRat> dist;

  struct Walker {
    int32_t n;
    std::map<std::vector<int32_t>, BigRat>* out;
    void go(std::vector<int32_t> target, const BigRat& w) {
      int32_t peel = -1;
      for (int32_t v = 0; v < n; ++v)
        if (target[v] == -2) {
          peel = v;
          break;
        }
      if (peel < 0) {
        (*out)[target] += w;
        return;
      }
      // components
      std::vector<int32_t> root(n);
      for (int32_t v = 0; v < n; ++v) root[v] = v;
      std::function<int32_t(int32_t)> find = [&](int32_t v) {
        while (root[v] != v) v = root[v] = root[root[v]];
        return v;
      };
      for (int32_t v = 0; v < n; ++v)
        if (target[v] >= 0) root[find(v)] = find(target[v]);
      int32_t blue_root = -1;
      for (int32_t v = 0; v < n; ++v)
        if (target[v] == -1) blue_root = find(v);
      std::vector<int32_t> blues;
      if (blue_root >= 0)
        for (int32_t v = 0; v < n; ++v)
          if (find(v) == blue_root) blues.push_back(v);
      int32_t k = 0;
      for (int32_t v = 0; v < n; ++v) k += (find(v) == find(peel));

      if (blues.empty()) {
        auto t2 = target;
        t2[peel] = -1;
        go(t2, w * BigRat(k, n));
        for (int32_t v = 0; v < n; ++v) {
          if (find(v) == find(peel)) continue;
          auto t3 = target;
          t3[peel] = v;
          go(t3, w * BigRat(1, n));
        }
      } else {
        int32_t l = static_cast<int32_t>(blues.size());
        for (int32_t b : blues) {
          auto t2 = target;
          t2[peel] = b;
          go(t2, w * BigRat(l + k, l * n));
        }
        for (int32_t v = 0; v < n; ++v) {
          if (find(v) == find(peel) || find(v) == blue_root) continue;
          auto t3 = target;
          t3[peel] = v;
          go(t3, w * BigRat(1, n));
        }
      }
    }
  };

  Walker walker{n, &dist};
  walker.go(std::vector<int32_t>(n, -2), BigRat(1));

  CHECK(dist.size() == 9);
  BigRat want(1, 9);
  want.canonicalize();
  BigRat total(0);
  for (auto& [t, w] : dist) {
    BigRat ww = w;
    ww.canonicalize();
    CHECK(ww == want);
    total += w;
  }
  total.canonicalize();
  CHECK(total == BigRat(1));
}

TEST_CASE("jump histogram mass equals the number of recorded jumps") {
  JumpDensityComparison cmp =
      empirical_jump_density(2000, 0.5, 7, 50, -0.5, 0.5, {0.1, 0.4, 0.7, 1.0});
  double mass = 0.0;
  for (double o : cmp.observed) mass += o;
  CHECK(mass == doctest::Approx(static_cast<double>(cmp.total_jumps)));
  CHECK_THROWS_AS(empirical_jump_density(2000, 0.5, 7, 0, -0.5, 0.5, {0.1, 1.0}),
                  std::domain_error);
}

TEST_CASE("discarded flux at the window center, regression value") {
  // sample mean of D_n(0) / n^{1/3} at n = 1e5 over 200 replicas; positive,
  // finite, and pinned as a regression number for the fixed seed derivation
  const int64_t n = 100000;
  const double n13 = std::cbrt(static_cast<double>(n));
  double acc = 0.0;
  for (int64_t r = 0; r < 200; ++r) {
    FrozenTrajectory t =
        run_frozen(n, 0, 0.5, replica_seed(31337, static_cast<uint64_t>(n + r)), {0.0});
    acc += static_cast<double>(t.snapshots[0].discarded) / n13;
  }
  double mean = acc / 200.0;
  CHECK(mean > 0.0);
  CHECK(mean == doctest::Approx(0.274259536).epsilon(1e-6));
}

TEST_CASE("peel step rejects occupied or frozen vertices") {
  InstructionSet s(3);
  Rng rng(2);
  s.add_instruction(0, 1);
  CHECK_THROWS_AS(peel_step(s, 0, rng), std::domain_error);
}

TEST_CASE("uniform forest samples are valid forests") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    ForestSample f = sample_uniform_forest(300, 150, seed);
    int64_t total = 0;
    for (int32_t k : f.component_sizes) total += k;
    CHECK(total == 300);
    CHECK(f.edges.size() == 150);
    ComponentTable t(300);
    for (auto [a, b] : f.edges) {
      OrientedEdge e;
      e.tail = a;
      e.head = b;
      UnionReport r = t.union_or_cycle(e);
      CHECK(r.kind == UnionReport::merged); // acyclic
    }
  }
}
