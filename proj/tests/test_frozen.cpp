#include <doctest.h>

#include <cmath>

#include <algorithm>
#include <map>

#include "parkfrozen/enumeration.hpp"
#include "parkfrozen/frozen.hpp"

using namespace parkfrozen;

TEST_CASE("frozen transitions on two vertices") {
  FrozenState st(2);
  frozen_step(st, {0, 1, 1}, 0.0);
  CHECK(st.kept_edges == 1);
  CHECK(st.frozen_mass == 0);
  frozen_step(st, {1, 0, 2}, 0.0);
  CHECK(st.kept_edges == 2);
  CHECK(st.frozen_mass == 2);
  CHECK(st.discarded == 0);
  // blue-blue offer: dropped, counted once
  frozen_step(st, {0, 1, 3}, 0.0);
  CHECK(st.kept_edges == 2);
  CHECK(st.discarded == 1);
}

TEST_CASE("p = 1 keeps every mixed offer") {
  FrozenState st(3, 1.0, false);
  frozen_step(st, {0, 0, 1}, 0.3); // self-loop freezes {0}
  CHECK(st.frozen_mass == 1);
  frozen_step(st, {1, 0, 2}, 0.999); // white -> blue, kept since u < 1
  CHECK(st.frozen_mass == 2);
  CHECK(st.kept_edges == 2);
  frozen_step(st, {0, 2, 3}, 0.0); // blue -> white also kept at p = 1
  CHECK(st.frozen_mass == 3);
  CHECK(st.discarded == 0);
}

TEST_CASE("p = 0 drops every mixed offer") {
  FrozenState st(3, 0.0, false);
  frozen_step(st, {0, 0, 1}, 0.5);
  frozen_step(st, {1, 0, 2}, 0.5);
  CHECK(st.frozen_mass == 1);
  CHECK(st.discarded == 1);
  frozen_step(st, {0, 1, 3}, 0.5);
  CHECK(st.discarded == 2);
}

TEST_CASE("orientation rule keeps white to blue only") {
  FrozenState st(3); // defaults to the oriented p = 1/2 construction
  frozen_step(st, {0, 0, 1}, 0.0); // freeze {0}
  frozen_step(st, {0, 1, 2}, 0.0); // blue -> white: dropped
  CHECK(st.discarded == 1);
  CHECK(st.frozen_mass == 1);
  frozen_step(st, {1, 0, 3}, 0.0); // white -> blue: kept, freezes {0,1}
  CHECK(st.frozen_mass == 2);
  CHECK(st.kept_edges == 2);
}

TEST_CASE("empty run leaves white singletons") {
  FrozenTrajectory traj = run_frozen(5, 0, 0.5, 1, {});
  const FrozenSnapshot& s = traj.snapshots.front();
  CHECK(s.m == 0);
  CHECK(s.discarded == 0);
  CHECK(s.frozen_mass == 0);
  CHECK(s.white_sizes == std::vector<int32_t>(5, 1));
}

TEST_CASE("m cap raises a resource error") {
  RunFrozenOptions opts;
  opts.m_cap = 10;
  CHECK_THROWS_AS(run_frozen(5, 100, 0.5, 1, {}, opts), std::length_error);
}

TEST_CASE("monotone discarded count and frozen mass, pathwise inclusion") {
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const int64_t n = 200;
    FrozenState st(n);
    EdgeStream stream(n, seed);
    int64_t last_d = 0, last_f = 0, merges_plus_cycles = 0;
    for (int64_t m = 1; m <= 3 * n; ++m) {
      OrientedEdge e = stream.next();
      frozen_step(st, e, 0.0);
      CHECK(st.discarded >= last_d);
      CHECK(st.frozen_mass >= last_f);
      last_d = st.discarded;
      last_f = st.frozen_mass;
      ++merges_plus_cycles;
    }
    CHECK(st.kept_edges + st.discarded == 3 * n);
    CHECK(st.kept_edges <= 3 * n); // kept edges are a subset of the stream
  }
}

TEST_CASE("white components of F match tree components of G on a shared stream") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    const int64_t n = 200;
    FrozenState st(n);
    ComponentTable g(n);
    EdgeStream fs(n, seed);
    EdgeStream gs(n, seed);
    for (int64_t m = 1; m <= (12 * n) / 10; ++m) {
      frozen_step(st, fs.next(), 0.0);
      g.union_or_cycle(gs.next());

      // no blue vertex in F <=> G acyclic, as events
      bool f_noblue = st.frozen_mass == 0;
      bool g_acyclic = true;
      for (int32_t v = 0; v < n && g_acyclic; ++v)
        if (g.find(v) == v && g.has_cycle(v)) g_acyclic = false;
      CHECK(f_noblue == g_acyclic);
    }
    // forest-part agreement: F and G coincide on the tree part of G. Every
    // acyclic G component is white in F and forms a single F component; the
    // partitions agree on those vertices. (A white F component can still sit
    // inside a cyclic G component, joined there by a dropped blue-to-white
    // offer, so the converse inclusion does not hold.)
    for (int32_t v = 0; v < n; ++v) {
      if (g.has_cycle(v)) continue;
      CHECK(st.table.color_of(v) == Color::white);
      CHECK(st.table.size_of(v) == g.size_of(v));
    }
    for (int32_t v = 0; v < n; ++v)
      for (int32_t w = v + 1; w < n; ++w) {
        if (g.has_cycle(v) || g.has_cycle(w)) continue;
        bool same_f = st.table.find(v) == st.table.find(w);
        bool same_g = g.find(v) == g.find(w);
        CHECK(same_f == same_g);
      }
  }
}

TEST_CASE("p = 1 white part equals the whole tree part of G") {
  for (uint64_t seed = 20; seed <= 24; ++seed) {
    const int64_t n = 150;
    FrozenState st(n, 1.0, false);
    ComponentTable g(n);
    EdgeStream fs(n, seed);
    EdgeStream gs(n, seed);
    for (int64_t m = 1; m <= n; ++m) {
      OrientedEdge e = fs.next();
      frozen_step(st, e, fs.aux_uniform_at(e.index));
      g.union_or_cycle(gs.next());
    }
    std::vector<int32_t> whites = st.table.component_size_vector(ComponentTable::Filter::white);
    std::vector<int32_t> gtrees;
    for (int32_t v = 0; v < n; ++v)
      if (g.find(v) == v && !g.has_cycle(v)) gtrees.push_back(g.size_of(v));
    std::sort(gtrees.begin(), gtrees.end(), std::greater<int32_t>());
    CHECK(whites == gtrees);
  }
}

TEST_CASE("run_er reports surpluses") {
  // three edges closing a triangle: one component of surplus 1
  ComponentTable t(3);
  t.union_or_cycle({0, 1, 1});
  t.union_or_cycle({1, 2, 2});
  t.union_or_cycle({2, 0, 3});
  CHECK(t.surplus_of(0) == 1);

  ComponentTable u(3);
  u.union_or_cycle({0, 0, 1});
  CHECK(u.surplus_of(0) == 1);
  CHECK(u.size_of(0) == 1);

  ComponentTable w(4);
  w.union_or_cycle({0, 1, 1});
  w.union_or_cycle({2, 3, 2});
  w.union_or_cycle({1, 2, 3});
  CHECK(w.surplus_of(0) == 0);
}

TEST_CASE("freezer transition kernel sums to one over all outcomes") {
  // states (n_white, m_white, blue) consistent with n = n_white + blue
  const std::vector<std::array<int64_t, 3>> states = {
      {3, 0, 0}, {3, 1, 0}, {3, 2, 0}, {2, 0, 1}, {2, 1, 1}, {2, 0, 2}, {1, 0, 3}, {4, 2, 1},
  };
  for (auto [nw, mw, blue] : states) {
    int64_t n = nw + blue;
    BigRat total = freezer_no_change_prob(blue, n);
    total += freezer_merge_prob(nw, mw, n);
    for (int64_t k = 1; k <= nw; ++k) total += freezer_transition_prob(nw, mw, blue, n, k);
    total.canonicalize();
    CHECK(total == BigRat(1));
  }
}

TEST_CASE("freezer kernel hand values") {
  CHECK(freezer_no_change_prob(0, 5) == BigRat(0));
  BigRat v = freezer_transition_prob(3, 0, 0, 3, 1);
  BigRat expect(1, 3);
  expect.canonicalize();
  CHECK(v == expect);
}

TEST_CASE("freezer kernel matches empirical first-jump frequencies") {
  // start fresh at n = 3; the first edge freezes a singleton with prob 1/3
  const int64_t n = 3;
  int64_t jumps1 = 0, total = 0;
  for (uint64_t seed = 1; seed <= 20000; ++seed) {
    FrozenState st(n);
    EdgeStream s(n, seed);
    frozen_step(st, s.next(), 0.0);
    total += 1;
    if (st.frozen_mass == 1) ++jumps1;
  }
  double p = static_cast<double>(jumps1) / static_cast<double>(total);
  // 4 sigma band around 1/3
  double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / static_cast<double>(total));
  CHECK(std::fabs(p - 1.0 / 3.0) <= 4.0 * sigma);
}

TEST_CASE("trajectory sampling on the lambda grid") {
  const int64_t n = 1000;
  FrozenTrajectory traj = run_frozen(n, 0, 0.5, 77, {-1.0, 0.0, 1.0});
  CHECK(traj.snapshots.size() == 3);
  CHECK(traj.snapshots[0].m == critical_window_m(n, -1.0));
  CHECK(traj.snapshots[1].m == critical_window_m(n, 0.0));
  CHECK(traj.snapshots[2].m == critical_window_m(n, 1.0));
  int64_t white_total = 0;
  for (int32_t s : traj.snapshots[2].white_sizes) white_total += s;
  CHECK(white_total + traj.snapshots[2].frozen_mass == n);
}
