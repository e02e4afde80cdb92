#include <doctest.h>

#include <algorithm>

#include "parkfrozen/coupling.hpp"
#include "parkfrozen/parking.hpp"

using namespace parkfrozen;

namespace {

// 11-vertex instance: bottom vertex 0 is the root, all edges point toward it.
RootedTree eleven_vertex_tree() {
  //            parent of vertex v (0-based); -1 marks the root
  // vertices:  1..11 in the drawing map to 0..10 here
  std::vector<int32_t> parent = {-1, 0, 0, 2, 2, 2, 3, 3, 5, 1, 1};
  return RootedTree::from_parents(std::move(parent));
}

} // namespace

TEST_CASE("two-vertex parking basics") {
  RootedTree t = RootedTree::from_parents({-1, 0});
  ParkingOutcome out = park_sequence(t, {1});
  CHECK(out.occupant[1] == 1);
  CHECK(out.unparked.empty());
  CHECK(out.total_distance == 0);

  out = park_sequence(t, {0, 0});
  CHECK(out.occupant[0] == 1);
  CHECK(out.unparked == std::vector<int32_t>{2});
  CHECK(out.flux[1] == 0);
}

TEST_CASE("nine cars on the eleven-vertex tree") {
  RootedTree t = eleven_vertex_tree();
  // arrivals: cars 1..9 at vertices 5,1,5,1,8,6,5'... see mapping below
  // car:      1  2  3  4  5  6  7  8  9
  std::vector<int32_t> arrivals = {4, 1, 4, 1, 8, 6, 5, 1, 8};
  ParkingOutcome out = park_sequence(t, arrivals);

  CHECK(out.unparked == std::vector<int32_t>{8, 9});
  CHECK(out.occupant[4] == 1);
  CHECK(out.occupant[1] == 2);
  CHECK(out.occupant[2] == 3);
  CHECK(out.occupant[0] == 4);
  CHECK(out.occupant[8] == 5);
  CHECK(out.occupant[6] == 6);
  CHECK(out.occupant[5] == 7);

  // flux: 1 on 5->3, 2 on 2->1, 1 on 9->6, 1 on 6->3, 1 on 3->1 (1-based ids)
  std::vector<int64_t> expect(11, 0);
  expect[4] = 1;
  expect[1] = 2;
  expect[8] = 1;
  expect[5] = 1;
  expect[2] = 1;
  CHECK(out.flux == expect);
  CHECK(out.total_distance == 6);
}

TEST_CASE("parking on a mapping with a self-loop") {
  Mapping m;
  m.n = 1;
  m.target = {0};
  ParkingOutcome out = park_on_mapping(m, {0, 0});
  CHECK(out.occupant[0] == 1);
  CHECK(out.unparked == std::vector<int32_t>{2});
}

TEST_CASE("mapping that is a tree plus root loop behaves like the tree") {
  RootedTree t = RootedTree::from_parents({-1, 0, 1, 0});
  Mapping m;
  m.n = 4;
  m.target = {0, 0, 1, 0}; // root points at itself
  std::vector<int32_t> arrivals = {2, 1, 3};
  ParkingOutcome a = park_sequence(t, arrivals);
  ParkingOutcome b = park_on_mapping(m, arrivals);
  CHECK(a.occupant == b.occupant);
  CHECK(a.unparked == b.unparked);
}

TEST_CASE("three-vertex mapping cycle ejects the last car") {
  // vertices 0 <-> 1 form a 2-cycle, 2 hangs off 0
  Mapping m;
  m.n = 3;
  m.target = {1, 0, 0};
  ParkingOutcome out = park_on_mapping(m, {0, 1, 0});
  CHECK(out.unparked == std::vector<int32_t>{3});
  CHECK(out.occupant[0] == 1);
  CHECK(out.occupant[1] == 2);
}

TEST_CASE("decomposition kinds nest and flag the root correctly") {
  RootedTree t = eleven_vertex_tree();
  std::vector<int32_t> arrivals = {4, 1, 4, 1, 8, 6, 5, 1, 8};
  ParkingOutcome out = park_sequence(t, arrivals);

  ComponentDecomposition near = decompose(t, out, ComponentKind::near);
  ComponentDecomposition full = decompose(t, out, ComponentKind::full);
  ComponentDecomposition strong = decompose(t, out, ComponentKind::strong);
  CHECK(near.root_component_is_blue);   // root holds car 4
  CHECK(full.root_component_is_blue);   // two cars exited
  CHECK(strong.root_component_is_blue);

  // edge sets nest: strong <= full <= near, via component refinement
  auto finer = [&](const ComponentDecomposition& a, const ComponentDecomposition& b) {
    // every a-component is inside one b-component
    for (const auto& comp : a.components) {
      for (int32_t v : comp)
        if (b.comp_id[v] != b.comp_id[comp.front()]) return false;
    }
    return true;
  };
  CHECK(finer(strong, full));
  CHECK(finer(full, near));
}

TEST_CASE("zero cars decompose to singletons") {
  RootedTree t = eleven_vertex_tree();
  ParkingOutcome out = park_sequence(t, {});
  for (ComponentKind k : {ComponentKind::near, ComponentKind::full, ComponentKind::strong}) {
    ComponentDecomposition d = decompose(t, out, k);
    CHECK(d.components.size() == 11);
    CHECK_FALSE(d.root_component_is_blue);
  }
}

TEST_CASE("single car parked at a leaf keeps its outgoing edge in the near forest") {
  RootedTree t = RootedTree::from_parents({-1, 0, 1});
  ParkingOutcome out = park_sequence(t, {2});
  ComponentDecomposition near = decompose(t, out, ComponentKind::near);
  CHECK(near.comp_id[2] == near.comp_id[1]);
  CHECK(near.comp_id[0] != near.comp_id[2]);
  auto sizes = near.sizes_descending();
  CHECK(sizes == std::vector<int32_t>{2, 1});
}

TEST_CASE("bitype decomposition of tiny nearly parked trees") {
  {
    RootedTree t = RootedTree::from_parents({-1});
    ParkingOutcome out = park_sequence(t, {});
    BitypeTree bt = bitype_decompose(t, out);
    CHECK(bt.disk_count() == 1);
    CHECK(bt.square_count() == 0);
  }
  {
    RootedTree t = RootedTree::from_parents({-1, 0});
    ParkingOutcome out = park_sequence(t, {1});
    BitypeTree bt = bitype_decompose(t, out);
    CHECK(bt.disk_count() == 2);
    CHECK(bt.square_count() == 1);
    CHECK(bt.square_degrees() == std::vector<int32_t>{1});
  }
}

TEST_CASE("bitype structure counts on sampled nearly parked trees") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const int32_t N = 40;
    NearlyParkedSample s = sample_nearly_parked(N, seed);
    BitypeTree bt = bitype_decompose(s.tree, s.outcome);
    CHECK(bt.disk_count() == N);
    // square degrees sum to N - 1: every non-root vertex sits under a square
    int64_t total = 0;
    for (int32_t d : bt.square_degrees()) total += d;
    CHECK(total == N - 1);
  }
}

TEST_CASE("bitype rejects inputs that are not nearly parked") {
  RootedTree t = RootedTree::from_parents({-1, 0});
  ParkingOutcome out = park_sequence(t, {0});
  CHECK_THROWS_AS(bitype_decompose(t, out), std::domain_error);
}

TEST_CASE("condensation at N = 2 is exactly one half") {
  CondensationSummary s = condensation_stats(2, 50, 5);
  CHECK(s.mean_mf_fraction == doctest::Approx(0.5));
}
