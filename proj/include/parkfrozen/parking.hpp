#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkfrozen/rng.hpp"

namespace parkfrozen {

// Rooted tree on n labeled vertices; parent[root] == -1, edges point to the root.
struct RootedTree {
  int32_t n = 0;
  int32_t root = -1;
  std::vector<int32_t> parent;

  static RootedTree from_parents(std::vector<int32_t> parents);
  bool valid() const;
};

// Functional graph: every vertex has exactly one outgoing edge i -> target[i].
struct Mapping {
  int32_t n = 0;
  std::vector<int32_t> target;
};

struct ParkingOutcome {
  std::vector<int32_t> occupant;  // car index (1-based) or 0 when free
  std::vector<int64_t> flux;      // per vertex v: cars through the edge v -> parent(v)
  std::vector<int32_t> unparked;  // car indices that exited, in arrival order
  int64_t total_distance = 0;     // sum of all fluxes

  int64_t parked_count() const;
};

// Per-car edge traversal log, only filled when requested (heavy).
struct TraversalLog {
  bool enabled = false;
  std::vector<std::vector<int32_t>> edges_per_car; // edge = child vertex id
};

// Sequential parking on a rooted tree: each car drives toward the root and
// takes the first free spot; a car reaching an occupied root exits.
ParkingOutcome park_sequence(const RootedTree& tree, const std::vector<int32_t>& arrivals,
                             TraversalLog* log = nullptr);

// Parking on a mapping; a car caught in a loop exits. Loop detection is by
// step count > n, which is safe since any successful path has length < n.
ParkingOutcome park_on_mapping(const Mapping& map, const std::vector<int32_t>& arrivals);

enum class ComponentKind { strong, full, near };

struct ComponentDecomposition {
  ComponentKind kind;
  std::vector<int32_t> comp_id;                  // per vertex
  std::vector<std::vector<int32_t>> components;  // vertex lists
  std::vector<int32_t> cars_per_component;       // parked cars embedded in each
  int32_t root_component = -1;
  bool root_component_is_blue = false;

  std::vector<int32_t> sizes_descending() const;
};

// Split the tree by the kind-specific kept edges: positive-flux edges
// (strong), edges between two occupied spots (full), or edges emanating from
// occupied spots (near). The root component is flagged blue when it is not
// itself a strongly/fully/nearly parked tree.
ComponentDecomposition decompose(const RootedTree& tree, const ParkingOutcome& outcome,
                                 ComponentKind kind);

// Bitype tree of strong components of a nearly parked tree: disks are the
// parked vertices plus the empty root, squares are the strong components
// hanging by zero-flux edges; a square's degree is its component size.
struct BitypeTree {
  struct Node {
    bool is_disk = true;
    int32_t label = -1; // vertex id for disks, strong-component id for squares
    std::vector<int32_t> children;
  };
  std::vector<Node> nodes; // node 0 is the root disk

  int32_t disk_count() const;
  int32_t square_count() const;
  std::vector<int32_t> square_degrees() const;
};

BitypeTree bitype_decompose(const RootedTree& tree, const ParkingOutcome& outcome);

struct CondensationSummary {
  int64_t samples = 0;
  double mean_mf_fraction = 0.0; // largest fully parked tree above the root / N
  double mean_ms_fraction = 0.0; // largest strong component / N
  double q10_mf = 0.0, q90_mf = 0.0;
  double mean_second_mf = 0.0;
  double mean_second_ms = 0.0;
};

// Monte Carlo over uniform nearly parked trees of size N (coupling sampler).
CondensationSummary condensation_stats(int32_t N, int64_t samples, uint64_t seed);

} // namespace parkfrozen
