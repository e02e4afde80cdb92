#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parkfrozen/parking.hpp"
#include "parkfrozen/rng.hpp"

namespace parkfrozen {

// ---- Uniform tree samplers -----------------------------------------------

// Uniform unrooted Cayley tree on k labeled vertices (Prufer decoding);
// returns the k-1 edges, 0-based.
std::vector<std::pair<int32_t, int32_t>> uniform_unrooted_tree_edges(int32_t k, Rng& rng);

// Uniform rooted Cayley tree on n vertices (uniform unrooted tree plus a
// uniform root, edges oriented toward it).
RootedTree uniform_rooted_tree(int32_t n, Rng& rng);

// ---- Peeling exploration ---------------------------------------------------

// Set of revealed instructions i -> sigma(i) of a partially explored rooted
// Cayley tree, kept with its forest representation. Targets: -2 unrevealed,
// -1 the root marker, else a vertex.
class InstructionSet {
public:
  explicit InstructionSet(int32_t n);

  int32_t n() const { return n_; }
  int32_t target(int32_t v) const { return target_[v]; }
  bool revealed(int32_t v) const { return target_[v] != -2; }
  int32_t revealed_count() const { return revealed_count_; }
  bool complete() const { return revealed_count_ == n_; }

  int32_t comp_root(int32_t v) const;         // union-find root of v's tree
  int32_t comp_size(int32_t v) const;
  bool has_blue() const { return blue_root_ >= 0; }
  bool is_blue(int32_t v) const;
  int32_t blue_size() const;
  const std::vector<int32_t>& blue_members() const;

  // Walk the revealed targets from v: returns the free vertex reached, or -1
  // when the walk exits through the revealed root.
  int32_t drive(int32_t v) const;

  // Record the instruction v -> t (t == -1 reveals the root). v must be
  // unrevealed. Maintains components and the blue tree.
  void add_instruction(int32_t v, int32_t t);

  // Extract the tree once complete.
  RootedTree to_tree() const;

private:
  int32_t find(int32_t v) const;

  int32_t n_;
  std::vector<int32_t> target_;
  mutable std::vector<int32_t> parent_; // union-find over instruction trees
  std::vector<int32_t> size_;
  std::vector<std::vector<int32_t>> members_; // per root, merged small-to-large
  int32_t blue_root_ = -1;
  int32_t revealed_count_ = 0;
};

// One peeling step with the uniform-tree transition kernel: peel vertex v
// (a white tree root). With k = |tree(v)|, l = |blue tree|:
//   l = 0: sigma(v) = root-marker with probability k/n, else uniform outside
//          tree(v);
//   l >= 1: a uniform blue vertex with probability (l+k)/n, else uniform over
//          the white vertices outside tree(v).
// Returns the chosen target (-1 for the root marker).
int32_t peel_step(InstructionSet& s, int32_t v, Rng& rng);

// ---- Coupled runs -----------------------------------------------------------

enum class CoupleKind { mapping, tree };

// Record of the joint construction driven by one edge stream: the frozen
// process F(n, .) on one side and the parking-built mapping/tree on the other.
struct CoupledRun {
  CoupleKind kind;
  int64_t n = 0;
  int64_t m = 0;
  uint64_t seed = 0;
  std::vector<int32_t> spots;        // zeta_m (0-based) or -1 when the car exits
  std::vector<int32_t> step_target;  // target revealed at step m; -2 none, -1 root marker
  std::vector<int32_t> unparked;     // car indices, 1-based
  std::vector<int64_t> discarded;    // edge indices dropped by F, 1-based
  std::vector<int32_t> final_target; // sigma after the last step (-2 unrevealed, -1 root)
  bool complete = false;
};

// Build M(n, m): car m arrives at X_m, parks at zeta_m, and sigma(zeta_m) = Y_m.
CoupledRun couple_mapping(int64_t n, uint64_t seed, int64_t m_max);

// Build T(n, m) with the cycle redirection: on a cycle the target is the root
// marker (first time) or a uniform vertex of the blue tree.
CoupledRun couple_tree(int64_t n, uint64_t seed, int64_t m_max);

// Run the tree construction until all n targets are revealed; returns the
// uniform rooted Cayley tree it builds.
RootedTree couple_tree_until_complete(int64_t n, uint64_t seed, int64_t safety_cap = 0);

struct CouplingReport {
  bool ok = true;
  int64_t first_failing_m = -1;
  std::string diff;
};

// Replay the run against the frozen process built from the same stream and
// check, at every m: component partitions (all frozen components merged on
// the F side for tree runs), blue vertex sets, and the discarded-index /
// unparked-index correspondence.
CouplingReport verify_coupling(const CoupledRun& run);

// ---- Direct nearly-parked-tree sampler --------------------------------------

struct NearlyParkedSample {
  RootedTree tree;                 // P_N
  std::vector<int32_t> arrivals;   // X_1 .. X_{N-1}
  ParkingOutcome outcome;          // all cars parked, root free
  // Source uniform unrooted tree: edge with label i (1-based) is oriented
  // (tails[i-1] -> heads[i-1]).
  std::vector<int32_t> tails;
  std::vector<int32_t> heads;
};

// Uniform nearly parked tree of size N from a uniform unrooted Cayley tree
// with uniformly labeled, uniformly oriented edges.
NearlyParkedSample sample_nearly_parked(int32_t N, uint64_t seed);

// Deterministic core used by the sampler and the exhaustive tests: run the
// redirection construction on the given labeled oriented tree.
NearlyParkedSample nearly_parked_from_labeled_tree(int32_t N, const std::vector<int32_t>& tails,
                                                   const std::vector<int32_t>& heads,
                                                   TraversalLog* log = nullptr);

// Record predicate: does car j drive through the redirection of edge i?
// True iff j is the maximal ascending record of the labels on the tree path
// from edge i to edge j, the earlier record edges point away from edge j, and
// edge j points away from edge i.
bool car_passes_edge(int32_t N, const std::vector<int32_t>& tails,
                     const std::vector<int32_t>& heads, int32_t i, int32_t j);

} // namespace parkfrozen
