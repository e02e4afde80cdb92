#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parkfrozen/dsu.hpp"
#include "parkfrozen/rng.hpp"

namespace parkfrozen {

// Critical-window time grid: m(lambda) = floor(n/2 + lambda n^{2/3} / 2) v 0.
int64_t critical_window_m(int64_t n, double lambda);

struct FrozenState {
  explicit FrozenState(int64_t n, double p = 0.5, bool orientation_rule = true)
      : table(n), p(p), orientation_rule(orientation_rule) {}

  ComponentTable table;
  int64_t m = 0;            // edges offered so far
  int64_t kept_edges = 0;   // edges present in F(n, m)
  int64_t discarded = 0;    // D(n, m): offers dropped because they touch the freezer
  int64_t frozen_mass = 0;  // total size of blue components
  double p = 0.5;
  // With the orientation rule (the p = 1/2 construction used by the coupling)
  // a white/blue offer is kept exactly when it goes white -> blue. Otherwise
  // the auxiliary uniform decides: kept iff u < p.
  bool orientation_rule = true;
};

struct FrozenStepReport {
  enum Kind { kept_merge, kept_cycle, kept_freeze_merge, dropped } kind;
  int32_t frozen_delta = 0; // vertices newly frozen at this step
};

// One transition of the frozen process: white-white offers are kept (the
// component freezes when a cycle appears), blue-blue offers are dropped, and
// mixed offers are kept or dropped by the orientation rule / coin u.
// Every dropped offer increments `discarded` once; under the coupling those
// indices are exactly the cars that fail to park.
FrozenStepReport frozen_step(FrozenState& st, const OrientedEdge& e, double u);

struct FrozenSnapshot {
  double lambda = 0.0;
  int64_t m = 0;
  int64_t kept_edges = 0;
  int64_t frozen_mass = 0;
  int64_t discarded = 0;
  std::vector<int32_t> white_sizes; // non-increasing
  std::vector<int32_t> blue_sizes;  // non-increasing
};

struct FrozenTrajectory {
  int64_t n = 0;
  double p = 0.5;
  uint64_t seed = 0;
  std::vector<FrozenSnapshot> snapshots;
};

struct FrozenJump {
  int64_t m = 0;            // step index of the freeze event
  int64_t mass_before = 0;  // frozen mass just before
  int32_t jump = 0;         // vertices frozen by the event
};

struct RunFrozenOptions {
  int64_t m_cap = int64_t(1) << 33; // resource guard
  bool record_jumps = false;        // collect freezer jump events
  double jump_lambda_min = 0.0;
  double jump_lambda_max = 0.0;
};

// Run F_p(n, .) from a fresh stream, sampling at the given lambda grid.
FrozenTrajectory run_frozen(int64_t n, int64_t m_max, double p, uint64_t seed,
                            const std::vector<double>& sample_grid,
                            const RunFrozenOptions& opts = {},
                            std::vector<FrozenJump>* jumps = nullptr);

struct ErSnapshot {
  double lambda = 0.0;
  int64_t m = 0;
  std::vector<int32_t> sizes;     // non-increasing
  std::vector<int64_t> surpluses; // aligned with `sizes`
};

struct ErTrajectory {
  int64_t n = 0;
  uint64_t seed = 0;
  std::vector<ErSnapshot> snapshots;
};

// Plain multigraph process G(n, .) on the same kind of stream, reporting
// component sizes and surpluses (edges - vertices + 1).
ErTrajectory run_er(int64_t n, int64_t m_max, uint64_t seed,
                    const std::vector<double>& sample_grid,
                    int64_t m_cap = int64_t(1) << 33);

} // namespace parkfrozen
