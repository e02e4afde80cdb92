#pragma once

#include <cstdint>
#include <vector>

#include "parkfrozen/rng.hpp"

namespace parkfrozen {

// mu(k) = 2 k^{k-2} e^{-k} / k! for k >= 1; mean 2, tail ~ sqrt(2/pi) k^{-5/2}.
double mu_pmf(int64_t k);
long double mu_log_pmf(int64_t k);

// Partial sum of mu up to K plus the Euler-Maclaurin tail estimate; the pair
// (mass, mean) should be (1, 2) up to ~1e-12 / ~1e-8.
struct MuMassCheck {
  double mass_with_tail;
  double mean_with_tail;
  double partial_mass;
};
MuMassCheck mu_mass_check(int64_t K);

struct WalkPmfResult {
  double value;              // P(S_steps = target)
  double truncation_deficit; // mass of the final row lost past the cutoff
};

// Point probability P(S_steps = target) for the mu walk. The support is
// truncated at `target`; since increments are >= 1 no contributing path ever
// exceeds the cutoff, so the point value is exact up to rounding.
// Successive squaring keeps the convolution count logarithmic in `steps`.
WalkPmfResult walk_pmf(int64_t steps, int64_t target);

// Distribution rows of S_1 .. S_steps truncated at `support_cap`, built
// sequentially (used by the small freezer cross-checks).
class WalkPmfTable {
public:
  WalkPmfTable(int32_t steps, int64_t support_cap);
  double prob(int32_t step, int64_t value) const;
  double row_deficit(int32_t step) const;

private:
  int64_t cap_;
  std::vector<std::vector<long double>> rows_;
};

struct ForestSample {
  std::vector<int32_t> component_sizes;                // walk increments, in order
  std::vector<std::pair<int32_t, int32_t>> edges;      // 0-based labeled forest edges
  int64_t attempts = 0;
};

// Uniform unrooted forest on n labeled vertices with m edges: rejection on
// the conditioned mu walk, then independent uniform Cayley trees on a uniform
// label partition. Throws when the rejection budget is exhausted.
ForestSample sample_uniform_forest(int64_t n, int64_t m, uint64_t seed,
                                   int64_t max_attempts = 10'000'000);

} // namespace parkfrozen
