#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace parkfrozen {

// ---- Lambert W --------------------------------------------------------------

// Principal branch W0 on [-1/e, inf): w e^w = x, w >= -1.
double lambert_w0(double x);

// Branch W-1 on [-1/e, 0): w e^w = x, w <= -1.
double lambert_wm1(double x);

// W-1 evaluated from L = ln(-x); safe when x underflows. Returns -W-1 >= 1.
double lambert_wm1_neg_from_log(double L);

// Closed form of the strongly-parked bivariate series
//   S(x, y) = -W_b(Delta) - x/y,  Delta = -(x/y) exp(y - S(x,0) - x/y),
// with the branch switching from W-1 to W0 at y* = (1 - sqrt(1-4x))/2.
// Domain: 0 <= x < 1/4, 0 < y <= y_c(x); beyond y_c, Delta < -1/e.
double lambert_closed_form(double x, double y);

// S(x, 0) = 1 - ln 2 - sqrt(1-4x) + ln(1 + sqrt(1-4x)).
double strongly_parked_s0(double x);

// ---- Britikov asymptotics ------------------------------------------------------

enum class ForestRegime { subcritical, critical, supercritical };

struct BritikovEstimate {
  ForestRegime regime;
  double log_count; // natural log of the asymptotic forest count
  double lambda;    // window position, meaningful in the critical regime
};

// Asymptotic count of forests with n vertices and m edges, classified by
// rho = (2m - n) n^{1/3} / (n - m).
BritikovEstimate britikov_count(int64_t n, int64_t m);

// ---- Freezer jump kernels -------------------------------------------------------

// g_{x,lambda}(y) = (y + x) p1(lambda - x - y) / p1(lambda - x), x >= 0.
double jump_kernel_g(double x, double lambda, double y);

// Density of the freezer jump kernel n_lambda(x, dy)/dy with the parameter-p
// variant (y + 2 p x); p = 1/2 recovers (y + x).
double jump_density(double x, double lambda, double y, double p = 0.5);

struct JumpDensityComparison {
  std::vector<double> bin_edges;
  std::vector<double> observed;   // jump counts per bin, all replicas
  std::vector<double> predicted;  // summed per-step kernel masses
  int64_t total_jumps = 0;        // jumps that landed in [first, last) bins
  int64_t replicas = 0;
};

// Harvest freezer jumps of F_p(n, .) inside the lambda window and compare
// them with the kernel prediction accumulated step by step.
JumpDensityComparison empirical_jump_density(int64_t n, double p, uint64_t seed,
                                             int64_t replicas, double lambda_lo,
                                             double lambda_hi,
                                             const std::vector<double>& bin_edges);

} // namespace parkfrozen
