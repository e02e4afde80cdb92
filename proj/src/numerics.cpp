#include "parkfrozen/numerics.hpp"

#include <cmath>
#include <stdexcept>

#include "parkfrozen/airy.hpp"
#include "parkfrozen/frozen.hpp"
#include "parkfrozen/rng.hpp"

namespace parkfrozen {

namespace {

constexpr double kInvE = 0.36787944117144233; // 1/e

double halley_w(double x, double w) {
  for (int it = 0; it < 64; ++it) {
    double ew = std::exp(w);
    double f = w * ew - x;
    if (std::fabs(f) <= 1e-14 * (std::fabs(x) + 1e-290)) break;
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    double step = f / denom;
    w -= step;
    if (std::fabs(step) < 1e-17 * (1.0 + std::fabs(w))) break;
  }
  return w;
}

} // namespace

double lambert_w0(double x) {
  if (x < -kInvE - 1e-12) throw std::domain_error("lambert_w0: argument below -1/e");
  if (x < -kInvE) x = -kInvE;
  double w;
  if (x < -0.25) {
    double p = std::sqrt(2.0 * (1.0 + M_E * x));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 2.0) {
    w = x / (1.0 + x);
  } else {
    double l = std::log(x);
    w = l - std::log(l);
  }
  return halley_w(x, w);
}

double lambert_wm1(double x) {
  if (x >= 0.0) throw std::domain_error("lambert_wm1: argument must be negative");
  if (x < -kInvE - 1e-12) throw std::domain_error("lambert_wm1: argument below -1/e");
  return -lambert_wm1_neg_from_log(std::log(-x));
}

// Solve ln v - v = L for v >= 1 (v = -W_-1(-e^L)); well conditioned for any
// L <= -1, including values of -e^L far below the double underflow range.
double lambert_wm1_neg_from_log(double L) {
  if (L > -1.0 + 1e-12) {
    if (L > -1.0 + 1e-6) return 1.0;
    throw std::domain_error("lambert_wm1_neg_from_log: L must be <= -1");
  }
  double v;
  if (L > -1.7) {
    // branch-point expansion of -W_-1 about v = 1, with 1 + e x ~ -(1 + L)
    double p = std::sqrt(2.0) * std::sqrt(-(1.0 + L));
    v = 1.0 + p + p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    v = -L + std::log(-L);
  }
  for (int it = 0; it < 64; ++it) {
    double f = std::log(v) - v - L;
    double fp = 1.0 / v - 1.0;
    double step = f / fp;
    v -= step;
    if (std::fabs(step) <= 1e-16 * v) break;
  }
  return v;
}

double strongly_parked_s0(double x) {
  if (x < 0.0 || x > 0.25) throw std::domain_error("strongly_parked_s0: need 0 <= x <= 1/4");
  double r = std::sqrt(1.0 - 4.0 * x);
  return 1.0 - std::log(2.0) - r + std::log1p(r);
}

double lambert_closed_form(double x, double y) {
  if (x < 0.0 || x >= 0.25) throw std::domain_error("lambert_closed_form: need 0 <= x < 1/4");
  if (y <= 0.0) throw std::domain_error("lambert_closed_form: need y > 0");
  double s0 = strongly_parked_s0(x);
  double L = std::log(x / y) + y - s0 - x / y; // ln(-Delta)
  if (L > -1.0 + 1e-9)
    throw std::domain_error("lambert_closed_form: outside the Lambert domain (y > y_c)");
  double ystar = 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * x));
  if (y <= ystar) {
    return lambert_wm1_neg_from_log(L) - x / y; // -W_-1(Delta) - x/y
  }
  double delta = -std::exp(L);
  return -lambert_w0(delta) - x / y;
}

BritikovEstimate britikov_count(int64_t n, int64_t m) {
  if (m < 1 || m >= n) throw std::domain_error("britikov_count: need 1 <= m < n");
  double nd = static_cast<double>(n), md = static_cast<double>(m);
  double n13 = std::cbrt(nd);
  double rho = (2.0 * md - nd) * n13 / (nd - md);
  double lambda = (2.0 * md - nd) / (n13 * n13);
  BritikovEstimate est{};
  est.lambda = lambda;
  const double kWindow = 10.0; // |rho| below this: inside the critical window
  if (rho < -kWindow) {
    est.regime = ForestRegime::subcritical;
    est.log_count = 2.0 * md * std::log(nd) - md * std::log(2.0) - std::lgamma(md + 1.0) +
                    0.5 * std::log(1.0 - 2.0 * md / nd);
  } else if (rho > kWindow) {
    est.regime = ForestRegime::supercritical;
    est.log_count = (nd - 2.0) * std::log(nd) - (nd - md - 1.0) * std::log(2.0) -
                    std::lgamma(nd - md) - 2.5 * std::log(2.0 * md / nd - 1.0);
  } else {
    est.regime = ForestRegime::critical;
    est.log_count = (nd - 1.0 / 6.0) * std::log(nd) - (nd - md) * std::log(2.0) -
                    std::lgamma(nd - md + 1.0) +
                    std::log(airy_p1(lambda) * std::sqrt(2.0 * M_PI));
  }
  return est;
}

double jump_kernel_g(double x, double lambda, double y) {
  if (x < 0.0) throw std::domain_error("jump_kernel_g: x must be >= 0");
  return (y + x) * airy_p1(lambda - x - y) / airy_p1(lambda - x);
}

double jump_density(double x, double lambda, double y, double p) {
  if (y <= 0.0) throw std::domain_error("jump_density: y must be positive");
  if (x < 0.0) throw std::domain_error("jump_density: x must be >= 0");
  double ratio = airy_p1(lambda - x - y) / airy_p1(lambda - x);
  return 0.5 / std::sqrt(2.0 * M_PI * y * y * y) * (y + 2.0 * p * x) * ratio;
}

JumpDensityComparison empirical_jump_density(int64_t n, double p, uint64_t seed,
                                             int64_t replicas, double lambda_lo,
                                             double lambda_hi,
                                             const std::vector<double>& bin_edges) {
  if (replicas < 1) throw std::domain_error("empirical_jump_density: no replicas");
  if (bin_edges.size() < 2) throw std::domain_error("empirical_jump_density: need bins");

  JumpDensityComparison cmp;
  cmp.bin_edges = bin_edges;
  cmp.replicas = replicas;
  const size_t bins = bin_edges.size() - 1;
  cmp.observed.assign(bins, 0.0);
  cmp.predicted.assign(bins, 0.0);

  const double n23 = std::cbrt(static_cast<double>(n) * static_cast<double>(n));
  const int64_t m_lo = critical_window_m(n, lambda_lo);
  const int64_t m_hi = critical_window_m(n, lambda_hi);

  // Between freeze events the frozen mass is constant, so the per-bin kernel
  // prediction only needs refreshing on jumps and on coarse lambda chunks.
  const int64_t refresh = 64;
  std::vector<double> step_mass(bins, 0.0);

  // 5-point Gauss-Legendre nodes on [-1, 1]; the y^{-3/2} factor is far from
  // flat across a bin, so a midpoint rule would bias the prediction.
  static const double gl_x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
  static const double gl_w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};

  auto refresh_step_mass = [&](double mass, int64_t m) {
    double x = mass / n23;
    double lam = (2.0 * static_cast<double>(m) - static_cast<double>(n)) / n23;
    for (size_t b = 0; b < bins; ++b) {
      double a = bin_edges[b], bb = bin_edges[b + 1];
      double half = 0.5 * (bb - a), mid = 0.5 * (a + bb);
      double integral = 0.0;
      for (int q = 0; q < 5; ++q)
        integral += gl_w[q] * jump_density(x, lam, mid + half * gl_x[q], p);
      integral *= half;
      // Per-step probability of a jump into the bin, leading order. The
      // density carries the 1/2 of the lambda-time parametrization (two
      // steps per unit of n^{2/3} lambda), so per step it enters doubled.
      step_mass[b] = 2.0 * integral / n23;
    }
  };

  for (int64_t rep = 0; rep < replicas; ++rep) {
    FrozenState st(n, p, p == 0.5);
    EdgeStream stream(n, seed == 0 ? replica_seed(1, rep) : replica_seed(seed, rep));
    bool fresh = true;
    for (int64_t m = 1; m <= m_hi; ++m) {
      OrientedEdge e = stream.next();
      int64_t mass_before = st.frozen_mass;
      FrozenStepReport r =
          frozen_step(st, e, st.orientation_rule ? 0.0 : stream.aux_uniform_at(e.index));
      if (m <= m_lo) continue;
      if (fresh || r.frozen_delta > 0 || (m - m_lo) % refresh == 0) {
        // prediction uses the state seen by this step
        refresh_step_mass(mass_before, m - 1);
        fresh = false;
      }
      for (size_t b = 0; b < bins; ++b) cmp.predicted[b] += step_mass[b];
      if (r.frozen_delta > 0) {
        double y = static_cast<double>(r.frozen_delta) / n23;
        if (y >= bin_edges.front() && y < bin_edges.back()) {
          size_t b = 0;
          while (b + 1 < bins && y >= bin_edges[b + 1]) ++b;
          cmp.observed[b] += 1.0;
          cmp.total_jumps += 1;
        }
      }
      if (r.frozen_delta > 0) fresh = true; // mass changed; refresh next step
    }
  }
  return cmp;
}

} // namespace parkfrozen
