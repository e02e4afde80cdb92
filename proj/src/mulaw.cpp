#include "parkfrozen/mulaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parkfrozen/coupling.hpp"

namespace parkfrozen {

long double mu_log_pmf(int64_t k) {
  if (k < 1) throw std::domain_error("mu_pmf: k must be >= 1");
  long double kl = static_cast<long double>(k);
  return std::log(2.0L) + (kl - 2.0L) * std::log(kl) - kl - lgammal(kl + 1.0L);
}

double mu_pmf(int64_t k) { return static_cast<double>(std::exp(mu_log_pmf(k))); }

MuMassCheck mu_mass_check(int64_t K) {
  long double mass = 0.0L, mean = 0.0L;
  for (int64_t k = 1; k <= K; ++k) {
    long double p = std::exp(mu_log_pmf(k));
    mass += p;
    mean += p * static_cast<long double>(k);
  }
  // Tail estimates by midpoint Euler-Maclaurin on sqrt(2/pi) k^{-5/2}:
  //   sum_{k>K} mu(k)   ~ sqrt(2/pi) (2/3) (K+1/2)^{-3/2}
  //   sum_{k>K} k mu(k) ~ sqrt(2/pi)  2    (K+1/2)^{-1/2}
  long double c = std::sqrt(2.0L / M_PI);
  long double Kh = static_cast<long double>(K) + 0.5L;
  long double tail_mass = c * (2.0L / 3.0L) * std::pow(Kh, -1.5L);
  long double tail_mean = c * 2.0L * std::pow(Kh, -0.5L);
  return {static_cast<double>(mass + tail_mass), static_cast<double>(mean + tail_mean),
          static_cast<double>(mass)};
}

namespace {

// pmf arrays indexed by value 0..cap; mu itself occupies 1..cap.
std::vector<long double> mu_row(int64_t cap) {
  std::vector<long double> row(cap + 1, 0.0L);
  for (int64_t k = 1; k <= cap; ++k) row[k] = std::exp(mu_log_pmf(k));
  return row;
}

// c = a (*) b truncated at cap; supports start at a_lo, b_lo.
std::vector<long double> convolve(const std::vector<long double>& a, int64_t a_lo,
                                  const std::vector<long double>& b, int64_t b_lo,
                                  int64_t cap) {
  std::vector<long double> c(cap + 1, 0.0L);
  for (int64_t i = a_lo; i <= cap; ++i) {
    long double ai = a[i];
    if (ai == 0.0L) continue;
    int64_t jmax = cap - i;
    for (int64_t j = b_lo; j <= jmax; ++j) c[i + j] += ai * b[j];
  }
  return c;
}

} // namespace

WalkPmfResult walk_pmf(int64_t steps, int64_t target) {
  if (steps < 1) throw std::domain_error("walk_pmf: steps must be >= 1");
  if (target < steps) return {0.0, 0.0}; // increments are >= 1
  const int64_t cap = target;

  std::vector<long double> mu = mu_row(cap);
  std::vector<long double> acc; // distribution accumulated so far
  int64_t acc_steps = 0;
  std::vector<long double> sq = mu; // mu^(2^j)
  int64_t sq_steps = 1;
  int64_t rem = steps;
  while (rem > 0) {
    if (rem & 1) {
      if (acc_steps == 0) {
        acc = sq;
        acc_steps = sq_steps;
      } else {
        acc = convolve(acc, acc_steps, sq, sq_steps, cap);
        acc_steps += sq_steps;
      }
    }
    rem >>= 1;
    if (rem > 0) {
      sq = convolve(sq, sq_steps, sq, sq_steps, cap);
      sq_steps *= 2;
    }
  }
  long double total = 0.0L;
  for (int64_t v = acc_steps; v <= cap; ++v) total += acc[v];
  double deficit = static_cast<double>(1.0L - total);
  return {static_cast<double>(acc[target]), deficit};
}

WalkPmfTable::WalkPmfTable(int32_t steps, int64_t support_cap) : cap_(support_cap) {
  rows_.reserve(steps + 1);
  rows_.push_back(std::vector<long double>(cap_ + 1, 0.0L)); // S_0 = 0
  rows_[0][0] = 1.0L;
  std::vector<long double> mu = mu_row(cap_);
  for (int32_t j = 1; j <= steps; ++j) {
    rows_.push_back(convolve(rows_[j - 1], j - 1, mu, 1, cap_));
  }
}

double WalkPmfTable::prob(int32_t step, int64_t value) const {
  if (step < 0 || step >= static_cast<int32_t>(rows_.size()))
    throw std::out_of_range("WalkPmfTable::prob: step out of range");
  if (value < 0 || value > cap_) return 0.0;
  return static_cast<double>(rows_[step][value]);
}

double WalkPmfTable::row_deficit(int32_t step) const {
  long double total = 0.0L;
  for (long double v : rows_[step]) total += v;
  return static_cast<double>(1.0L - total);
}

ForestSample sample_uniform_forest(int64_t n, int64_t m, uint64_t seed, int64_t max_attempts) {
  if (n < 1 || m < 0 || m > n - 1)
    throw std::domain_error("sample_uniform_forest: need 0 <= m <= n-1");
  const int64_t steps = n - m;

  // Inverse-CDF table for mu truncated at n (an increment above n would
  // overshoot the target and be rejected anyway).
  std::vector<double> cdf(n + 1, 0.0);
  {
    long double acc = 0.0L;
    for (int64_t k = 1; k <= n; ++k) {
      acc += std::exp(mu_log_pmf(k));
      cdf[k] = static_cast<double>(acc);
    }
  }
  Rng rng(seed, 7);
  std::vector<int32_t> incr(steps);
  int64_t attempts = 0;
  while (true) {
    if (++attempts > max_attempts) {
      double p = walk_pmf(steps, n).value;
      throw std::length_error(
          "sample_uniform_forest: rejection budget exhausted; acceptance probability approx " +
          std::to_string(p));
    }
    int64_t sum = 0;
    bool ok = true;
    for (int64_t i = 0; i < steps; ++i) {
      double u = rng.next_unit() * cdf[n];
      auto it = std::lower_bound(cdf.begin() + 1, cdf.end(), u);
      int32_t k = static_cast<int32_t>(it - cdf.begin());
      incr[i] = k;
      sum += k;
      if (sum > n || sum + (steps - 1 - i) > n) {
        ok = false;
        break;
      }
    }
    if (ok && sum == n) break;
  }

  // Uniform label partition: shuffle 1..n and cut into blocks.
  std::vector<int32_t> labels(n);
  for (int64_t v = 0; v < n; ++v) labels[v] = static_cast<int32_t>(v);
  for (int64_t v = n - 1; v > 0; --v) {
    int64_t j = rng.next_below(static_cast<uint32_t>(v + 1));
    std::swap(labels[v], labels[j]);
  }

  ForestSample out;
  out.attempts = attempts;
  out.component_sizes = incr;
  int64_t offset = 0;
  for (int64_t i = 0; i < steps; ++i) {
    int32_t k = incr[i];
    std::vector<std::pair<int32_t, int32_t>> tree = uniform_unrooted_tree_edges(k, rng);
    for (auto [a, b] : tree)
      out.edges.emplace_back(labels[offset + a], labels[offset + b]);
    offset += k;
  }
  return out;
}

} // namespace parkfrozen
