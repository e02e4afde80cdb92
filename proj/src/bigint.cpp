#include "parkfrozen/bigint.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace parkfrozen {

namespace {
std::vector<BigCount> g_fact = {BigCount(1)};
std::mutex g_fact_mutex;
} // namespace

BigCount factorial(uint64_t n) {
  std::lock_guard<std::mutex> lock(g_fact_mutex);
  while (g_fact.size() <= n) {
    g_fact.push_back(g_fact.back() * BigCount(static_cast<unsigned long>(g_fact.size())));
  }
  return g_fact[n];
}

BigCount binomial(uint64_t n, uint64_t k) {
  if (k > n) return BigCount(0);
  BigCount r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigCount pow_uint(const BigCount& base, uint64_t e) {
  BigCount r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

BigRat pochhammer_half(uint64_t a) {
  // (1/2)_a = (2a)! / (4^a a!)
  BigRat r(factorial(2 * a), factorial(a));
  r /= BigRat(pow_uint(BigCount(4), a));
  r.canonicalize();
  return r;
}

double log_big(const BigCount& v) {
  if (v <= 0) throw std::domain_error("log_big: value must be positive");
  long exp2 = 0;
  double d = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(d) + static_cast<double>(exp2) * std::log(2.0);
}

} // namespace parkfrozen
