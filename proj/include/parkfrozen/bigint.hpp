#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace parkfrozen {

using BigCount = mpz_class;
using BigRat = mpq_class;

BigCount factorial(uint64_t n);
BigCount binomial(uint64_t n, uint64_t k);
BigCount pow_uint(const BigCount& base, uint64_t e);

// (x)_a = x (x+1) ... (x+a-1) for x = 1/2, exact.
BigRat pochhammer_half(uint64_t a);

// Natural log of a positive big integer (for asymptotic comparisons).
double log_big(const BigCount& v);

inline std::string to_decimal(const BigCount& v) { return v.get_str(); }
inline std::string to_decimal(const BigRat& v) { return v.get_str(); }

} // namespace parkfrozen
