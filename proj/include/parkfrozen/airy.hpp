#pragma once

namespace parkfrozen {

// Airy Ai and Ai' on the nonnegative real axis, with the exponential factor
// e^{zeta}, zeta = (2/3) z^{3/2}, pulled out so large arguments neither
// underflow nor lose the leading behaviour:
//   ai_scaled  = e^{zeta} Ai(z),   aip_scaled = e^{zeta} Ai'(z).
struct AiryScaled {
  long double ai_scaled;
  long double aip_scaled;
};

AiryScaled airy_scaled(long double z);

// The two evaluation routes behind airy_scaled, exposed so the crossover can
// be validated by overlap agreement.
AiryScaled airy_scaled_series(long double z);
AiryScaled airy_scaled_asymptotic(long double z);

// Plain values (convenience; may underflow for very large z).
double airy_ai(double z);
double airy_ai_prime(double z);

// Crossover between the Maclaurin series and the Poincare expansion; the two
// agree to ~1e-10 relative on a window around it (validated in the tests).
inline constexpr long double airy_series_asymptotic_crossover = 6.0L;

// Density of the normalized spectrally positive 3/2-stable variable at time 1:
//   p1(x) = -(1/2) e^{x^3/12} ( x Ai(x^2/4) + 2 Ai'(x^2/4) ).
double airy_p1(double x);

// Scaling in time: p_t(x) = t^{-2/3} p1(x t^{-2/3}).
double airy_pt(double t, double x);

// Adaptive quadrature of p1 over [lo, hi] (no tail terms added).
double airy_p1_integral(double lo, double hi, double tol);

// Integral over the whole line: quadrature on a wide window plus the
// polynomial right tail; should be 1 within ~1e-9.
double airy_p1_total_mass();

} // namespace parkfrozen
