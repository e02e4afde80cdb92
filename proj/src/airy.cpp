#include "parkfrozen/airy.hpp"

#include <cmath>
#include <stdexcept>

namespace parkfrozen {

namespace {

// Ai(0) = 3^{-2/3} / Gamma(2/3), -Ai'(0) = 3^{-1/3} / Gamma(1/3).
constexpr long double kAi0 = 0.35502805388781723926006318600418317640L;
constexpr long double kAip0 = -0.25881940379280679840518356018920396348L;
constexpr long double kInvTwoSqrtPi = 0.28209479177387814347403972578038630L; // 1/(2 sqrt(pi))

// Maclaurin series: Ai(z) = c1 f(z) - c2 g(z) with
//   f = sum z^{3k} prod..., g = sum z^{3k+1} prod...; term recurrences below.
AiryScaled airy_series_impl(long double z) {
  if (z < 1e-30L) return {kAi0, kAip0};
  long double f = 1.0L, fp = 0.0L;   // f and f'
  long double g = z, gp = 1.0L;      // g and g'
  long double t = 1.0L;              // current f term, z^{3k} scale
  long double u = z;                 // current g term
  long double z3 = z * z * z;
  for (int k = 0; k < 200; ++k) {
    long double t_next = t * z3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
    long double u_next = u * z3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
    f += t_next;
    g += u_next;
    fp += t_next * (3.0L * (k + 1)) / z;
    gp += u_next * (3.0L * (k + 1) + 1.0L) / z;
    t = t_next;
    u = u_next;
    if (t < f * 1e-24L && u < g * 1e-24L) break;
  }
  long double ai = kAi0 * f + kAip0 * g;
  long double aip = kAi0 * fp + kAip0 * gp;
  long double zeta = (2.0L / 3.0L) * z * std::sqrt(z);
  long double s = std::exp(zeta);
  return {ai * s, aip * s};
}

// Poincare expansions for z above the crossover:
//   Ai(z)  ~ e^{-zeta}/(2 sqrt(pi) z^{1/4}) sum (-1)^k c_k zeta^{-k}
//   Ai'(z) ~ -z^{1/4} e^{-zeta}/(2 sqrt(pi)) sum (-1)^k d_k zeta^{-k}
// with c_0 = 1, c_k/c_{k-1} = (3k-1/2)(3k-3/2)(3k-5/2) / (54 k (k-1/2)),
// d_k = -(6k+1)/(6k-1) c_k. Truncated at the smallest term.
AiryScaled airy_asymptotic_impl(long double z) {
  long double zeta = (2.0L / 3.0L) * z * std::sqrt(z);
  long double ck = 1.0L;
  long double suma = 1.0L, sumb = 1.0L;
  long double prev = 1.0L;
  long double sign = -1.0L;
  for (int k = 1; k < 80; ++k) {
    ck *= (3.0L * k - 0.5L) * (3.0L * k - 1.5L) * (3.0L * k - 2.5L) /
          (54.0L * k * (k - 0.5L));
    long double term = ck / std::pow(zeta, static_cast<long double>(k));
    if (term > prev) break; // divergent tail reached
    long double dk_over_ck = -(6.0L * k + 1.0L) / (6.0L * k - 1.0L);
    suma += sign * term;
    sumb += sign * term * dk_over_ck;
    prev = term;
    sign = -sign;
    if (term < 1e-25L) break;
  }
  long double zq = std::pow(z, 0.25L);
  return {kInvTwoSqrtPi / zq * suma, -kInvTwoSqrtPi * zq * sumb};
}

} // namespace

AiryScaled airy_scaled_series(long double z) {
  if (z < 0.0L) throw std::domain_error("airy_scaled: argument must be >= 0");
  return airy_series_impl(z);
}

AiryScaled airy_scaled_asymptotic(long double z) {
  if (z <= 0.0L) throw std::domain_error("airy_scaled_asymptotic: argument must be > 0");
  return airy_asymptotic_impl(z);
}

AiryScaled airy_scaled(long double z) {
  if (z < 0.0L) throw std::domain_error("airy_scaled: argument must be >= 0");
  if (z <= airy_series_asymptotic_crossover) return airy_series_impl(z);
  return airy_asymptotic_impl(z);
}

double airy_ai(double z) {
  AiryScaled v = airy_scaled(z);
  long double zeta = (2.0L / 3.0L) * static_cast<long double>(z) * std::sqrt(static_cast<long double>(z));
  return static_cast<double>(v.ai_scaled * std::exp(-zeta));
}

double airy_ai_prime(double z) {
  AiryScaled v = airy_scaled(z);
  long double zeta = (2.0L / 3.0L) * static_cast<long double>(z) * std::sqrt(static_cast<long double>(z));
  return static_cast<double>(v.aip_scaled * std::exp(-zeta));
}

double airy_p1(double x) {
  long double xl = x;
  long double z = xl * xl / 4.0L;
  AiryScaled v = airy_scaled(z);
  long double bracket = xl * v.ai_scaled + 2.0L * v.aip_scaled;
  if (x >= 0.0) {
    // e^{x^3/12} cancels e^{-zeta} exactly: zeta = (2/3)(x^2/4)^{3/2} = x^3/12.
    return static_cast<double>(-0.5L * bracket);
  }
  // x < 0: e^{x^3/12} e^{-zeta} = e^{-|x|^3/6}.
  long double ax = -xl;
  return static_cast<double>(-0.5L * std::exp(-ax * ax * ax / 6.0L) * bracket);
}

double airy_pt(double t, double x) {
  if (t <= 0.0) throw std::domain_error("airy_pt: t must be positive");
  double s = std::pow(t, -2.0 / 3.0);
  return s * airy_p1(x * s);
}

namespace {

double simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return simpson(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1);
}

double adaptive_simpson(double (*f)(double), double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace

double airy_p1_integral(double lo, double hi, double tol) {
  return adaptive_simpson(&airy_p1, lo, hi, tol);
}

double airy_p1_total_mass() {
  // Left of -12 the density is ~ e^{-288}; right of X the tail is polynomial:
  //   int_X^inf p1 ~ (2/3) X^{-3/2} / sqrt(2 pi) up to O(X^{-9/2}).
  const double X = 600.0;
  double body = 0.0;
  // piecewise for quadrature robustness around the mode
  const double cuts[] = {-12.0, -4.0, 0.0, 4.0, 20.0, 100.0, X};
  for (int i = 0; i + 1 < static_cast<int>(sizeof(cuts) / sizeof(double)); ++i)
    body += airy_p1_integral(cuts[i], cuts[i + 1], 2e-11);
  double tail = (2.0 / 3.0) * std::pow(X, -1.5) / std::sqrt(2.0 * M_PI);
  return body + tail;
}

} // namespace parkfrozen
