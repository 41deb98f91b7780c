#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

// Special functions for the recovery lab: upper-tail Q of the standard
// normal, its inverse, the scaled error-function pair (G, g), and a few
// log-domain variants that stay finite far out in the tail.

namespace rwl1::num {

inline constexpr double kSqrt2 = 1.4142135623730950488016887242097;
inline constexpr double kSqrtPi = 1.7724538509055160272981674833411;
inline constexpr double kSqrt2Pi = 2.5066282746310005024157652848110;
inline constexpr double kTwoOverSqrtPi = 2.0 / kSqrtPi;

inline double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / kSqrt2Pi;
}

// Q(x) = P(Z > x). erfc covers the whole double range we care about:
// it only underflows past x ~ 38, where the true value is below 1e-300.
inline double std_normal_tail(double x) {
  return 0.5 * std::erfc(x / kSqrt2);
}

inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / kSqrt2);
}

// log Phi(x), finite for any x representable as a double. For x <= -20
// erfc itself is still fine, but products like Phi(omega * s) with
// omega ~ 10 push arguments past the underflow point, so the asymptotic
// Mills series is used instead:
//   Phi(-t) = phi(t)/t * (1 - 1/t^2 + 3/t^4 - 15/t^6 + ...)
inline double log_std_normal_cdf(double x) {
  if (x > -20.0) {
    return std::log(std_normal_cdf(x));
  }
  const double t = -x;
  const double t2 = t * t;
  double term = 1.0;
  double series = 1.0;
  for (int k = 1; k < 40; ++k) {
    term *= -(2.0 * k - 1.0) / t2;
    series += term;
    if (std::fabs(term) < 1e-18 * series) break;
  }
  return -0.5 * t2 - std::log(t) - 0.5 * std::log(2.0 * M_PI) + std::log(series);
}

// phi(x) / Phi(x), the inverse Mills ratio; stable for very negative x.
inline double inverse_mills(double x) {
  if (x > -20.0) {
    return std_normal_pdf(x) / std_normal_cdf(x);
  }
  const double log_pdf = -0.5 * x * x - std::log(kSqrt2Pi);
  return std::exp(log_pdf - log_std_normal_cdf(x));
}

namespace detail {

// Wichura's rational approximation of the lower-quantile function
// (double precision branch). Input p in (0,1), returns z with CDF(z) = p.
inline double ppnd16(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        q * (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                   6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
               1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    x = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    x = num / den;
  }
  return q < 0.0 ? -x : x;
}

} // namespace detail

// Inverse of std_normal_tail: returns x with Q(x) = p. A Newton step on
// the rational seed brings the round-trip error under 1e-15.
inline double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("std_normal_quantile: p must lie in (0,1)");
  }
  double x = detail::ppnd16(p);
  for (int pass = 0; pass < 2; ++pass) {
    const double pdf = std_normal_pdf(x);
    if (pdf < 1e-290) break;
    // Newton polish of Phi(x) = p, evaluated through whichever tail is
    // small so the residual stays cancellation-free.
    const double residual = p <= 0.5 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_tail(x);
    const double step = residual / pdf;
    x -= step;
    if (std::fabs(step) < 1e-14 * (1.0 + std::fabs(x))) break;
  }
  return x;
}

struct ErfPair {
  double g; // (2/sqrt(pi)) exp(-x^2)
  double G; // erf(x)
};

inline ErfPair scaled_erf_pair(double x) {
  if (x < 0.0) {
    throw std::domain_error("scaled_erf_pair: x must be nonnegative");
  }
  return ErfPair{kTwoOverSqrtPi * std::exp(-x * x), std::erf(x)};
}

// Shannon entropy in bits; endpoints are exact zero limits.
inline double bit_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

} // namespace rwl1::num
