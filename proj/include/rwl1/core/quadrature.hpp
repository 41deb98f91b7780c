#pragma once

#include <cmath>
#include <stdexcept>

namespace rwl1::num {

namespace detail {

template <typename F>
double simpson_step(F&& f, double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(F&& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth,
                        int max_depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_step(f, a, m, fa, flm, fm);
  const double right = simpson_step(f, m, b, fm, frm, fb);
  const double delta = left + right - whole;
  if (std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw std::runtime_error("adaptive_quadrature: refinement depth exceeded");
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace detail

inline constexpr int kQuadratureMaxDepth = 60;

template <typename F>
double integrate(F&& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("integrate: tol must be positive");
  if (lo == hi) return 0.0;
  const double sign = lo < hi ? 1.0 : -1.0;
  const double a = std::min(lo, hi);
  const double b = std::max(lo, hi);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = detail::simpson_step(f, a, b, fa, fm, fb);
  return sign * detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0,
                                         kQuadratureMaxDepth);
}

// Semi-infinite integral: the upper limit is pushed out geometrically
// until the integrand falls below 1e-15, then the finite rule applies.
// Intended for monotonically decaying tails (densities, x * density).
template <typename F>
double integrate_to_infinity(F&& f, double lo, double tol) {
  double step = 1.0;
  double hi = lo + step;
  int expansions = 0;
  while ((std::fabs(f(hi)) >= 1e-15 || std::fabs(f(hi + 0.5 * step)) >= 1e-15) &&
         expansions < 200) {
    step *= 2.0;
    hi = lo + step;
    ++expansions;
  }
  if (expansions >= 200) {
    throw std::runtime_error("integrate_to_infinity: tail does not decay");
  }
  return integrate(f, lo, hi, tol);
}

} // namespace rwl1::num
