#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rwl1::num {

struct Bracket {
  double lo;
  double hi;
  double tolerance = 1e-12;
};

// Brent's method. Requires a sign change over the bracket; callers that
// cannot guarantee one should widen it first (see expand_bracket).
template <typename F>
double find_root(F&& f, Bracket bracket) {
  double a = bracket.lo;
  double b = bracket.hi;
  if (!(a < b)) throw std::invalid_argument("find_root: bracket.lo must be < bracket.hi");
  if (!(bracket.tolerance > 0.0)) throw std::invalid_argument("find_root: tolerance must be positive");
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) {
    throw std::invalid_argument("find_root: no sign change over bracket");
  }
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a; fc = fa; d = b - a; e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::fabs(b) +
                        0.5 * bracket.tolerance;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) return b;
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::fabs(tol1 * q), std::fabs(e * q))) {
        e = d; d = p / q;
      } else {
        d = xm; e = d;
      }
    } else {
      d = xm; e = d;
    }
    a = b; fa = fb;
    b += std::fabs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw std::runtime_error("find_root: iteration limit reached");
}

// Keeps lo pinned and doubles the width until f changes sign.
template <typename F>
Bracket expand_bracket(F&& f, Bracket seed, int max_steps = 60) {
  double flo = f(seed.lo);
  double fhi = f(seed.hi);
  if (flo == 0.0 || fhi == 0.0 || (flo > 0.0) != (fhi > 0.0)) return seed;
  double width = seed.hi - seed.lo;
  for (int step = 0; step < max_steps; ++step) {
    width *= 2.0;
    seed.hi = seed.lo + width;
    fhi = f(seed.hi);
    if (fhi == 0.0 || (flo > 0.0) != (fhi > 0.0)) return seed;
  }
  throw std::invalid_argument("expand_bracket: no sign change after expansion");
}

} // namespace rwl1::num
