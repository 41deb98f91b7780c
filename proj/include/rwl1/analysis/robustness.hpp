#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rwl1/core/quadrature.hpp"
#include "rwl1/core/special_functions.hpp"
#include "rwl1/signal/distribution.hpp"

namespace rwl1::analysis {

struct RobustnessConfig {
  // Upper bound on the robustness overhead constant kappa. The default is
  // only established for the measurement ratio 0.5555; callers working at
  // other ratios must supply their own bound.
  double kappa_star = 1.7320508075688772935;
  // Candidate epsilon1 values for the infimum search, strictly inside (0,1).
  std::vector<double> epsilon1_grid = default_epsilon1_grid();

  static std::vector<double> default_epsilon1_grid() {
    // 200 logarithmically spaced points spanning [1e-6, 0.9].
    const std::size_t count = 200;
    std::vector<double> grid(count);
    const double lo = std::log(1e-6);
    const double hi = std::log(0.9);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(count - 1);
      grid[i] = std::exp(lo + t * (hi - lo));
    }
    return grid;
  }

  void validate() const {
    if (!(kappa_star > 0.0))
      throw std::invalid_argument("robustness config: kappa_star must be positive");
    if (epsilon1_grid.empty())
      throw std::invalid_argument("robustness config: epsilon1 grid must be nonempty");
    for (double e : epsilon1_grid)
      if (!(e > 0.0) || !(e < 1.0))
        throw std::invalid_argument("robustness config: grid points must lie in (0,1)");
  }
};

// Lower bound C(eps1) = 1/sqrt(1 - eps1) on the robustness constant of the
// (1 - eps1)-scaled support at the weak-threshold sparsity.
inline double robustness_C(double epsilon1) {
  if (!(epsilon1 > 0.0) || !(epsilon1 < 1.0))
    throw std::domain_error("robustness_C: epsilon1 must lie in (0,1)");
  return 1.0 / std::sqrt(1.0 - epsilon1);
}

// One candidate of the zeta infimum: the relative l1-error bound
//   [2 C(eps1) (1 + kappa*) / (C(eps1) - 1)] * tail_mass(eps1)
// where tail_mass is the limiting fraction of |x|'s l1 mass in its smallest
// entries below the quantile at (1 - eps1) / (2 (1 + eps0)).
inline double zeta_at_epsilon1(double epsilon0, double epsilon1, const RobustnessConfig& cfg,
                               const sig::Distribution& dist) {
  if (!(epsilon0 > 0.0)) throw std::domain_error("zeta: epsilon0 must be positive");
  const double C = robustness_C(epsilon1);
  const double prefactor = 2.0 * C * (1.0 + cfg.kappa_star) / (C - 1.0);
  const double q = 0.5 * (1.0 - epsilon1) / (1.0 + epsilon0);

  double tail_mass;
  if (dist.kind() == sig::DistributionKind::gaussian) {
    // Closed form: 2 * integral_0^{Psi(q)} x phi(x) dx / E|X| = 1 - e^{-Psi(q)^2/2},
    // computed cancellation-free for the tiny epsilon0 + epsilon1 regime.
    const double psi = -num::std_normal_quantile(q);
    tail_mass = -std::expm1(-0.5 * psi * psi);
  } else {
    const double upper = dist.quantile_psi(q);
    tail_mass = upper <= 0.0
                    ? 0.0
                    : 2.0 * num::integrate([&dist](double x) { return x * dist.pdf(x); }, 0.0,
                                           upper, 1e-14) /
                          dist.abs_mean();
  }
  return prefactor * tail_mass;
}

// Infimum over the configured epsilon1 grid, refined by golden-section around
// the best grid point. Returns +infinity when every candidate exceeds 1,
// i.e. when the bound certifies nothing.
inline double zeta(double epsilon0, const RobustnessConfig& cfg, const sig::Distribution& dist) {
  cfg.validate();
  if (!(epsilon0 > 0.0)) throw std::domain_error("zeta: epsilon0 must be positive");

  std::vector<double> sorted = cfg.epsilon1_grid;
  std::sort(sorted.begin(), sorted.end());
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double v = zeta_at_epsilon1(epsilon0, sorted[i], cfg, dist);
    if (v < best) { best = v; best_idx = i; }
  }

  // Golden-section refinement on the bracketing interval.
  double lo = best_idx > 0 ? sorted[best_idx - 1] : sorted[best_idx];
  double hi = best_idx + 1 < sorted.size() ? sorted[best_idx + 1] : sorted[best_idx];
  if (hi > lo) {
    const double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = zeta_at_epsilon1(epsilon0, x1, cfg, dist);
    double f2 = zeta_at_epsilon1(epsilon0, x2, cfg, dist);
    for (int it = 0; it < 80 && (hi - lo) > 1e-12 * (1.0 + hi); ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - inv_phi * (hi - lo);
        f1 = zeta_at_epsilon1(epsilon0, x1, cfg, dist);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + inv_phi * (hi - lo);
        f2 = zeta_at_epsilon1(epsilon0, x2, cfg, dist);
      }
    }
    best = std::min({best, f1, f2});
  }

  if (best > 1.0) return std::numeric_limits<double>::infinity();
  return best;
}

// Asymptotic lower bound on |supp(x) cap supp_k(xhat)| / k at sparsity
// (1 + eps0) times the weak threshold: 2 Q_f(sqrt(-2 log(1 - zeta))).
// A vacuous zeta (>= 1) yields 0.
inline double overlap_lower_bound(double epsilon0, const RobustnessConfig& cfg,
                                  const sig::Distribution& dist) {
  const double z = zeta(epsilon0, cfg, dist);
  if (!(z < 1.0)) return 0.0;
  const double arg = std::sqrt(-2.0 * std::log1p(-z));
  const double bound = 2.0 * dist.tail_q(arg);
  return std::clamp(bound, 0.0, 1.0);
}

} // namespace rwl1::analysis
