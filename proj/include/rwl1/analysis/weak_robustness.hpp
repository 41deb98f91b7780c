#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rwl1/analysis/robustness.hpp"
#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/signal/sparse_signal.hpp"
#include "rwl1/solver/support.hpp"
#include "rwl1/thresholds/thresholds.hpp"

namespace rwl1::analysis {

struct WeakRobustnessCheck {
  bool error_bound_holds = false; // ||(x - xhat)_{K1}||_1 <= (2C/(C-1)) ||x_{K1^c}||_1
  bool mass_bound_holds = false;  // ||x_{K1}||_1 - ||xhat_{K1}||_1 <= (2/(C-1)) ||x_{K1^c}||_1
};

// Checks both weak-robustness inequalities on the k1-support of x, where
// k1 = floor((1 - epsilon1) * mu_w * n) is the shrunken weak-threshold
// support size and C = 1/sqrt(1 - epsilon1).
inline WeakRobustnessCheck check_weak_robustness(const sig::SparseSignal& x,
                                                 const std::vector<double>& xhat,
                                                 double epsilon1, double mu_w) {
  if (xhat.size() != x.n)
    throw std::invalid_argument("weak robustness: estimate length mismatch");
  if (!(mu_w > 0.0) || mu_w > 1.0)
    throw std::invalid_argument("weak robustness: mu_w must lie in (0,1]");
  const double C = robustness_C(epsilon1);

  const auto k1 = static_cast<std::size_t>(
      std::floor((1.0 - epsilon1) * mu_w * static_cast<double>(x.n)));
  const std::vector<std::size_t> K1 = solver::k_support(x.dense, k1);

  std::vector<bool> in_K1(x.n, false);
  for (std::size_t idx : K1) in_K1[idx] = true;

  double err_on = 0.0, x_on = 0.0, xhat_on = 0.0, x_off = 0.0;
  for (std::size_t i = 0; i < x.n; ++i) {
    if (in_K1[i]) {
      err_on += std::abs(x.dense[i] - xhat[i]);
      x_on += std::abs(x.dense[i]);
      xhat_on += std::abs(xhat[i]);
    } else {
      x_off += std::abs(x.dense[i]);
    }
  }

  WeakRobustnessCheck result;
  result.error_bound_holds = err_on <= (2.0 * C / (C - 1.0)) * x_off;
  result.mass_bound_holds = (x_on - xhat_on) <= (2.0 / (C - 1.0)) * x_off;
  return result;
}

// Convenience overload deriving mu_w from the measurement ratio of A.
inline WeakRobustnessCheck check_weak_robustness(const num::DenseMatrix& A,
                                                 const sig::SparseSignal& x,
                                                 const std::vector<double>& xhat,
                                                 double epsilon1,
                                                 const thresholds::ThresholdSearchConfig& cfg = {}) {
  if (A.cols != x.n) throw std::invalid_argument("weak robustness: matrix width mismatch");
  const double delta = static_cast<double>(A.rows) / static_cast<double>(A.cols);
  return check_weak_robustness(x, xhat, epsilon1, thresholds::weak_threshold_mu(delta, cfg));
}

} // namespace rwl1::analysis
