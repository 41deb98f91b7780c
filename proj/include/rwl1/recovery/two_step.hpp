#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/signal/sparse_signal.hpp"
#include "rwl1/solver/basis_pursuit.hpp"
#include "rwl1/solver/support.hpp"

namespace rwl1::recovery {

struct TwoStepResult {
  std::vector<double> l1_solution;          // stage-1 minimizer
  std::vector<std::size_t> support_estimate; // k largest stage-1 magnitudes
  std::vector<double> final_solution;       // stage-2 minimizer
  solver::SolveStatus l1_status = solver::SolveStatus::optimal;
  solver::SolveStatus weighted_status = solver::SolveStatus::optimal;
  int l1_iterations = 0;
  int weighted_iterations = 0;
  double l1_objective = 0.0;
  double weighted_objective = 0.0;
};

// Stage 2 alone: reweight by keeping weight 1 on the estimated support and
// omega elsewhere, then re-solve. Split out so sweeps can reuse one stage-1
// solve across several omega values.
inline TwoStepResult reweighted_stage(const num::DenseMatrix& A, const std::vector<double>& y,
                                      const solver::SolveResult& stage1, std::size_t k,
                                      double omega, const solver::SolverOptions& options = {}) {
  if (!(omega > 1.0)) throw std::invalid_argument("two step: omega must exceed 1");
  if (k >= A.cols) throw std::invalid_argument("two step: k must be below the signal length");

  TwoStepResult result;
  result.l1_solution = stage1.solution;
  result.l1_status = stage1.status;
  result.l1_iterations = stage1.iterations;
  result.l1_objective = stage1.objective;
  if (stage1.status == solver::SolveStatus::infeasible)
    throw std::runtime_error("two step: stage 1 (plain l1) reported infeasible");

  result.support_estimate = solver::k_support(stage1.solution, k);

  solver::BasisPursuitProblem weighted{A, y, std::vector<double>(A.cols, omega)};
  for (std::size_t idx : result.support_estimate) weighted.weights[idx] = 1.0;
  const solver::SolveResult stage2 = solver::solve_weighted_l1(weighted, options);
  if (stage2.status == solver::SolveStatus::infeasible)
    throw std::runtime_error("two step: stage 2 (weighted l1) reported infeasible");
  result.final_solution = stage2.solution;
  result.weighted_status = stage2.status;
  result.weighted_iterations = stage2.iterations;
  result.weighted_objective = stage2.objective;
  return result;
}

inline TwoStepResult recover_two_step(const num::DenseMatrix& A, const std::vector<double>& y,
                                      std::size_t k, double omega,
                                      const solver::SolverOptions& options = {}) {
  if (!(omega > 1.0)) throw std::invalid_argument("two step: omega must exceed 1");
  if (k >= A.cols) throw std::invalid_argument("two step: k must be below the signal length");
  solver::BasisPursuitProblem plain{A, y, std::vector<double>(A.cols, 1.0)};
  const solver::SolveResult stage1 = solver::solve_weighted_l1(plain, options);
  return reweighted_stage(A, y, stage1, k, omega, options);
}

// Relative l2 criterion for "perfect" recovery in the Monte Carlo sense.
inline bool recovery_success(const std::vector<double>& estimate,
                             const std::vector<double>& truth, double tolerance = 1e-4) {
  if (estimate.size() != truth.size())
    throw std::invalid_argument("recovery_success: length mismatch");
  double err = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double d = estimate[i] - truth[i];
    err += d * d;
    ref += truth[i] * truth[i];
  }
  if (ref == 0.0) throw std::invalid_argument("recovery_success: truth must be nonzero");
  return std::sqrt(err) <= tolerance * std::sqrt(ref);
}

// |supp(x) ∩ supp_k(estimate)| / k with k the true sparsity.
inline double support_overlap_fraction(const sig::SparseSignal& truth,
                                       const std::vector<double>& estimate) {
  const std::size_t k = truth.sparsity();
  if (k == 0) throw std::invalid_argument("support_overlap_fraction: empty true support");
  if (estimate.size() != truth.n)
    throw std::invalid_argument("support_overlap_fraction: length mismatch");
  const std::vector<std::size_t> est = solver::k_support(estimate, k);
  return static_cast<double>(solver::intersection_size(truth.support, est)) /
         static_cast<double>(k);
}

} // namespace rwl1::recovery
