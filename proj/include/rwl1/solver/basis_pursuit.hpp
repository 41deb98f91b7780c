#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/core/linalg.hpp"

namespace rwl1::solver {

enum class SolveStatus { optimal, max_iterations, infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "unknown";
}

// min sum_i w_i |z_i|  subject to  A z = y, with all w_i > 0.
struct BasisPursuitProblem {
  num::DenseMatrix A;
  std::vector<double> y;
  std::vector<double> weights;

  void validate() const {
    const std::size_t m = A.rows;
    const std::size_t n = A.cols;
    if (m == 0 || n == 0) throw std::invalid_argument("basis pursuit: empty matrix");
    if (y.size() != m) throw std::invalid_argument("basis pursuit: y length mismatch");
    if (weights.size() != n) throw std::invalid_argument("basis pursuit: weight length mismatch");
    for (double w : weights)
      if (!(w > 0.0)) throw std::invalid_argument("basis pursuit: weights must be positive");
    for (std::size_t j = 0; j < n; ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < m; ++i)
        if (A(i, j) != 0.0) { nonzero = true; break; }
      if (!nonzero)
        throw std::invalid_argument("basis pursuit: column " + std::to_string(j) +
                                    " of A is identically zero");
    }
  }
};

struct SolveResult {
  std::vector<double> solution;   // length n, z = u - v
  double objective = 0.0;         // sum_i w_i |solution_i| at the returned point
  double primal_residual = 0.0;   // ||A z - y||_2 / max(1, ||y||_2)
  double duality_gap = 0.0;       // complementarity z.s / (1 + |c.z|) on the split LP
  int iterations = 0;
  SolveStatus status = SolveStatus::optimal;
};

struct SolverOptions {
  double tolerance = 1e-8;
  int max_iterations = 200;
};

namespace detail {

inline double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Largest alpha in [0, 1] keeping v + alpha * dv nonnegative.
inline double step_to_boundary(const std::vector<double>& v, const std::vector<double>& dv) {
  double alpha = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  return alpha;
}

} // namespace detail

// Primal-dual path-following interior point with predictor-corrector steps
// on the split reformulation
//   min [w; w]^T [u; v]  s.t.  [A, -A] [u; v] = y,  u, v >= 0.
// The normal-equation matrix A diag(u/s_u + v/s_v) A^T is refactored each
// iteration with a dense Cholesky.
inline SolveResult solve_weighted_l1(const BasisPursuitProblem& problem,
                                     const SolverOptions& options = {}) {
  problem.validate();
  const num::DenseMatrix& A = problem.A;
  const std::size_t m = A.rows;
  const std::size_t n = A.cols;
  const std::size_t n2 = 2 * n;
  const double tol = options.tolerance;

  SolveResult result;
  result.solution.assign(n, 0.0);

  const double ynorm = detail::norm2(problem.y);
  if (ynorm == 0.0) return result; // z = 0 is feasible with the minimal objective 0

  // c = [w; w]; the split operator applied to p in R^{2n} is A (p_u - p_v),
  // and its adjoint maps q to [A^T q; -A^T q].
  std::vector<double> c(n2);
  for (std::size_t j = 0; j < n; ++j) c[j] = c[n + j] = problem.weights[j];
  const double cnorm = detail::norm2(c);

  auto split_apply = [&](const std::vector<double>& p) {
    std::vector<double> diff(n);
    for (std::size_t j = 0; j < n; ++j) diff[j] = p[j] - p[n + j];
    return num::matvec(A, diff);
  };
  auto adjoint_apply = [&](const std::vector<double>& q) {
    std::vector<double> at = num::matvec_transposed(A, q);
    std::vector<double> out(n2);
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = at[j];
      out[n + j] = -at[j];
    }
    return out;
  };

  // Starting point: least-squares primal seed shifted into the positive
  // orthant (Mehrotra's heuristic). [A,-A][A,-A]^T = 2 A A^T, and the seed
  // dual is zero because [A,-A][w; w] = 0, so s = c exactly.
  std::vector<double> z(n2), s(c), lambda(m, 0.0);
  {
    num::DenseMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        double acc = 0.0;
        const double* ri = A.row(i);
        const double* rj = A.row(j);
        for (std::size_t k = 0; k < n; ++k) acc += ri[k] * rj[k];
        gram(i, j) = gram(j, i) = 2.0 * acc;
      }
    num::CholeskySystem chol(gram);
    const std::vector<double> q = chol.solve(problem.y);
    z = adjoint_apply(q);

    double min_z = z[0];
    for (double v : z) min_z = std::min(min_z, v);
    const double dz = std::max(-1.5 * min_z, 0.0);
    // s = c > 0 already, so only the primal needs shifting; the paired
    // shift keeps z and s balanced in the duality measure.
    std::vector<double> zs(n2);
    double dot_zs = 0.0, sum_s = 0.0, sum_z = 0.0;
    for (std::size_t i = 0; i < n2; ++i) {
      zs[i] = z[i] + dz;
      dot_zs += zs[i] * s[i];
      sum_s += s[i];
      sum_z += zs[i];
    }
    if (sum_z > 0.0) {
      const double dz_hat = dz + 0.5 * dot_zs / sum_s;
      const double ds_hat = 0.5 * dot_zs / sum_z;
      for (std::size_t i = 0; i < n2; ++i) {
        z[i] += dz_hat;
        s[i] += ds_hat;
      }
    } else {
      // The least-squares seed vanished (y orthogonal to the range of A, as
      // happens for unreachable right-hand sides); the balancing shifts would
      // divide by zero, so start from the plain interior point instead.
      std::fill(z.begin(), z.end(), 1.0);
    }
  }

  std::vector<double> rb(m), rc(n2), d(n2), dsum(n);
  std::vector<double> dz_aff(n2), ds_aff(n2), dl_aff(m);
  std::vector<double> dz(n2), ds(n2), dl(m);
  std::vector<double> rel_rb_history;
  rel_rb_history.reserve(options.max_iterations + 1);

  // Best iterate seen so far, by the worst of the three relative residuals.
  // Late iterations can degrade once complementarity reaches the precision
  // floor, so breakdown exits report this snapshot rather than the current
  // point.
  double best_merit = HUGE_VAL, best_rel_rb = HUGE_VAL;
  std::vector<double> best_z, best_s;

  auto finalize = [&](SolveStatus status, int iterations) {
    for (std::size_t j = 0; j < n; ++j) result.solution[j] = z[j] - z[n + j];
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      obj += problem.weights[j] * std::abs(result.solution[j]);
    result.objective = obj;
    std::vector<double> az = num::matvec(A, result.solution);
    double rnorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = az[i] - problem.y[i];
      rnorm += r * r;
    }
    result.primal_residual = std::sqrt(rnorm) / std::max(1.0, ynorm);
    result.duality_gap = detail::dot(z, s) / (1.0 + std::abs(detail::dot(c, z)));
    result.iterations = iterations;
    result.status = status;
    return result;
  };

  for (int iter = 0; iter <= options.max_iterations; ++iter) {
    // Residuals of the KKT system.
    {
      const std::vector<double> az = split_apply(z);
      for (std::size_t i = 0; i < m; ++i) rb[i] = az[i] - problem.y[i];
      const std::vector<double> atl = adjoint_apply(lambda);
      for (std::size_t i = 0; i < n2; ++i) rc[i] = atl[i] + s[i] - c[i];
    }
    const double rel_rb = detail::norm2(rb) / std::max(1.0, ynorm);
    const double rel_rc = detail::norm2(rc) / std::max(1.0, cnorm);
    const double mu = detail::dot(z, s) / static_cast<double>(n2);
    const double rel_gap = detail::dot(z, s) / (1.0 + std::abs(detail::dot(c, z)));
    rel_rb_history.push_back(rel_rb);

    const double merit = std::max(rel_rb, std::max(rel_rc, rel_gap));
    if (merit < best_merit) {
      best_merit = merit;
      best_rel_rb = rel_rb;
      best_z = z;
      best_s = s;
    }

    if (rel_rb <= tol && rel_rc <= tol && rel_gap <= tol)
      return finalize(SolveStatus::optimal, iter);
    if (iter == options.max_iterations)
      return finalize(SolveStatus::max_iterations, iter);

    // Stalled equality residual while complementarity keeps shrinking means
    // y is (numerically) outside the range of A.
    if (iter >= 30 && rel_rb > 1e-3 &&
        rel_rb > 0.9 * rel_rb_history[static_cast<std::size_t>(iter) - 15])
      return finalize(SolveStatus::infeasible, iter);

    // Complementarity at the double-precision floor means no further progress
    // is possible; report the best point seen. Within the relaxed tolerance
    // that point is an optimum at the accuracy the normal equations admit,
    // while a large stuck equality residual means y is (numerically) outside
    // the range of A.
    if (mu < 1e-17 * (1.0 + std::abs(detail::dot(c, z)))) {
      z = best_z;
      s = best_s;
      const SolveStatus status = best_merit <= 1e-6 ? SolveStatus::optimal
                                 : best_rel_rb > 1e-3 ? SolveStatus::infeasible
                                                      : SolveStatus::max_iterations;
      return finalize(status, iter);
    }

    for (std::size_t i = 0; i < n2; ++i) d[i] = z[i] / s[i];
    for (std::size_t j = 0; j < n; ++j) dsum[j] = d[j] + d[n + j];

    num::DenseMatrix normal(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      const double* ri = A.row(i);
      for (std::size_t j = 0; j <= i; ++j) {
        const double* rj = A.row(j);
        double acc = 0.0;
        for (std::size_t k = 0; k < n; ++k) acc += ri[k] * rj[k] * dsum[k];
        normal(i, j) = normal(j, i) = acc;
      }
    }
    num::CholeskySystem chol(normal);

    // Solves the Newton system for a given complementarity right-hand side
    // rxs (elementwise target of z.s + delta): the normal-equation right
    // side is -rb + Abar (rxs/s - d.rc).
    auto newton_step = [&](const std::vector<double>& rxs_over_s, std::vector<double>& dz_out,
                           std::vector<double>& ds_out, std::vector<double>& dl_out) {
      std::vector<double> tmp(n2);
      for (std::size_t i = 0; i < n2; ++i) tmp[i] = rxs_over_s[i] - d[i] * rc[i];
      std::vector<double> rhs = split_apply(tmp);
      for (std::size_t i = 0; i < m; ++i) rhs[i] = -rb[i] + rhs[i];
      dl_out = chol.solve(std::move(rhs));
      const std::vector<double> atdl = adjoint_apply(dl_out);
      for (std::size_t i = 0; i < n2; ++i) {
        ds_out[i] = -rc[i] - atdl[i];
        dz_out[i] = -rxs_over_s[i] - d[i] * ds_out[i];
      }
    };

    // Predictor: pure Newton step toward complementarity zero (rxs = z.s,
    // so rxs/s = z).
    newton_step(z, dz_aff, ds_aff, dl_aff);
    const double alpha_aff_p = detail::step_to_boundary(z, dz_aff);
    const double alpha_aff_d = detail::step_to_boundary(s, ds_aff);
    double mu_aff = 0.0;
    for (std::size_t i = 0; i < n2; ++i)
      mu_aff += (z[i] + alpha_aff_p * dz_aff[i]) * (s[i] + alpha_aff_d * ds_aff[i]);
    mu_aff /= static_cast<double>(n2);
    const double ratio = std::clamp(mu_aff / mu, 0.0, 1.0);
    const double sigma = ratio * ratio * ratio;

    // Corrector: recenter toward sigma*mu and cancel the second-order term.
    std::vector<double> rxs_over_s(n2);
    for (std::size_t i = 0; i < n2; ++i)
      rxs_over_s[i] = z[i] + (dz_aff[i] * ds_aff[i] - sigma * mu) / s[i];
    newton_step(rxs_over_s, dz, ds, dl);

    const double eta = 0.99;
    const double alpha_p = std::min(1.0, eta * detail::step_to_boundary(z, dz));
    const double alpha_d = std::min(1.0, eta * detail::step_to_boundary(s, ds));
    for (std::size_t i = 0; i < n2; ++i) z[i] += alpha_p * dz[i];
    for (std::size_t i = 0; i < n2; ++i) s[i] += alpha_d * ds[i];
    for (std::size_t i = 0; i < m; ++i) lambda[i] += alpha_d * dl[i];
  }
  return finalize(SolveStatus::max_iterations, options.max_iterations); // unreachable
}

} // namespace rwl1::solver
