#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/core/linalg.hpp"
#include "rwl1/solver/basis_pursuit.hpp"

namespace rwl1::solver {

// Exact oracle for tiny instances: an optimal basic feasible solution of the
// split LP exists whenever the problem is solvable, so enumerating every
// m-column basis of [A, -A] and keeping the cheapest feasible one is exact
// up to linear-solve conditioning. Enumeration order is lexicographic over
// column index sets; among objective ties the first basis found wins.
inline SolveResult brute_force_weighted_l1(const BasisPursuitProblem& problem) {
  problem.validate();
  const std::size_t m = problem.A.rows;
  const std::size_t n = problem.A.cols;
  if (n > 10 || m > 8)
    throw std::invalid_argument("brute force oracle: requires n <= 10 and m <= 8");

  const std::size_t cols = 2 * n;
  auto column_entry = [&](std::size_t i, std::size_t j) {
    return j < n ? problem.A(i, j) : -problem.A(i, j - n);
  };
  auto column_weight = [&](std::size_t j) {
    return problem.weights[j < n ? j : j - n];
  };

  SolveResult best;
  best.solution.assign(n, 0.0);
  best.objective = std::numeric_limits<double>::infinity();
  best.status = SolveStatus::infeasible;

  if (cols < m) return best; // no basis of full size exists

  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = i;

  num::DenseMatrix b_mat(m, m);
  std::vector<double> xb;
  const double feas_tol = 1e-9;

  for (;;) {
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t col = 0; col < m; ++col)
        b_mat(i, col) = column_entry(i, basis[col]);

    if (num::lu_solve(b_mat, problem.y, xb)) {
      bool feasible = true;
      double obj = 0.0;
      for (std::size_t col = 0; col < m; ++col) {
        if (xb[col] < -feas_tol) { feasible = false; break; }
        obj += column_weight(basis[col]) * std::max(xb[col], 0.0);
      }
      if (feasible && obj < best.objective - 1e-12) {
        std::vector<double> z(cols, 0.0);
        for (std::size_t col = 0; col < m; ++col) z[basis[col]] = std::max(xb[col], 0.0);
        for (std::size_t j = 0; j < n; ++j) best.solution[j] = z[j] - z[n + j];
        best.objective = obj;
        best.status = SolveStatus::optimal;
      }
    }

    // Next lexicographic m-combination of {0, ..., cols-1}.
    std::size_t pos = m;
    while (pos > 0 && basis[pos - 1] == cols - m + pos - 1) --pos;
    if (pos == 0) break;
    ++basis[pos - 1];
    for (std::size_t i = pos; i < m; ++i) basis[i] = basis[i - 1] + 1;
  }

  if (best.status == SolveStatus::optimal) {
    std::vector<double> az = num::matvec(problem.A, best.solution);
    double rnorm = 0.0, ynorm = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = az[i] - problem.y[i];
      rnorm += r * r;
      ynorm += problem.y[i] * problem.y[i];
    }
    best.primal_residual = std::sqrt(rnorm) / std::max(1.0, std::sqrt(ynorm));
    // Recompute the objective from the assembled solution so cancellation
    // between a column and its negated twin cannot misreport it.
    double obj = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      obj += problem.weights[j] * std::abs(best.solution[j]);
    best.objective = obj;
  }
  return best;
}

} // namespace rwl1::solver
