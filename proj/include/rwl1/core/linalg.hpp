#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwl1/core/dense_matrix.hpp"

namespace rwl1::num {

// In-place lower Cholesky factor of a symmetric positive definite matrix.
// Returns false when a pivot drops below the tolerance; callers retry with
// a regularized diagonal. The pivot test is relative to the diagonal scale
// so uniformly tiny (or huge) systems factor exactly like unit-scaled ones.
inline bool cholesky_factor(DenseMatrix& a, double pivot_tol = 1e-13) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky_factor: matrix must be square");
  const std::size_t n = a.rows;
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(j, j)));
  const double floor = pivot_tol * (scale > 0.0 ? scale : 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    if (!(diag > floor)) return false;
    const double ljj = std::sqrt(diag);
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / ljj;
    }
  }
  // Zero the strictly upper triangle so the factor is usable as-is.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 0.0;
  return true;
}

// Solves L L^T x = b given the lower factor from cholesky_factor.
inline std::vector<double> cholesky_solve(const DenseMatrix& l, std::vector<double> b) {
  const std::size_t n = l.rows;
  if (b.size() != n) throw std::invalid_argument("cholesky_solve: size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * b[k];
    b[i] = v / l(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * b[k];
    b[ii] = v / l(ii, ii);
  }
  return b;
}

// Lower Cholesky factor that never fails: a pivot at or below the relative
// floor is replaced by a huge value, so solves against the factor return
// (essentially) zero in the deficient directions instead of garbage. This is
// the standard guard for normal-equation systems that go numerically
// rank-deficient late in an interior-point run, where the useful part of the
// Newton direction lives in the well-conditioned subspace.
inline void cholesky_factor_guarded(DenseMatrix& a, double pivot_tol = 1e-13) {
  if (a.rows != a.cols) throw std::invalid_argument("cholesky_factor_guarded: matrix must be square");
  const std::size_t n = a.rows;
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(j, j)));
  const double floor = pivot_tol * (scale > 0.0 ? scale : 1.0);
  constexpr double kHugePivot = 1e64;
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    const double ljj = (diag > floor) ? std::sqrt(diag) : kHugePivot;
    a(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / ljj;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = 0.0;
}

// Factors a copy of the symmetric matrix for normal-equation solves. The
// fast path is the strict factorization; if that fails the guarded one with
// pivot replacement is used, so construction always succeeds.
struct CholeskySystem {
  DenseMatrix matrix;
  DenseMatrix factor;
  bool guarded = false;

  explicit CholeskySystem(const DenseMatrix& a) : matrix(a), factor(a) {
    if (cholesky_factor(factor)) return;
    factor = a;
    cholesky_factor_guarded(factor);
    guarded = true;
  }

  // Factored solve followed by iterative refinement against the unshifted
  // matrix. Refinement recovers the digits lost to the diagonal shift and to
  // squared conditioning; it stops as soon as the residual no longer shrinks,
  // which keeps near-singular systems from oscillating.
  std::vector<double> solve(std::vector<double> b) const {
    const std::size_t n = matrix.rows;
    std::vector<double> x = cholesky_solve(factor, b);
    auto resid_norm2 = [&](const std::vector<double>& xs, std::vector<double>& r) {
      r = matvec(matrix, xs);
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        r[i] = b[i] - r[i];
        acc += r[i] * r[i];
      }
      return acc;
    };
    std::vector<double> r(n), trial(n);
    double rn = resid_norm2(x, r);
    double bn = 0.0;
    for (double v : b) bn += v * v;
    for (int pass = 0; pass < 3 && rn > 1e-28 * (bn + 1.0); ++pass) {
      const std::vector<double> corr = cholesky_solve(factor, r);
      trial = x;
      for (std::size_t i = 0; i < n; ++i) trial[i] += corr[i];
      std::vector<double> r_next(n);
      const double rn_next = resid_norm2(trial, r_next);
      if (!(rn_next < rn)) break;
      x.swap(trial);
      r.swap(r_next);
      rn = rn_next;
    }
    return x;
  }
};

// Dense LU solve with partial pivoting for the small square systems in the
// enumeration oracle. Returns false when the matrix is numerically singular.
inline bool lu_solve(DenseMatrix a, std::vector<double> b, std::vector<double>& x,
                     double pivot_tol = 1e-11) {
  if (a.rows != a.cols || b.size() != a.rows)
    throw std::invalid_argument("lu_solve: size mismatch");
  const std::size_t n = a.rows;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t i = col + 1; i < n; ++i)
      if (std::abs(a(i, col)) > std::abs(a(pivot, col))) pivot = i;
    if (std::abs(a(pivot, col)) < pivot_tol) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      std::swap(b[pivot], b[col]);
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      const double f = a(i, col) * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col + 1; j < n; ++j) a(i, j) -= f * a(col, j);
      b[i] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) v -= a(ii, j) * x[j];
    x[ii] = v / a(ii, ii);
  }
  return true;
}

} // namespace rwl1::num
