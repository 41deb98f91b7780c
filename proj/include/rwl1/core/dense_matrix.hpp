#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rwl1/core/random_stream.hpp"

namespace rwl1::num {

// Row-major dense matrix. Plain storage; algorithms live with their users.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

  const double* row(std::size_t i) const { return entries.data() + i * cols; }
  double* row(std::size_t i) { return entries.data() + i * cols; }
};

inline DenseMatrix gaussian_matrix(std::size_t m, std::size_t n, RandomStream& stream) {
  if (m < 1 || n < 1) throw std::invalid_argument("gaussian_matrix: dimensions must be positive");
  DenseMatrix a(m, n);
  for (double& v : a.entries) v = stream.normal();
  return a;
}

inline std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
  if (x.size() != a.cols) throw std::invalid_argument("matvec: size mismatch");
  std::vector<double> y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* r = a.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) acc += r[j] * x[j];
    y[i] = acc;
  }
  return y;
}

inline std::vector<double> matvec_transposed(const DenseMatrix& a, const std::vector<double>& y) {
  if (y.size() != a.rows) throw std::invalid_argument("matvec_transposed: size mismatch");
  std::vector<double> x(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double* r = a.row(i);
    const double yi = y[i];
    for (std::size_t j = 0; j < a.cols; ++j) x[j] += r[j] * yi;
  }
  return x;
}

} // namespace rwl1::num
