#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rwl1/core/special_functions.hpp"
#include "rwl1/signal/sparse_signal.hpp"

namespace rwl1::analysis {

// W(x, lambda): size of the largest subset of nonzero entries of x whose
// l1 mass is at most lambda. Greedy over ascending magnitudes is exact,
// because the smallest entries maximize the count at any mass budget.
inline std::size_t compute_W(const sig::SparseSignal& x, double lambda) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("compute_W: lambda must be nonnegative");
  std::vector<double> mags;
  mags.reserve(x.support.size());
  for (std::size_t idx : x.support) {
    const double m = std::abs(x.dense[idx]);
    if (m > 0.0) mags.push_back(m);
  }
  std::sort(mags.begin(), mags.end());
  // The budget comparison tolerates summation roundoff: a subset whose exact
  // mass equals lambda must not be dropped because ascending-order partial
  // sums differ from the caller's total by a few ulps. Over-counting by the
  // slack only loosens the downstream miss bound k - W, never tightens it.
  const double budget = lambda + 1e-12 * std::max(1.0, lambda);
  double sum = 0.0;
  std::size_t count = 0;
  for (double m : mags) {
    sum += m;
    if (sum > budget) break;
    ++count;
  }
  // Exactly-zero planted values keep index-set semantics: they cost nothing,
  // so they always fit in the subset.
  return count + (x.support.size() - mags.size());
}

// High-probability upper bound on W(x, alpha * ||x||_1) / k for large
// gaussian sparse x: 1 - 2Q(sqrt(-2 log(1-alpha))).
inline double coverable_fraction_bound(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("coverable_fraction_bound: alpha must lie in (0,1)");
  const double arg = std::sqrt(-2.0 * std::log1p(-alpha));
  return 1.0 - 2.0 * num::std_normal_tail(arg);
}

} // namespace rwl1::analysis
