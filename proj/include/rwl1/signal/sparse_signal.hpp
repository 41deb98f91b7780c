#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rwl1/core/random_stream.hpp"
#include "rwl1/signal/distribution.hpp"

namespace rwl1::sig {

struct SparseSignal {
  std::size_t n = 0;
  std::vector<std::size_t> support; // strictly increasing indices
  std::vector<double> dense;        // length n, zero off the support

  std::size_t sparsity() const { return support.size(); }
};

// Plants k nonzeros on a uniformly random size-k subset of {0, ..., n-1},
// with magnitudes drawn i.i.d. from dist. k = 0 yields the zero signal.
inline SparseSignal generate_sparse(std::size_t n, std::size_t k, const Distribution& dist,
                                    num::RandomStream& stream) {
  if (n == 0) throw std::invalid_argument("generate_sparse: n must be positive");
  if (k > n) throw std::invalid_argument("generate_sparse: k must not exceed n");

  SparseSignal s;
  s.n = n;
  s.dense.assign(n, 0.0);

  // Partial Fisher-Yates: after k swaps the first k slots hold the subset.
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + stream.uniform_below(n - i);
    std::swap(perm[i], perm[j]);
  }
  s.support.assign(perm.begin(), perm.begin() + k);
  std::sort(s.support.begin(), s.support.end());

  for (std::size_t idx : s.support) s.dense[idx] = dist.sample(stream);
  return s;
}

} // namespace rwl1::sig
