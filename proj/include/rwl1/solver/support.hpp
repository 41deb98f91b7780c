#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rwl1::solver {

// Indices of the k largest-magnitude entries, ties broken toward the lower
// index, returned in ascending index order.
inline std::vector<std::size_t> k_support(const std::vector<double>& x, std::size_t k) {
  if (k > x.size()) throw std::invalid_argument("k_support: k exceeds vector length");
  std::vector<std::size_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                    [&x](std::size_t a, std::size_t b) {
                      const double ma = std::abs(x[a]);
                      const double mb = std::abs(x[b]);
                      if (ma != mb) return ma > mb;
                      return a < b;
                    });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

// |a ∩ b| for two ascending index sets.
inline std::size_t intersection_size(const std::vector<std::size_t>& a,
                                     const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else { ++count; ++ia; ++ib; }
  }
  return count;
}

} // namespace rwl1::solver
