#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rwl1/core/quadrature.hpp"
#include "rwl1/core/random_stream.hpp"
#include "rwl1/core/special_functions.hpp"
#include "rwl1/signal/distribution.hpp"

namespace rwl1::analysis {

// Limit of (sum of the M largest of N i.i.d. standard normal magnitudes)
// divided by the total sum, as N grows with M/N = ratio. Closed form
// exp(-Psi(ratio/2)^2 / 2) with Psi the upper-tail normal quantile.
inline double orderstat_ratio_gaussian(double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0)
    throw std::domain_error("orderstat_ratio_gaussian: ratio must lie in (0,1]");
  if (ratio == 1.0) return 1.0;
  const double psi = -num::std_normal_quantile(0.5 * ratio);
  return std::exp(-0.5 * psi * psi);
}

// Same limit for any admissible symmetric magnitude law:
// 1 - 2 * integral_0^{Psi_f(ratio/2)} x f(x) dx / E|X|.
inline double orderstat_ratio_general(const sig::Distribution& dist, double ratio) {
  if (!(ratio > 0.0) || ratio > 1.0)
    throw std::domain_error("orderstat_ratio_general: ratio must lie in (0,1]");
  if (ratio == 1.0) return 1.0;
  const double upper = dist.quantile_psi(0.5 * ratio);
  if (upper <= 0.0) return 1.0;
  const double small_mass =
      num::integrate([&dist](double x) { return x * dist.pdf(x); }, 0.0, upper, 1e-13);
  return 1.0 - 2.0 * small_mass / dist.abs_mean();
}

// Draws N magnitudes and returns (sum of the M largest) / (sum of all).
inline double empirical_orderstat_ratio(const sig::Distribution& dist, std::size_t N,
                                        std::size_t M, num::RandomStream& stream) {
  if (M < 1 || M > N)
    throw std::invalid_argument("empirical_orderstat_ratio: requires 1 <= M <= N");
  std::vector<double> mags(N);
  for (double& v : mags) v = std::abs(dist.sample(stream));
  std::nth_element(mags.begin(), mags.begin() + (N - M), mags.end());
  double total = 0.0, top = 0.0;
  for (std::size_t i = 0; i < N; ++i) total += mags[i];
  for (std::size_t i = N - M; i < N; ++i) top += mags[i];
  return top / total;
}

} // namespace rwl1::analysis
