#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rwl1/core/root_finding.hpp"
#include "rwl1/core/special_functions.hpp"

namespace rwl1::thresholds {

// Two-group nonuniform sparsity model: a fraction gamma1 of coordinates
// carries weight 1 and is nonzero with density f1, the remaining gamma2
// carries weight omega and is nonzero with density f2.
struct WeightedThresholdQuery {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double f1 = 0.0;
  double f2 = 0.0;
  double omega = 1.0;

  void validate() const {
    if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0) || std::abs(gamma1 + gamma2 - 1.0) > 1e-12)
      throw std::invalid_argument("threshold query: gamma1, gamma2 must be nonnegative and sum to 1");
    if (!(f1 >= 0.0) || f1 > 1.0 || !(f2 >= 0.0) || f2 > 1.0)
      throw std::invalid_argument("threshold query: f1, f2 must lie in [0,1]");
    if (!(omega >= 1.0)) throw std::invalid_argument("threshold query: omega must be >= 1");
  }

  // The analysis is intended for queries that penalize the sparser group
  // more heavily; callers may warn when this ordering is violated.
  bool sparser_group_favored() const { return f1 >= f2; }

  double tau1_max() const { return gamma1 * (1.0 - f1); }
  double tau2_max() const { return gamma2 * (1.0 - f2); }
};

namespace detail {

inline void check_tau_box(double tau1, double tau2, const WeightedThresholdQuery& q) {
  const double slack = 1e-12;
  if (!(tau1 >= -slack) || tau1 > q.tau1_max() + slack || !(tau2 >= -slack) ||
      tau2 > q.tau2_max() + slack)
    throw std::domain_error("face exponent: (tau1, tau2) outside the admissible box");
}

inline std::string point_label(double tau1, double tau2) {
  return "(tau1=" + std::to_string(tau1) + ", tau2=" + std::to_string(tau2) + ")";
}

} // namespace detail

// Combinatorial exponent: counting rate of candidate face pairs. H is the
// bit entropy; the log 2 factor converts the total to nats. Conventions:
// H(0) = H(1) = 0 and a zero-width tau interval contributes nothing.
inline double psi_com(double tau1, double tau2, const WeightedThresholdQuery& q) {
  detail::check_tau_box(tau1, tau2, q);
  auto scaled_entropy = [](double tau, double width) {
    if (width <= 0.0) return 0.0;
    return width * num::bit_entropy(std::clamp(tau / width, 0.0, 1.0));
  };
  const double bits = tau1 + tau2 + scaled_entropy(tau1, q.tau1_max()) +
                      scaled_entropy(tau2, q.tau2_max()) +
                      (q.gamma1 > 0.0 ? q.gamma1 * num::bit_entropy(q.f1) : 0.0) +
                      (q.gamma2 > 0.0 ? q.gamma2 * num::bit_entropy(q.f2) : 0.0);
  return bits * std::log(2.0);
}

// External angle exponent. With c = (tau1 + gamma1 f1) + omega^2 (tau2 +
// gamma2 f2) and alpha_i the mass of the untouched zero coordinates in each
// group, x0 solves 2c = g(x) alpha1 / (x G(x)) + omega g(omega x) alpha2 /
// (x G(omega x)) over x > 0, where (g, G) is the scaled error-function pair.
// No zero coordinates left (alpha1 = alpha2 = 0) means no external faces and
// a zero exponent.
inline double psi_ext(double tau1, double tau2, const WeightedThresholdQuery& q) {
  detail::check_tau_box(tau1, tau2, q);
  const double w = q.omega;
  const double c = (tau1 + q.gamma1 * q.f1) + w * w * (tau2 + q.gamma2 * q.f2);
  // Alpha below the floor contributes O(1e-12) to the exponent but pushes
  // the root below any representable bracket, so it is treated as zero.
  constexpr double kAlphaFloor = 1e-13;
  const double alpha1_raw = std::max(q.tau1_max() - tau1, 0.0);
  const double alpha2_raw = std::max(q.tau2_max() - tau2, 0.0);
  const double alpha1 = alpha1_raw < kAlphaFloor ? 0.0 : alpha1_raw;
  const double alpha2 = alpha2_raw < kAlphaFloor ? 0.0 : alpha2_raw;
  if (alpha1 <= 0.0 && alpha2 <= 0.0) return 0.0;
  if (!(c > 0.0))
    throw std::domain_error("psi_ext: c must be positive at " + detail::point_label(tau1, tau2));

  auto lhs = [&](double x) {
    const num::ErfPair p1 = num::scaled_erf_pair(x);
    double v = 2.0 * c - p1.g * alpha1 / (x * p1.G);
    if (alpha2 > 0.0) {
      const num::ErfPair p2 = num::scaled_erf_pair(w * x);
      v -= w * p2.g * alpha2 / (x * p2.G);
    }
    return v;
  };

  // lhs rises from -infinity at 0+ to 2c > 0, so expanding the upper end
  // always brackets the root.
  num::Bracket bracket{1e-8, 1.0, 1e-13};
  try {
    bracket = num::expand_bracket(lhs, bracket);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("psi_ext: failed to bracket x0 at " +
                             detail::point_label(tau1, tau2));
  }
  const double x0 = num::find_root(lhs, bracket);

  double value = c * x0 * x0;
  if (alpha1 > 0.0) value -= alpha1 * std::log(num::scaled_erf_pair(x0).G);
  if (alpha2 > 0.0) value -= alpha2 * std::log(num::scaled_erf_pair(w * x0).G);
  return value;
}

// Internal angle exponent via the dual characterization of the shifted
// half-normal moment generating function. t = tau1 + tau2 = 0 contributes
// no internal angle and returns 0 by convention.
inline double psi_int(double tau1, double tau2, const WeightedThresholdQuery& q) {
  detail::check_tau_box(tau1, tau2, q);
  const double w = q.omega;
  const double t = tau1 + tau2;
  if (t <= 0.0) return 0.0;
  const double omega_prime = q.gamma1 * q.f1 + w * w * q.gamma2 * q.f2;
  if (!(omega_prime > 0.0))
    throw std::domain_error("psi_int: gamma1 f1 + omega^2 gamma2 f2 must be positive at " +
                            detail::point_label(tau1, tau2));
  const double b = (tau1 + w * w * tau2) / t;

  // Mhat(s) = -s / Q(s) with Q a tau-weighted mix of inverse Mills ratios.
  // On the negative axis Mhat increases from 0 toward 1/b, and the target
  // t / (t b + omega') sits strictly below 1/b, so a root exists.
  const double target = t / (t * b + omega_prime);
  auto mhat_minus_target = [&](double u) { // u = -s > 0
    const double s = -u;
    double mix = tau1 * num::inverse_mills(s);
    if (tau2 > 0.0) mix += w * tau2 * num::inverse_mills(w * s);
    const double q_of_s = mix / t;
    return u / q_of_s - target;
  };

  // Mhat(u)/u >= R(0) ~ 0.8 near zero, so a lower end at a tenth of the
  // target keeps Mhat below it even for targets under the default 1e-8.
  num::Bracket bracket{std::min(1e-8, 0.1 * target), 40.0, 1e-13};
  try {
    bracket = num::expand_bracket(mhat_minus_target, bracket);
  } catch (const std::invalid_argument&) {
    throw std::runtime_error("psi_int: failed to bracket s* at " +
                             detail::point_label(tau1, tau2));
  }
  const double u_star = num::find_root(mhat_minus_target, bracket);
  const double s_star = -u_star;

  // At the root, b - 1/Mhat(s*) = -omega'/t, giving y directly.
  const double y = -s_star * omega_prime / t;

  auto lambda1 = [](double s) {
    return 0.5 * s * s + std::log(2.0) + num::log_std_normal_cdf(s);
  };
  const double lambda_mix = (tau1 * lambda1(s_star) + tau2 * lambda1(w * s_star)) / t;
  const double lambda_star = s_star * y - lambda_mix;
  return (lambda_star + (t / (2.0 * omega_prime)) * y * y + std::log(2.0)) * t;
}

} // namespace rwl1::thresholds
