#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "rwl1/core/random_stream.hpp"
#include "rwl1/core/root_finding.hpp"
#include "rwl1/core/special_functions.hpp"

namespace rwl1::sig {

enum class DistributionKind { gaussian, uniform_pm1, rayleigh_two_sided, chi_two_sided };

// Symmetric nonzero-magnitude laws for the planted signal entries. Each law
// exposes the pieces the analysis layer needs: pdf, the upper tail mass
// Q_f(x) = P(X > x), the tail quantile Psi_f (inverse of Q_f on x >= 0),
// the absolute first moment, and sampling.
//
// chi_two_sided(d) has density |x|^{d-1} exp(-x^2 / (2 s^2)) /
// (2^{d/2} s^d Gamma(d/2)) on the real line; d = 2 recovers the two-sided
// Rayleigh law. Only even d has the closed-form tail used here, and the
// experiment exposes d = 4 and d = 6.
class Distribution {
 public:
  static Distribution gaussian(double scale = 1.0) {
    return Distribution(DistributionKind::gaussian, 0, scale);
  }
  static Distribution uniform_pm1() {
    return Distribution(DistributionKind::uniform_pm1, 0, 1.0);
  }
  static Distribution rayleigh_two_sided(double scale = 1.0) {
    return Distribution(DistributionKind::rayleigh_two_sided, 2, scale);
  }
  static Distribution chi_two_sided(int dof, double scale = 1.0) {
    return Distribution(DistributionKind::chi_two_sided, dof, scale);
  }

  DistributionKind kind() const { return kind_; }
  int dof() const { return dof_; }
  double scale() const { return scale_; }

  // Order of the first nonvanishing derivative of the pdf at 0. The pdf
  // behaves like c |x|^r near the origin; the support-overlap analysis only
  // applies when this is finite and the pdf is bounded.
  int derivative_order_at_zero() const {
    switch (kind_) {
      case DistributionKind::gaussian: return 0;
      case DistributionKind::uniform_pm1: return 0;
      case DistributionKind::rayleigh_two_sided: return 1;
      case DistributionKind::chi_two_sided: return dof_ - 1;
    }
    throw std::logic_error("distribution: unreachable");
  }

  double pdf(double x) const {
    const double ax = std::abs(x);
    switch (kind_) {
      case DistributionKind::gaussian:
        return num::std_normal_pdf(ax / scale_) / scale_;
      case DistributionKind::uniform_pm1:
        return ax <= 1.0 ? 0.5 : 0.0;
      case DistributionKind::rayleigh_two_sided:
      case DistributionKind::chi_two_sided: {
        const double u = ax / scale_;
        const double logc = -0.5 * dof_ * std::log(2.0) - std::lgamma(0.5 * dof_)
                            - std::log(scale_);
        const double logpdf = logc + (dof_ - 1) * std::log(u) - 0.5 * u * u;
        if (ax == 0.0) return dof_ > 1 ? 0.0 : std::exp(logc);
        return std::exp(logpdf);
      }
    }
    throw std::logic_error("distribution: unreachable");
  }

  // Upper tail mass P(X > x) for x >= 0. By symmetry P(|X| > x) = 2 tail_q(x).
  double tail_q(double x) const {
    if (x < 0.0) throw std::domain_error("tail_q: requires x >= 0");
    switch (kind_) {
      case DistributionKind::gaussian:
        return num::std_normal_tail(x / scale_);
      case DistributionKind::uniform_pm1:
        return x >= 1.0 ? 0.0 : 0.5 * (1.0 - x);
      case DistributionKind::rayleigh_two_sided:
      case DistributionKind::chi_two_sided: {
        // Even dof: 2 tail_q(x) = exp(-u) sum_{j<d/2} u^j / j!, u = x^2/(2 s^2).
        const double u = 0.5 * (x / scale_) * (x / scale_);
        double sum = 0.0;
        double term = 1.0;
        for (int j = 0; j < dof_ / 2; ++j) {
          if (j > 0) term *= u / j;
          sum += term;
        }
        return 0.5 * std::exp(-u) * sum;
      }
    }
    throw std::logic_error("distribution: unreachable");
  }

  // Tail quantile: the x >= 0 with tail_q(x) = q, for q in (0, 1/2].
  double quantile_psi(double q) const {
    if (!(q > 0.0) || q > 0.5)
      throw std::domain_error("quantile_psi: requires q in (0, 1/2]");
    if (q == 0.5) return 0.0;
    switch (kind_) {
      case DistributionKind::gaussian:
        return -scale_ * num::std_normal_quantile(q);
      case DistributionKind::uniform_pm1:
        return 1.0 - 2.0 * q;
      case DistributionKind::rayleigh_two_sided:
        // d = 2: tail_q(x) = exp(-x^2/(2 s^2)) / 2 exactly.
        return scale_ * std::sqrt(-2.0 * std::log(2.0 * q));
      case DistributionKind::chi_two_sided: {
        // tail_q decreases from 1/2 at 0, so the root is bracketed once the
        // upper end is pushed past it. The d = 2 quantile under-shoots the
        // heavier chi tails and seeds the expansion.
        auto f = [&](double x) { return tail_q(x) - q; };
        const double seed = scale_ * std::sqrt(-2.0 * std::log(2.0 * q));
        num::Bracket b{0.0, std::max(seed, 1e-3), 1e-13};
        b = num::expand_bracket(f, b);
        return num::find_root(f, b);
      }
    }
    throw std::logic_error("distribution: unreachable");
  }

  double abs_mean() const {
    switch (kind_) {
      case DistributionKind::gaussian:
        return scale_ * num::kSqrt2 / num::kSqrtPi;
      case DistributionKind::uniform_pm1:
        return 0.5;
      case DistributionKind::rayleigh_two_sided:
      case DistributionKind::chi_two_sided:
        // E|X| = s sqrt(2) Gamma((d+1)/2) / Gamma(d/2).
        return scale_ * num::kSqrt2
               * std::exp(std::lgamma(0.5 * (dof_ + 1)) - std::lgamma(0.5 * dof_));
    }
    throw std::logic_error("distribution: unreachable");
  }

  double sample(num::RandomStream& stream) const {
    switch (kind_) {
      case DistributionKind::gaussian:
        return scale_ * stream.normal();
      case DistributionKind::uniform_pm1:
        return 2.0 * stream.uniform01() - 1.0;
      case DistributionKind::rayleigh_two_sided:
      case DistributionKind::chi_two_sided: {
        // |X|/s is chi(d): the norm of d independent standard normals.
        double sq = 0.0;
        for (int j = 0; j < dof_; ++j) {
          const double g = stream.normal();
          sq += g * g;
        }
        const double sign = stream.uniform01() < 0.5 ? -1.0 : 1.0;
        return sign * scale_ * std::sqrt(sq);
      }
    }
    throw std::logic_error("distribution: unreachable");
  }

  std::string name() const {
    switch (kind_) {
      case DistributionKind::gaussian: return "gaussian";
      case DistributionKind::uniform_pm1: return "uniform";
      case DistributionKind::rayleigh_two_sided: return "rayleigh";
      case DistributionKind::chi_two_sided: return "chi" + std::to_string(dof_);
    }
    throw std::logic_error("distribution: unreachable");
  }

  static Distribution from_name(const std::string& name) {
    if (name == "gaussian") return gaussian();
    if (name == "uniform") return uniform_pm1();
    if (name == "rayleigh") return rayleigh_two_sided();
    if (name == "chi4") return chi_two_sided(4);
    if (name == "chi6") return chi_two_sided(6);
    throw std::invalid_argument("unknown distribution: " + name);
  }

 private:
  Distribution(DistributionKind kind, int dof, double scale)
      : kind_(kind), dof_(dof), scale_(scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("distribution: scale must be positive");
    if (kind == DistributionKind::chi_two_sided) {
      if (dof < 2 || dof % 2 != 0)
        throw std::invalid_argument("chi_two_sided: dof must be even and >= 2");
    }
  }

  DistributionKind kind_;
  int dof_;
  double scale_;
};

} // namespace rwl1::sig
