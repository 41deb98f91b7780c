#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "rwl1/analysis/robustness.hpp"
#include "rwl1/signal/distribution.hpp"
#include "rwl1/thresholds/face_exponents.hpp"

namespace rwl1::thresholds {

struct ThresholdSearchConfig {
  int tau_grid = 200;      // lattice points per tau axis
  double delta_tol = 1e-4; // tolerance on the returned measurement ratio
  int refine_levels = 2;   // minimum local refinement rounds around extrema

  void validate() const {
    if (tau_grid < 50) throw std::invalid_argument("threshold config: tau_grid must be >= 50");
    if (!(delta_tol > 0.0)) throw std::invalid_argument("threshold config: delta_tol must be positive");
    if (refine_levels < 0) throw std::invalid_argument("threshold config: refine_levels must be >= 0");
  }
};

struct SectionalResult {
  double value = 1.0;
  bool found = false;
};

namespace detail {

// Net exponent at one tau point; recovery at ratio delta needs this negative
// throughout the region tau1 + tau2 > delta - (gamma1 f1 + gamma2 f2).
//
// The three terms obey an exact balance: the supremum of the net exponent
// over the whole tau box equals the support-choice entropy
// (gamma1 H(f1) + gamma2 H(f2)) ln 2. In particular the supremum is exactly
// zero when f1, f2 are both 0 or 1, attained at a single tangency point, so
// threshold extraction must locate the zero level set geometrically instead
// of sign-testing lattice values.
inline double net_exponent(double tau1, double tau2, const WeightedThresholdQuery& q) {
  return psi_com(tau1, tau2, q) - psi_int(tau1, tau2, q) - psi_ext(tau1, tau2, q);
}

struct PeakPoint {
  double value = -std::numeric_limits<double>::infinity();
  double tau1 = 0.0;
  double tau2 = 0.0;
};

// Polishes a local maximum of the net exponent with shrinking 7x7 stencils,
// clipped to the tau box only. Runs at least min_rounds and continues until
// the stencil span falls below span_floor.
inline PeakPoint polish_peak(PeakPoint p, double span1, double span2,
                             const WeightedThresholdQuery& q, int min_rounds,
                             double span_floor = 1e-8) {
  const double t1_max = q.tau1_max();
  const double t2_max = q.tau2_max();
  for (int round = 0; round < 40; ++round) {
    if (round >= min_rounds && span1 < span_floor && span2 < span_floor) break;
    PeakPoint next = p;
    for (int i = -3; i <= 3; ++i) {
      for (int j = -3; j <= 3; ++j) {
        if (i == 0 && j == 0) continue;
        const double t1 = std::clamp(p.tau1 + i * span1 / 3.0, 0.0, t1_max);
        const double t2 = std::clamp(p.tau2 + j * span2 / 3.0, 0.0, t2_max);
        const double v = net_exponent(t1, t2, q);
        if (v > next.value) next = PeakPoint{v, t1, t2};
      }
    }
    p = next;
    span1 /= 3.0;
    span2 /= 3.0;
  }
  return p;
}

// Lattice axis over [0, tmax]; a zero-width axis collapses to the single
// point 0 with cell size 0.
inline void build_axis(double tmax, int grid, std::vector<double>& axis, double& cell) {
  if (tmax <= 0.0) {
    axis.assign(1, 0.0);
    cell = 0.0;
    return;
  }
  axis.resize(grid);
  cell = tmax / (grid - 1);
  for (int i = 0; i < grid; ++i) axis[i] = tmax * i / static_cast<double>(grid - 1);
}

// Maximum of the net exponent along the segment tau1 + tau2 = csum inside
// the tau box: dense sampling plus golden-section polish around the best
// sample.
inline double segment_max(const WeightedThresholdQuery& q, double csum, int samples) {
  const double t1_max = q.tau1_max();
  const double t2_max = q.tau2_max();
  const double lo = std::max(0.0, csum - t2_max);
  const double hi = std::min(t1_max, csum);
  if (hi < lo) return -std::numeric_limits<double>::infinity();
  auto eval = [&](double t1) { return net_exponent(t1, csum - t1, q); };
  if (hi - lo < 1e-14) return eval(lo);

  int best = 0;
  double best_v = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= samples; ++i) {
    const double v = eval(lo + (hi - lo) * i / samples);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best - 1) / samples;
  double b = lo + (hi - lo) * std::min(samples, best + 1) / samples;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  for (int it = 0; it < 80 && (b - a) > 1e-11; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = eval(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = eval(x1);
    }
  }
  return std::max(best_v, std::max(f1, f2));
}

struct LatticeScan {
  PeakPoint peak;                // best lattice point anywhere in the box
  double cell1 = 0.0, cell2 = 0.0;
  double superlevel_csum = -1.0; // largest tau1+tau2 among points with E >= 0
};

inline LatticeScan scan_lattice(const WeightedThresholdQuery& q, const ThresholdSearchConfig& cfg) {
  LatticeScan scan;
  std::vector<double> tau1s, tau2s;
  build_axis(q.tau1_max(), cfg.tau_grid, tau1s, scan.cell1);
  build_axis(q.tau2_max(), cfg.tau_grid, tau2s, scan.cell2);
  for (double t1 : tau1s) {
    for (double t2 : tau2s) {
      const double v = net_exponent(t1, t2, q);
      if (v > scan.peak.value) scan.peak = PeakPoint{v, t1, t2};
      if (v >= 0.0) scan.superlevel_csum = std::max(scan.superlevel_csum, t1 + t2);
    }
  }
  return scan;
}

// Largest tau1 + tau2 on the set {E >= 0}, located by walking the segment
// maximum h(c) = max{E : tau1 + tau2 = c} upward from a point inside the set
// and bisecting the final sign change. A short sweep beyond the detected
// boundary guards against disconnected superlevel components.
inline double superlevel_reach(const WeightedThresholdQuery& q, const ThresholdSearchConfig& cfg,
                               double c_start) {
  const double c_max = q.tau1_max() + q.tau2_max();
  const int samples = std::max(48, cfg.tau_grid / 4);
  auto h = [&](double c) { return segment_max(q, c, samples); };

  double lo = c_start;
  if (h(c_max) >= 0.0) return c_max;
  const double step = std::max(4.0 * cfg.delta_tol, (c_max - lo) / 48.0);
  double hi = c_max;
  for (double c = lo + step; c < c_max; c += step) {
    if (h(c) >= 0.0) {
      lo = c;
    } else {
      hi = c;
      break;
    }
  }
  while (hi - lo > 0.25 * cfg.delta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) >= 0.0) lo = mid;
    else hi = mid;
  }
  // Revival sweep: if the set resumes past the detected edge, restart there.
  for (int i = 1; i <= 16; ++i) {
    const double c = hi + (c_max - hi) * i / 16.0;
    if (c <= hi || c > c_max) continue;
    if (h(c) >= 0.0) return superlevel_reach(q, cfg, c);
  }
  return lo;
}

} // namespace detail

// Smallest measurement ratio delta at which the net exponent is strictly
// negative for every admissible tau with tau1 + tau2 > delta - (gamma1 f1 +
// gamma2 f2); equivalently gamma1 f1 + gamma2 f2 plus the largest tau1 + tau2
// on the set {E >= 0}. When the supremum of E over the box is exactly zero
// (f1, f2 both at {0,1}) that set is the single tangency point and its
// position is used directly. Results are cached per (query, config).
inline SectionalResult delta_sectional(const WeightedThresholdQuery& q,
                                       const ThresholdSearchConfig& cfg = {}) {
  q.validate();
  cfg.validate();

  const double gf = q.gamma1 * q.f1 + q.gamma2 * q.f2;
  if (gf < 1e-12) return SectionalResult{0.0, true}; // empty support: nothing to recover
  if (q.tau1_max() <= 0.0 && q.tau2_max() <= 0.0)
    return SectionalResult{std::min(gf, 1.0), true}; // fully dense support

  using Key = std::tuple<double, double, double, double, double, int, double, int>;
  static std::mutex cache_mutex;
  static std::map<Key, SectionalResult> cache;
  const Key key{q.gamma1, q.gamma2, q.f1, q.f2, q.omega,
                cfg.tau_grid, cfg.delta_tol, cfg.refine_levels};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  const detail::LatticeScan scan = detail::scan_lattice(q, cfg);
  const detail::PeakPoint peak = detail::polish_peak(
      scan.peak, std::max(scan.cell1, 1e-6), std::max(scan.cell2, 1e-6), q, cfg.refine_levels);

  SectionalResult result;
  if (peak.value >= 0.0) {
    const double c0 = std::max(scan.superlevel_csum, peak.tau1 + peak.tau2);
    const double reach = detail::superlevel_reach(q, cfg, c0);
    result = SectionalResult{std::clamp(gf + reach, 0.0, 1.0), true};
  } else if (peak.value > -1e-3) {
    // Tangent case: the zero level set collapses to the polished peak.
    result = SectionalResult{std::clamp(gf + peak.tau1 + peak.tau2, 0.0, 1.0), true};
  } else {
    // The exponent balance failed to touch zero anywhere: report the vacuous
    // ratio with the not-found flag rather than a silent answer.
    result = SectionalResult{1.0, false};
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, result);
  return result;
}

namespace detail {

// Streaming form of the recovery condition at a fixed delta: true when the
// net exponent is negative throughout the region tau1 + tau2 > excess.
// Fails fast on any nonnegative lattice value inside the region; otherwise
// polishes the regional worst point without the region clip and classifies
// the resulting extremum by position, which stays exact in the tangent case
// where the extremal value is an exact zero.
inline bool condition_holds_at(const WeightedThresholdQuery& q, double delta,
                               const ThresholdSearchConfig& cfg) {
  const double excess = delta - (q.gamma1 * q.f1 + q.gamma2 * q.f2);
  std::vector<double> tau1s, tau2s;
  double cell1 = 0.0, cell2 = 0.0;
  build_axis(q.tau1_max(), cfg.tau_grid, tau1s, cell1);
  build_axis(q.tau2_max(), cfg.tau_grid, tau2s, cell2);

  PeakPoint worst;
  bool region_nonempty = false;
  for (double t1 : tau1s) {
    for (double t2 : tau2s) {
      if (!(t1 + t2 > excess)) continue;
      region_nonempty = true;
      const double v = net_exponent(t1, t2, q);
      if (v >= 1e-9) return false;
      if (v > worst.value) worst = PeakPoint{v, t1, t2};
    }
  }
  if (!region_nonempty) return true;

  const PeakPoint p = polish_peak(worst, std::max(cell1, 1e-6), std::max(cell2, 1e-6), q,
                                  cfg.refine_levels);
  if (p.value > -1e-9) return p.tau1 + p.tau2 <= excess + 1e-9;
  return true;
}

// f2 implied by distributing the whole sparsity budget gamma1 across the
// two groups when the favored group has density f1.
inline double budget_f2(double gamma1, double gamma2, double f1) {
  if (gamma2 <= 0.0) return 0.0;
  return std::clamp(gamma1 * (1.0 - f1) / gamma2, 0.0, 1.0);
}

inline std::vector<double> f1_scan_grid(double f1_min, int points = 50) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = f1_min + (1.0 - f1_min) * i / static_cast<double>(points - 1);
  return grid;
}

} // namespace detail

// Largest l1 recoverable sparsity fraction at measurement ratio delta,
// obtained by inverting the sectional threshold of the uniform-weight query
// (mu, 1-mu, 1, 0, 1), which is increasing in mu. Cached per (delta, config).
inline double weak_threshold_mu(double delta, const ThresholdSearchConfig& cfg = {}) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::domain_error("weak_threshold_mu: delta must lie in (0,1)");
  cfg.validate();

  using Key = std::tuple<double, int, double, int>;
  static std::mutex cache_mutex;
  static std::map<Key, double> cache;
  const Key key{delta, cfg.tau_grid, cfg.delta_tol, cfg.refine_levels};
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  auto recoverable = [&](double mu) {
    WeightedThresholdQuery q{mu, 1.0 - mu, 1.0, 0.0, 1.0};
    return delta_sectional(q, cfg).value <= delta;
  };
  double lo = 1e-4;
  if (!recoverable(lo)) return 0.0; // delta below the smallest detectable ratio
  double hi = std::min(delta, 1.0 - 1e-4);
  if (recoverable(hi)) {
    lo = hi;
  } else {
    while (hi - lo > 1e-3) {
      const double mid = 0.5 * (lo + hi);
      if (recoverable(mid)) lo = mid;
      else hi = mid;
    }
  }

  std::lock_guard<std::mutex> lock(cache_mutex);
  cache.emplace(key, lo);
  return lo;
}

// Worst-case sectional threshold over all support splits consistent with a
// support-overlap guarantee of at least f1_min: the adversary places the
// true support so that the favored group catches only f1' >= f1_min of it,
// with the remainder forced into the penalized group by the size budget.
inline double lambda_c(double k_frac, double f1_min, double omega,
                       const ThresholdSearchConfig& cfg = {}) {
  if (!(k_frac > 0.0) || !(k_frac < 1.0))
    throw std::domain_error("lambda_c: k_frac must lie in (0,1)");
  if (!(f1_min >= 0.0) || f1_min > 1.0)
    throw std::domain_error("lambda_c: f1_min must lie in [0,1]");
  cfg.validate();

  const double gamma1 = k_frac;
  const double gamma2 = 1.0 - k_frac;
  double worst = 0.0;
  bool any = false;
  for (double f1 : detail::f1_scan_grid(f1_min)) {
    WeightedThresholdQuery q{gamma1, gamma2, f1, detail::budget_f2(gamma1, gamma2, f1), omega};
    try {
      const SectionalResult r = delta_sectional(q, cfg);
      worst = std::max(worst, r.value);
      any = true;
    } catch (const std::exception& e) {
      std::cerr << "lambda_c: skipping f1'=" << f1 << ": " << e.what() << "\n";
    }
  }
  if (!any) throw std::runtime_error("lambda_c: every scan point failed");
  return worst;
}

// Largest oversparsity fraction eps0 (on a descending log grid) such that
// recovery at sparsity (1 + eps0) * mu_W(delta) * n is still certified:
// the stage-1 overlap guarantee pins down (f1, f2), and the worst-case
// sectional threshold over the consistent splits must stay below delta.
inline double certified_improvement(double delta, const sig::Distribution& dist, double omega,
                                    const analysis::RobustnessConfig& rcfg = {},
                                    const ThresholdSearchConfig& scfg = {}) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::domain_error("certified_improvement: delta must lie in (0,1)");
  if (!(omega > 1.0)) return 0.0;
  rcfg.validate();
  scfg.validate();

  const double mu = weak_threshold_mu(delta, scfg);
  if (mu <= 0.0) return 0.0;

  // 4 points per decade from 2e-1 down to 1e-5.
  std::vector<double> eps_grid;
  for (double e = 0.2; e >= 1e-5 * 0.999; e /= 1.7782794100389228) eps_grid.push_back(e);

  for (double eps0 : eps_grid) {
    const double k_frac = (1.0 + eps0) * mu;
    if (k_frac >= 1.0) continue;
    const double overlap = analysis::overlap_lower_bound(eps0, rcfg, dist);
    if (overlap <= 0.0) continue;
    const double gamma1 = k_frac;
    const double gamma2 = 1.0 - k_frac;

    bool certified = true;
    for (double f1 : detail::f1_scan_grid(overlap)) {
      WeightedThresholdQuery q{gamma1, gamma2, f1, detail::budget_f2(gamma1, gamma2, f1), omega};
      if (!detail::condition_holds_at(q, delta, scfg)) {
        certified = false;
        break;
      }
    }
    if (certified) return eps0;
  }
  return 0.0;
}

} // namespace rwl1::thresholds
