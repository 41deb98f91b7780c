#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rwl1/analysis/order_statistics.hpp"
#include "rwl1/analysis/robustness.hpp"
#include "rwl1/analysis/subset_mass.hpp"
#include "rwl1/core/dense_matrix.hpp"
#include "rwl1/core/parallel.hpp"
#include "rwl1/core/random_stream.hpp"
#include "rwl1/experiment/config.hpp"
#include "rwl1/recovery/two_step.hpp"
#include "rwl1/signal/distribution.hpp"
#include "rwl1/signal/sparse_signal.hpp"
#include "rwl1/solver/basis_pursuit.hpp"
#include "rwl1/solver/support.hpp"

namespace rwl1::experiment {

namespace detail {

// Deterministic substream labels: one lane per (k, trial, purpose), so the
// same instance is drawn regardless of thread schedule or algorithm set.
enum class StreamTag : unsigned { matrix = 0, signal = 1, shared_matrix = 2 };

inline std::uint64_t substream_id(std::size_t k, std::size_t trial, StreamTag tag) {
  return (static_cast<std::uint64_t>(k) << 40) |
         (static_cast<std::uint64_t>(trial) << 8) | static_cast<std::uint64_t>(tag);
}

struct TrialOutcome {
  bool errored = false;
  bool l1_success = false;
  double l1_overlap = 0.0;
  double l1_ms = 0.0;
  std::vector<unsigned char> ts_success;
  std::vector<double> ts_overlap;
  std::vector<double> ts_ms;
};

inline double elapsed_ms(std::chrono::steady_clock::time_point from) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - from)
      .count();
}

// Success for the k = 0 row cannot use the relative criterion (the truth is
// the zero vector), so it degrades to an absolute norm test.
inline bool judge_success(const std::vector<double>& estimate, const sig::SparseSignal& truth) {
  if (truth.sparsity() == 0) {
    double norm = 0.0;
    for (double v : estimate) norm += v * v;
    return std::sqrt(norm) <= 1e-4;
  }
  return recovery::recovery_success(estimate, truth.dense);
}

inline double judge_overlap(const std::vector<double>& estimate, const sig::SparseSignal& truth) {
  if (truth.sparsity() == 0) return 1.0; // empty support is trivially located
  return recovery::support_overlap_fraction(truth, estimate);
}

} // namespace detail

// Monte Carlo sweep over sparsity levels. Every trial draws its instance
// from substreams keyed by (k, trial), runs plain l1 once, and reuses that
// stage-1 solution for each omega variant of the two-step method. Solver
// and pipeline errors are logged and scored as non-recoveries.
inline std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  const sig::Distribution dist = sig::Distribution::from_name(config.distribution);
  const std::vector<std::size_t> k_values = config.k_range.values();
  const std::size_t omega_count = config.run_two_step ? config.omegas.size() : 0;

  // The shared-matrix protocol draws one A up front from a dedicated lane.
  num::DenseMatrix shared_A;
  if (config.fix_matrix) {
    num::RandomStream stream(config.seed,
                             detail::substream_id(0, 0, detail::StreamTag::shared_matrix));
    shared_A = num::gaussian_matrix(config.m, config.n, stream);
  }

  std::vector<SweepRow> rows;
  for (std::size_t k : k_values) {
    std::vector<detail::TrialOutcome> outcomes(config.trials);

    num::parallel_for(config.trials, config.threads, [&](std::size_t trial) {
      detail::TrialOutcome& out = outcomes[trial];
      out.ts_success.assign(omega_count, 0);
      out.ts_overlap.assign(omega_count, 0.0);
      out.ts_ms.assign(omega_count, 0.0);
      try {
        num::RandomStream signal_stream(
            config.seed, detail::substream_id(k, trial, detail::StreamTag::signal));
        const sig::SparseSignal x = sig::generate_sparse(config.n, k, dist, signal_stream);

        num::DenseMatrix fresh_A;
        if (!config.fix_matrix) {
          num::RandomStream matrix_stream(
              config.seed, detail::substream_id(k, trial, detail::StreamTag::matrix));
          fresh_A = num::gaussian_matrix(config.m, config.n, matrix_stream);
        }
        const num::DenseMatrix& A = config.fix_matrix ? shared_A : fresh_A;
        const std::vector<double> y = num::matvec(A, x.dense);

        const auto t0 = std::chrono::steady_clock::now();
        solver::BasisPursuitProblem plain{A, y, std::vector<double>(config.n, 1.0)};
        const solver::SolveResult stage1 = solver::solve_weighted_l1(plain);
        const double stage1_ms = config.record_timing ? detail::elapsed_ms(t0) : 0.0;

        if (stage1.status == solver::SolveStatus::infeasible)
          throw std::runtime_error("stage 1 reported infeasible");

        out.l1_success = detail::judge_success(stage1.solution, x);
        out.l1_overlap = detail::judge_overlap(stage1.solution, x);
        out.l1_ms = stage1_ms;

        // Deterministic sanity check relating the support miss count to the
        // l1 error mass; a violation indicates a solver or analysis bug.
        if (k > 0) {
          double err1 = 0.0;
          for (std::size_t i = 0; i < config.n; ++i)
            err1 += std::abs(x.dense[i] - stage1.solution[i]);
          const auto L = solver::k_support(stage1.solution, k);
          const std::size_t overlap_count = solver::intersection_size(x.support, L);
          const std::size_t w = analysis::compute_W(x, err1);
          if (overlap_count + w < k)
            std::cerr << "sweep: support-overlap invariant violated at k=" << k
                      << " trial=" << trial << " (overlap " << overlap_count << ", W " << w
                      << ")\n";
        }

        for (std::size_t wi = 0; wi < omega_count; ++wi) {
          const auto t1 = std::chrono::steady_clock::now();
          const recovery::TwoStepResult ts =
              recovery::reweighted_stage(A, y, stage1, k, config.omegas[wi]);
          out.ts_ms[wi] = config.record_timing ? stage1_ms + detail::elapsed_ms(t1) : 0.0;
          out.ts_success[wi] = detail::judge_success(ts.final_solution, x) ? 1 : 0;
          out.ts_overlap[wi] = detail::judge_overlap(ts.final_solution, x);
        }
      } catch (const std::exception& e) {
        out.errored = true;
        std::cerr << "sweep: trial failed at k=" << k << " trial=" << trial << ": " << e.what()
                  << "\n";
      }
    });

    // Sequential reduction keeps the output independent of thread schedule.
    if (config.run_l1) {
      SweepRow row;
      row.k = k;
      row.trials = config.trials;
      row.algo = "l1";
      row.omega = 1.0;
      for (const auto& out : outcomes) {
        row.successes += out.l1_success ? 1 : 0;
        row.mean_overlap += out.l1_overlap;
        row.wall_ms += out.l1_ms;
      }
      row.rate = static_cast<double>(row.successes) / static_cast<double>(config.trials);
      row.mean_overlap /= static_cast<double>(config.trials);
      rows.push_back(std::move(row));
    }
    for (std::size_t wi = 0; wi < omega_count; ++wi) {
      SweepRow row;
      row.k = k;
      row.trials = config.trials;
      row.algo = "two_step";
      row.omega = config.omegas[wi];
      for (const auto& out : outcomes) {
        row.successes += out.ts_success[wi] ? 1 : 0;
        row.mean_overlap += out.ts_overlap[wi];
        row.wall_ms += out.ts_ms[wi];
      }
      row.rate = static_cast<double>(row.successes) / static_cast<double>(config.trials);
      row.mean_overlap /= static_cast<double>(config.trials);
      rows.push_back(std::move(row));
    }
  }

  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.algo != b.algo) return a.algo < b.algo;
    return a.omega < b.omega;
  });
  return rows;
}

// Stage-1 support overlap study: the sweep restricted to plain l1, whose
// mean_overlap column is the quantity of interest.
inline std::vector<SweepRow> run_overlap(ExperimentConfig config) {
  config.run_l1 = true;
  config.run_two_step = false;
  return run_sweep(config);
}

// Theoretical bound curves per distribution over an oversparsity grid.
inline std::vector<BoundRow> run_bound_curves(const std::vector<std::string>& dist_names,
                                              const std::vector<double>& epsilon0_grid,
                                              const analysis::RobustnessConfig& rcfg = {}) {
  std::vector<BoundRow> rows;
  for (const std::string& name : dist_names) {
    const sig::Distribution dist = sig::Distribution::from_name(name);
    for (double eps0 : epsilon0_grid) {
      BoundRow row;
      row.dist = name;
      row.epsilon0 = eps0;
      row.zeta = analysis::zeta(eps0, rcfg, dist);
      row.overlap_bound = analysis::overlap_lower_bound(eps0, rcfg, dist);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// Concentration study of the top-M magnitude mass fraction at sample size N.
inline std::vector<OrderStatRow> run_orderstats(const std::string& dist_name, std::size_t N,
                                                const std::vector<double>& ratios,
                                                std::uint64_t seed) {
  if (N < 1) throw std::invalid_argument("orderstats: N must be positive");
  const sig::Distribution dist = sig::Distribution::from_name(dist_name);
  std::vector<OrderStatRow> rows(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double ratio = ratios[i];
    if (!(ratio > 0.0) || ratio > 1.0)
      throw std::invalid_argument("orderstats: ratios must lie in (0,1]");
    const auto M = static_cast<std::size_t>(
        std::clamp<double>(std::round(ratio * static_cast<double>(N)), 1.0,
                           static_cast<double>(N)));
    num::RandomStream stream(seed, static_cast<std::uint64_t>(i));
    OrderStatRow& row = rows[i];
    row.dist = dist_name;
    row.ratio = ratio;
    row.empirical = analysis::empirical_orderstat_ratio(dist, N, M, stream);
    row.theoretical = analysis::orderstat_ratio_general(dist, ratio);
    row.abs_error = std::abs(row.empirical - row.theoretical);
  }
  return rows;
}

// 50% crossover of the success rate along k: the last grid interval where
// the rate passes below one half, located by linear interpolation. Rates
// entirely above (below) 0.5 clamp to the top (bottom) of the grid.
inline double crossover_k(const std::vector<std::pair<std::size_t, double>>& rate_by_k) {
  if (rate_by_k.empty()) throw std::invalid_argument("crossover_k: empty input");
  auto sorted = rate_by_k;
  std::sort(sorted.begin(), sorted.end());
  std::size_t last_above = sorted.size(); // index of last rate >= 0.5
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i].second >= 0.5) last_above = i;
  if (last_above == sorted.size()) return static_cast<double>(sorted.front().first);
  if (last_above + 1 == sorted.size()) return static_cast<double>(sorted.back().first);
  const double k0 = static_cast<double>(sorted[last_above].first);
  const double k1 = static_cast<double>(sorted[last_above + 1].first);
  const double r0 = sorted[last_above].second;
  const double r1 = sorted[last_above + 1].second;
  if (r0 == r1) return k0;
  return k0 + (r0 - 0.5) / (r0 - r1) * (k1 - k0);
}

} // namespace rwl1::experiment
