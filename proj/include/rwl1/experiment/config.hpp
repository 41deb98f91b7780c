#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rwl1::experiment {

struct KRange {
  std::size_t min = 30;
  std::size_t max = 70;
  std::size_t step = 5;

  std::vector<std::size_t> values() const {
    if (step == 0) throw std::invalid_argument("k range: step must be positive");
    if (max < min) throw std::invalid_argument("k range: max must be >= min");
    std::vector<std::size_t> out;
    for (std::size_t k = min; k <= max; k += step) out.push_back(k);
    return out;
  }
};

struct ExperimentConfig {
  std::size_t n = 200;
  std::size_t m = 112;
  KRange k_range;
  std::size_t trials = 100;
  std::string distribution = "gaussian";
  std::vector<double> omegas = {2.0, 3.0, 5.0, 10.0};
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool fix_matrix = false;   // one shared A for the whole run instead of one per trial
  bool record_timing = false; // wall_ms stays 0 unless enabled (keeps CSV bit-stable)
  bool run_l1 = true;
  bool run_two_step = true;

  void validate() const {
    if (m == 0 || n == 0) throw std::invalid_argument("config: n and m must be positive");
    if (m >= n) throw std::invalid_argument("config: m must be below n");
    if (k_range.max >= n) throw std::invalid_argument("config: k_max must be below n");
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
    if (!run_l1 && !run_two_step)
      throw std::invalid_argument("config: at least one algorithm must be enabled");
    if (run_two_step) {
      if (omegas.empty()) throw std::invalid_argument("config: omega list must be nonempty");
      for (double w : omegas)
        if (!(w > 1.0)) throw std::invalid_argument("config: every omega must exceed 1");
    }
    k_range.values(); // validates the range itself
  }
};

// One output record of a sweep: the success statistics of one algorithm
// variant at one sparsity level.
struct SweepRow {
  std::size_t k = 0;
  std::size_t trials = 0;
  std::string algo;       // "l1" or "two_step"
  double omega = 1.0;     // 1 for plain l1 rows
  std::size_t successes = 0;
  double rate = 0.0;
  double mean_overlap = 0.0;
  double wall_ms = 0.0;
};

struct BoundRow {
  std::string dist;
  double epsilon0 = 0.0;
  double zeta = 0.0;
  double overlap_bound = 0.0;
};

struct OrderStatRow {
  std::string dist;
  double ratio = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;
  double abs_error = 0.0;
};

} // namespace rwl1::experiment
