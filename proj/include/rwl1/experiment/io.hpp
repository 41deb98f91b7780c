#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rwl1/experiment/config.hpp"

namespace rwl1::experiment {

// Shortest round-trippable decimal rendering used across all CSV output;
// fixed formatting keeps identical runs byte-identical.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "k,trials,algo,omega,successes,rate,mean_overlap,wall_ms\n";
  for (const SweepRow& r : rows)
    os << r.k << ',' << r.trials << ',' << r.algo << ',' << format_number(r.omega) << ','
       << r.successes << ',' << format_number(r.rate) << ',' << format_number(r.mean_overlap)
       << ',' << format_number(r.wall_ms) << '\n';
}

inline void write_bounds_csv(std::ostream& os, const std::vector<BoundRow>& rows) {
  os << "dist,epsilon0,zeta,overlap_bound\n";
  for (const BoundRow& r : rows)
    os << r.dist << ',' << format_number(r.epsilon0) << ',' << format_number(r.zeta) << ','
       << format_number(r.overlap_bound) << '\n';
}

inline void write_orderstats_csv(std::ostream& os, const std::vector<OrderStatRow>& rows) {
  os << "dist,ratio,empirical,theoretical,abs_error\n";
  for (const OrderStatRow& r : rows)
    os << r.dist << ',' << format_number(r.ratio) << ',' << format_number(r.empirical) << ','
       << format_number(r.theoretical) << ',' << format_number(r.abs_error) << '\n';
}

} // namespace rwl1::experiment
