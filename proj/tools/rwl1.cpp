// Command line driver for the sparse recovery laboratory.
//
// Subcommands:
//   sweep       phase-transition sweep over sparsity levels (plain l1 and the
//               two-step reweighted algorithm)
//   overlap     stage-one support overlap curve (l1 only)
//   bounds      theoretical overlap lower bounds on a log grid of failure rates
//   orderstats  empirical vs predicted top-fraction mass ratios
//   threshold   weak / weighted / lambda / improvement threshold calculators
//   recover     one synthetic instance end to end, result printed as JSON
//
// Exit codes: 0 success, 2 usage error (synopsis printed), 1 runtime failure.

#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rwl1/rwl1.hpp"

namespace {

namespace rx = rwl1::experiment;
namespace sig = rwl1::sig;
namespace thr = rwl1::thresholds;
namespace ana = rwl1::analysis;

using nlohmann::json;

// Bad flag values discovered after CLI11 parsing still count as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

rx::KRange parse_k_range(const std::string& text) {
  rx::KRange range;
  std::vector<std::size_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(static_cast<std::size_t>(std::stoull(item)));
    } catch (const std::exception&) {
      throw UsageError("--k expects MIN:MAX:STEP or a single integer, got '" + text + "'");
    }
  }
  if (parts.size() == 1) {
    range.min = range.max = parts[0];
    range.step = 1;
  } else if (parts.size() == 3) {
    range.min = parts[0];
    range.max = parts[1];
    range.step = parts[2];
  } else {
    throw UsageError("--k expects MIN:MAX:STEP or a single integer, got '" + text + "'");
  }
  if (range.step == 0 || range.min > range.max) {
    throw UsageError("--k range must have step >= 1 and min <= max");
  }
  return range;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError(flag + " expects a comma separated list of numbers, got '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError(flag + " list is empty");
  return out;
}

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt(double v) { return rx::format_number(v); }

json sweep_row_json(const rx::SweepRow& r) {
  return json{{"k", r.k},
              {"trials", r.trials},
              {"algo", r.algo},
              {"omega", r.omega},
              {"successes", r.successes},
              {"rate", r.rate},
              {"mean_overlap", r.mean_overlap},
              {"wall_ms", r.wall_ms}};
}

json bound_row_json(const rx::BoundRow& r) {
  return json{{"dist", r.dist},
              {"epsilon0", r.epsilon0},
              {"zeta", r.zeta},
              {"overlap_bound", r.overlap_bound}};
}

json orderstat_row_json(const rx::OrderStatRow& r) {
  return json{{"dist", r.dist},
              {"ratio", r.ratio},
              {"empirical", r.empirical},
              {"theoretical", r.theoretical},
              {"abs_error", r.abs_error}};
}

// Writes CSV (stdout or --out) plus a manifest next to --out, or one JSON
// document when --format json is selected.
struct OutputSink {
  std::string out_path;
  std::string format = "csv";

  void emit(const json& config, std::uint64_t seed, const std::string& csv_text,
            const json& rows) const {
    if (format == "json") {
      const json doc = manifest(config, seed, rows);
      if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
      } else {
        write_file(out_path, doc.dump(2) + "\n");
      }
      return;
    }
    if (out_path.empty()) {
      std::cout << csv_text;
    } else {
      write_file(out_path, csv_text);
      const json doc = manifest(config, seed, rows);
      write_file(out_path + ".manifest.json", doc.dump(2) + "\n");
    }
  }

 private:
  static json manifest(const json& config, std::uint64_t seed, const json& rows) {
    return json{{"config", config},
                {"seed", seed},
                {"version", rwl1::kVersion},
                {"rows", rows}};
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
    os << text;
    if (!os) throw std::runtime_error("write failed for '" + path + "'");
  }
};

struct SweepArgs {
  std::size_t n = 200;
  std::size_t m = 112;
  std::string dist = "gaussian";
  std::string k_text = "30:70:5";
  std::size_t trials = 100;
  std::string omega_text = "2,3,5,10";
  bool fix_matrix = false;
  bool timing = false;
  bool no_l1 = false;
  bool no_two_step = false;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& args, bool overlap_mode) {
  cmd->add_option("--n", args.n, "Signal dimension");
  cmd->add_option("--m", args.m, "Number of measurements");
  cmd->add_option("--dist", args.dist,
                  "Amplitude distribution (gaussian|uniform|rayleigh|chi4|chi6)");
  cmd->add_option("--k", args.k_text, "Sparsity grid MIN:MAX:STEP or single value");
  cmd->add_option("--trials", args.trials, "Monte Carlo trials per grid point");
  cmd->add_flag("--fix-matrix", args.fix_matrix,
                "Reuse one measurement matrix per sparsity level");
  cmd->add_flag("--timing", args.timing, "Record wall clock per row");
  if (!overlap_mode) {
    cmd->add_option("--omega", args.omega_text,
                    "Comma list of off-support weights for the second stage");
    cmd->add_flag("--no-l1", args.no_l1, "Skip the plain l1 baseline");
    cmd->add_flag("--no-two-step", args.no_two_step, "Skip the two-step algorithm");
  }
}

rx::ExperimentConfig build_config(const SweepArgs& args, std::uint64_t seed,
                                  unsigned threads, bool overlap_mode) {
  rx::ExperimentConfig cfg;
  cfg.n = args.n;
  cfg.m = args.m;
  cfg.k_range = parse_k_range(args.k_text);
  cfg.trials = args.trials;
  cfg.distribution = args.dist;
  cfg.seed = seed;
  cfg.threads = threads;
  cfg.fix_matrix = args.fix_matrix;
  cfg.record_timing = args.timing;
  if (overlap_mode) {
    cfg.run_l1 = true;
    cfg.run_two_step = false;
    cfg.omegas.clear();
  } else {
    cfg.omegas = parse_double_list(args.omega_text, "--omega");
    cfg.run_l1 = !args.no_l1;
    cfg.run_two_step = !args.no_two_step;
    if (!cfg.run_l1 && !cfg.run_two_step) {
      throw UsageError("--no-l1 and --no-two-step cannot both be set");
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

json config_json(const rx::ExperimentConfig& cfg, const std::string& command) {
  return json{{"command", command},
              {"n", cfg.n},
              {"m", cfg.m},
              {"k", {{"min", cfg.k_range.min}, {"max", cfg.k_range.max}, {"step", cfg.k_range.step}}},
              {"trials", cfg.trials},
              {"dist", cfg.distribution},
              {"omegas", cfg.omegas},
              {"seed", cfg.seed},
              {"threads", cfg.threads},
              {"fix_matrix", cfg.fix_matrix},
              {"record_timing", cfg.record_timing},
              {"run_l1", cfg.run_l1},
              {"run_two_step", cfg.run_two_step}};
}

sig::Distribution make_distribution(const std::string& name) {
  if (name == "gaussian") return sig::Distribution::gaussian();
  if (name == "uniform") return sig::Distribution::uniform_pm1();
  if (name == "rayleigh") return sig::Distribution::rayleigh_two_sided();
  if (name == "chi4") return sig::Distribution::chi_two_sided(4);
  if (name == "chi6") return sig::Distribution::chi_two_sided(6);
  throw UsageError("unknown distribution '" + name +
                   "' (expected gaussian|uniform|rayleigh|chi4|chi6)");
}

int run_sweep_cmd(const SweepArgs& args, std::uint64_t seed, unsigned threads,
                  const OutputSink& sink, bool overlap_mode) {
  const rx::ExperimentConfig cfg = build_config(args, seed, threads, overlap_mode);
  make_distribution(cfg.distribution);  // reject unknown names before the run
  const std::vector<rx::SweepRow> rows =
      overlap_mode ? rx::run_overlap(cfg) : rx::run_sweep(cfg);
  std::ostringstream csv;
  rx::write_sweep_csv(csv, rows);
  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(sweep_row_json(r));
  sink.emit(config_json(cfg, overlap_mode ? "overlap" : "sweep"), seed, csv.str(), jrows);
  return 0;
}

struct BoundsArgs {
  std::string dists = "gaussian,uniform,rayleigh,chi4,chi6";
  double eps0_min = 1e-6;
  double eps0_max = 0.2;
  std::size_t eps0_points = 40;
  double kappa = 1.7320508075688772;
};

int run_bounds_cmd(const BoundsArgs& args, std::uint64_t seed, const OutputSink& sink) {
  if (!(args.eps0_min > 0.0) || !(args.eps0_max > args.eps0_min) || args.eps0_points < 2) {
    throw UsageError("--eps0-min/--eps0-max/--eps0-points must define a valid log grid");
  }
  const std::vector<std::string> dists = parse_string_list(args.dists);
  if (dists.empty()) throw UsageError("--dists list is empty");
  for (const auto& d : dists) make_distribution(d);

  std::vector<double> grid(args.eps0_points);
  const double lo = std::log(args.eps0_min);
  const double hi = std::log(args.eps0_max);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) /
                                static_cast<double>(grid.size() - 1));
  }

  ana::RobustnessConfig rcfg;
  rcfg.kappa_star = args.kappa;
  const std::vector<rx::BoundRow> rows = rx::run_bound_curves(dists, grid, rcfg);

  std::ostringstream csv;
  rx::write_bounds_csv(csv, rows);
  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(bound_row_json(r));
  const json cfg{{"command", "bounds"},
                 {"dists", dists},
                 {"eps0", {{"min", args.eps0_min}, {"max", args.eps0_max}, {"points", args.eps0_points}}},
                 {"kappa", args.kappa}};
  sink.emit(cfg, seed, csv.str(), jrows);
  return 0;
}

struct OrderStatsArgs {
  std::string dist = "gaussian";
  std::size_t N = 20000;
  std::string ratios = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
};

int run_orderstats_cmd(const OrderStatsArgs& args, std::uint64_t seed,
                       const OutputSink& sink) {
  make_distribution(args.dist);
  const std::vector<double> ratios = parse_double_list(args.ratios, "--ratios");
  for (double r : ratios) {
    if (!(r > 0.0) || r > 1.0) throw UsageError("--ratios entries must lie in (0, 1]");
  }
  if (args.N == 0) throw UsageError("--N must be positive");
  const std::vector<rx::OrderStatRow> rows =
      rx::run_orderstats(args.dist, args.N, ratios, seed);
  std::ostringstream csv;
  rx::write_orderstats_csv(csv, rows);
  json jrows = json::array();
  for (const auto& r : rows) jrows.push_back(orderstat_row_json(r));
  const json cfg{{"command", "orderstats"},
                 {"dist", args.dist},
                 {"N", args.N},
                 {"ratios", ratios}};
  sink.emit(cfg, seed, csv.str(), jrows);
  return 0;
}

struct ThresholdArgs {
  // weak / improvement
  double delta = 0.5555;
  // weighted
  double gamma1 = 0.2265;
  double f1 = 1.0;
  double f2 = 0.0;
  double omega = 10.0;
  // lambda
  double k_frac = 0.2265;
  double f1_min = 1.0;
  // improvement
  std::string dist = "gaussian";
  double kappa = 1.7320508075688772;
  // search controls
  std::size_t grid = 200;
  double tol = 1e-4;
};

thr::ThresholdSearchConfig search_config(const ThresholdArgs& a) {
  thr::ThresholdSearchConfig cfg;
  cfg.tau_grid = static_cast<int>(a.grid);
  cfg.delta_tol = a.tol;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

void add_search_options(CLI::App* cmd, ThresholdArgs& a) {
  cmd->add_option("--grid", a.grid, "Lattice resolution for the exponent search");
  cmd->add_option("--tol", a.tol, "Tolerance on the returned undersampling ratio");
}

int emit_threshold(const OutputSink& sink, const json& cfg, std::uint64_t seed,
                   const std::string& header, const std::string& row, const json& jrow) {
  sink.emit(cfg, seed, header + "\n" + row + "\n", json::array({jrow}));
  return 0;
}

int run_threshold_weak(const ThresholdArgs& a, std::uint64_t seed, const OutputSink& sink) {
  if (!(a.delta > 0.0) || !(a.delta < 1.0)) {
    throw UsageError("--delta must lie in (0, 1)");
  }
  const double mu = thr::weak_threshold_mu(a.delta, search_config(a));
  const json cfg{{"command", "threshold weak"}, {"delta", a.delta}, {"grid", a.grid}, {"tol", a.tol}};
  return emit_threshold(sink, cfg, seed, "delta,value", fmt(a.delta) + "," + fmt(mu),
                        json{{"delta", a.delta}, {"value", mu}});
}

int run_threshold_weighted(const ThresholdArgs& a, std::uint64_t seed,
                           const OutputSink& sink) {
  thr::WeightedThresholdQuery q;
  q.gamma1 = a.gamma1;
  q.gamma2 = 1.0 - a.gamma1;
  q.f1 = a.f1;
  q.f2 = a.f2;
  q.omega = a.omega;
  try {
    q.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const thr::SectionalResult res = thr::delta_sectional(q, search_config(a));
  if (!res.found) {
    std::cerr << "warning: no recovery threshold below 1; reporting the vacuous ratio 1\n";
  }
  const json cfg{{"command", "threshold weighted"}, {"gamma1", q.gamma1},
                 {"gamma2", q.gamma2}, {"f1", q.f1}, {"f2", q.f2},
                 {"omega", q.omega}, {"grid", a.grid}, {"tol", a.tol}};
  const std::string row = fmt(q.gamma1) + "," + fmt(q.gamma2) + "," + fmt(q.f1) + "," +
                          fmt(q.f2) + "," + fmt(q.omega) + "," + fmt(res.value);
  return emit_threshold(sink, cfg, seed, "gamma1,gamma2,f1,f2,omega,value", row,
                        json{{"gamma1", q.gamma1}, {"gamma2", q.gamma2}, {"f1", q.f1},
                             {"f2", q.f2}, {"omega", q.omega}, {"value", res.value},
                             {"found", res.found}});
}

int run_threshold_lambda(const ThresholdArgs& a, std::uint64_t seed, const OutputSink& sink) {
  if (!(a.k_frac > 0.0) || !(a.k_frac < 1.0)) throw UsageError("--k-frac must lie in (0, 1)");
  if (!(a.f1_min >= 0.0) || !(a.f1_min <= 1.0)) throw UsageError("--f1-min must lie in [0, 1]");
  const double value = thr::lambda_c(a.k_frac, a.f1_min, a.omega, search_config(a));
  const json cfg{{"command", "threshold lambda"}, {"k_frac", a.k_frac},
                 {"f1_min", a.f1_min}, {"omega", a.omega}, {"grid", a.grid}, {"tol", a.tol}};
  const std::string row =
      fmt(a.k_frac) + "," + fmt(a.f1_min) + "," + fmt(a.omega) + "," + fmt(value);
  return emit_threshold(sink, cfg, seed, "k_frac,f1_min,omega,value", row,
                        json{{"k_frac", a.k_frac}, {"f1_min", a.f1_min},
                             {"omega", a.omega}, {"value", value}});
}

int run_threshold_improvement(const ThresholdArgs& a, std::uint64_t seed,
                              const OutputSink& sink) {
  if (!(a.delta > 0.0) || !(a.delta < 1.0)) throw UsageError("--delta must lie in (0, 1)");
  const sig::Distribution dist = make_distribution(a.dist);
  ana::RobustnessConfig rcfg;
  rcfg.kappa_star = a.kappa;
  const double eps0 =
      thr::certified_improvement(a.delta, dist, a.omega, rcfg, search_config(a));
  const json cfg{{"command", "threshold improvement"}, {"delta", a.delta},
                 {"dist", a.dist}, {"omega", a.omega}, {"kappa", a.kappa},
                 {"grid", a.grid}, {"tol", a.tol}};
  const std::string row =
      fmt(a.delta) + "," + a.dist + "," + fmt(a.omega) + "," + fmt(eps0);
  return emit_threshold(sink, cfg, seed, "delta,dist,omega,value", row,
                        json{{"delta", a.delta}, {"dist", a.dist}, {"omega", a.omega},
                             {"value", eps0}});
}

struct RecoverArgs {
  std::size_t n = 200;
  std::size_t m = 112;
  std::size_t k = 45;
  std::string dist = "gaussian";
  double omega = 10.0;
};

int run_recover_cmd(const RecoverArgs& args, std::uint64_t seed, const OutputSink& sink) {
  if (args.m == 0 || args.n == 0 || args.m >= args.n) {
    throw UsageError("recover requires 0 < m < n");
  }
  if (args.k == 0 || args.k >= args.n) throw UsageError("recover requires 0 < k < n");
  const sig::Distribution dist = make_distribution(args.dist);

  rwl1::num::RandomStream mat_stream(seed, rx::detail::substream_id(args.k, 0, rx::detail::StreamTag::matrix));
  rwl1::num::RandomStream sig_stream(seed, rx::detail::substream_id(args.k, 0, rx::detail::StreamTag::signal));
  const rwl1::num::DenseMatrix A = rwl1::num::gaussian_matrix(args.m, args.n, mat_stream);
  const sig::SparseSignal truth = sig::generate_sparse(args.n, args.k, dist, sig_stream);
  const std::vector<double> x = truth.dense;
  const std::vector<double> y = rwl1::num::matvec(A, x);

  const rwl1::recovery::TwoStepResult res =
      rwl1::recovery::recover_two_step(A, y, args.k, args.omega);

  const auto rel_error = [&x](const std::vector<double>& est) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      num += (est[i] - x[i]) * (est[i] - x[i]);
      den += x[i] * x[i];
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  };

  const json doc{
      {"config", {{"command", "recover"}, {"n", args.n}, {"m", args.m}, {"k", args.k},
                  {"dist", args.dist}, {"omega", args.omega}, {"seed", seed}}},
      {"version", rwl1::kVersion},
      {"l1", {{"status", rwl1::solver::to_string(res.l1_status)},
              {"success", rwl1::recovery::recovery_success(res.l1_solution, x)},
              {"relative_error", rel_error(res.l1_solution)},
              {"iterations", res.l1_iterations},
              {"objective", res.l1_objective}}},
      {"two_step", {{"status", rwl1::solver::to_string(res.weighted_status)},
                    {"success", rwl1::recovery::recovery_success(res.final_solution, x)},
                    {"relative_error", rel_error(res.final_solution)},
                    {"iterations", res.weighted_iterations},
                    {"objective", res.weighted_objective}}},
      {"stage1_support_overlap",
       rwl1::recovery::support_overlap_fraction(truth, res.l1_solution)}};

  if (sink.out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream os(sink.out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file '" + sink.out_path + "'");
    os << doc.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse recovery laboratory: two-step reweighted l1 experiments and thresholds"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", rwl1::kVersion);

  std::uint64_t seed = 0;
  unsigned threads = 1;
  OutputSink sink;
  app.add_option("--seed", seed, "Base seed for all random streams");
  app.add_option("--threads", threads, "Worker threads for Monte Carlo runs");
  app.add_option("--out", sink.out_path, "Write results to this file (plus a .manifest.json)");
  app.add_option("--format", sink.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "Phase-transition sweep over sparsity levels");
  add_sweep_options(sweep, sweep_args, false);

  SweepArgs overlap_args;
  CLI::App* overlap = app.add_subcommand("overlap", "Stage-one support overlap curve");
  add_sweep_options(overlap, overlap_args, true);

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand("bounds", "Theoretical overlap lower bound curves");
  bounds->add_option("--dists", bounds_args.dists, "Comma list of distributions");
  bounds->add_option("--eps0-min", bounds_args.eps0_min, "Smallest failure rate");
  bounds->add_option("--eps0-max", bounds_args.eps0_max, "Largest failure rate");
  bounds->add_option("--eps0-points", bounds_args.eps0_points, "Log grid size");
  bounds->add_option("--kappa", bounds_args.kappa, "Concentration width multiplier");

  OrderStatsArgs os_args;
  CLI::App* orderstats = app.add_subcommand("orderstats", "Top-fraction mass concentration check");
  orderstats->add_option("--dist", os_args.dist, "Amplitude distribution");
  orderstats->add_option("--N", os_args.N, "Sample dimension");
  orderstats->add_option("--ratios", os_args.ratios, "Comma list of fractions in (0, 1]");

  ThresholdArgs th_args;
  CLI::App* threshold = app.add_subcommand("threshold", "Recovery threshold calculators");
  threshold->require_subcommand(1);
  threshold->fallthrough();

  CLI::App* th_weak = threshold->add_subcommand("weak", "Largest recoverable sparsity fraction");
  th_weak->add_option("--delta", th_args.delta, "Undersampling ratio m/n");
  add_search_options(th_weak, th_args);

  CLI::App* th_weighted = threshold->add_subcommand(
      "weighted", "Critical undersampling ratio for a weighted program");
  th_weighted->add_option("--gamma1", th_args.gamma1, "Fraction of coordinates in group 1");
  th_weighted->add_option("--f1", th_args.f1, "Signal density inside group 1");
  th_weighted->add_option("--f2", th_args.f2, "Signal density inside group 2");
  th_weighted->add_option("--omega", th_args.omega, "Weight applied to group 2");
  add_search_options(th_weighted, th_args);

  CLI::App* th_lambda = threshold->add_subcommand(
      "lambda", "Worst-case ratio over support estimates of given accuracy");
  th_lambda->add_option("--k-frac", th_args.k_frac, "Sparsity fraction k/n");
  th_lambda->add_option("--f1-min", th_args.f1_min, "Lower bound on in-support overlap");
  th_lambda->add_option("--omega", th_args.omega, "Off-support weight");
  add_search_options(th_lambda, th_args);

  CLI::App* th_improve = threshold->add_subcommand(
      "improvement", "Certified sparsity gain of the two-step algorithm");
  th_improve->add_option("--delta", th_args.delta, "Undersampling ratio m/n");
  th_improve->add_option("--dist", th_args.dist, "Amplitude distribution");
  th_improve->add_option("--omega", th_args.omega, "Off-support weight");
  th_improve->add_option("--kappa", th_args.kappa, "Concentration width multiplier");
  add_search_options(th_improve, th_args);

  RecoverArgs rec_args;
  CLI::App* recover = app.add_subcommand("recover", "Solve one synthetic instance, print JSON");
  recover->add_option("--n", rec_args.n, "Signal dimension");
  recover->add_option("--m", rec_args.m, "Number of measurements");
  recover->add_option("--k", rec_args.k, "Sparsity of the planted signal");
  recover->add_option("--dist", rec_args.dist, "Amplitude distribution");
  recover->add_option("--omega", rec_args.omega, "Off-support weight for stage two");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help / --version path
      return app.exit(e);
    }
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (*sweep) return run_sweep_cmd(sweep_args, seed, threads, sink, false);
    if (*overlap) return run_sweep_cmd(overlap_args, seed, threads, sink, true);
    if (*bounds) return run_bounds_cmd(bounds_args, seed, sink);
    if (*orderstats) return run_orderstats_cmd(os_args, seed, sink);
    if (*threshold) {
      if (*th_weak) return run_threshold_weak(th_args, seed, sink);
      if (*th_weighted) return run_threshold_weighted(th_args, seed, sink);
      if (*th_lambda) return run_threshold_lambda(th_args, seed, sink);
      if (*th_improve) return run_threshold_improvement(th_args, seed, sink);
    }
    if (*recover) return run_recover_cmd(rec_args, seed, sink);
    std::cerr << "no subcommand selected\n\n" << app.help() << std::flush;
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
