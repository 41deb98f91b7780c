#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rwl1/analysis/robustness.hpp"
#include "rwl1/signal/distribution.hpp"
#include "rwl1/thresholds/thresholds.hpp"

using Catch::Approx;
namespace thr = rwl1::thresholds;
namespace sig = rwl1::sig;

namespace {

thr::WeightedThresholdQuery one_group_query(double mu, double omega) {
  return thr::WeightedThresholdQuery{mu, 1.0 - mu, 1.0, 0.0, omega};
}

} // namespace

TEST_CASE("search configuration is validated", "[thresholds]") {
  thr::ThresholdSearchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.tau_grid = 10;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.delta_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("critical ratio anchors for the dense-on-support model", "[thresholds]") {
  // Frozen after first verified computation; the omega = 1 value brackets
  // the empirical 50% crossover of the plain program at this sparsity.
  struct Anchor { double omega, value; };
  const std::vector<Anchor> anchors{
      {1.0, 0.550391}, {2.0, 0.380337}, {4.0, 0.288038}, {10.0, 0.242033}};
  for (const auto& a : anchors) {
    const thr::SectionalResult r = thr::delta_sectional(one_group_query(0.2265, a.omega));
    REQUIRE(r.found);
    CHECK(r.value == Approx(a.value).epsilon(2e-3));
  }
  const double base = thr::delta_sectional(one_group_query(0.2265, 1.0)).value;
  CHECK(base > 0.5);
  CHECK(base < 0.62);
}

TEST_CASE("critical ratio falls with the off-support penalty", "[thresholds]") {
  double prev = 1.0;
  for (double omega : {1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const thr::SectionalResult r = thr::delta_sectional(one_group_query(0.3, omega));
    REQUIRE(r.found);
    CHECK(r.value <= prev + 1e-9);
    prev = r.value;
  }
  // And continuously approaches the unweighted program from above.
  const double at1 = thr::delta_sectional(one_group_query(0.3, 1.0)).value;
  const double near1 = thr::delta_sectional(one_group_query(0.3, 1.001)).value;
  CHECK(near1 == Approx(at1).margin(5e-3));
}

TEST_CASE("critical ratio grows with the sparsity fraction", "[thresholds]") {
  double prev = 0.0;
  for (double mu : {0.1, 0.2, 0.3, 0.45}) {
    const double v = thr::delta_sectional(one_group_query(mu, 1.0)).value;
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("degenerate sparsity patterns short-circuit", "[thresholds]") {
  // Empty support: any measurement count suffices.
  thr::WeightedThresholdQuery empty{0.4, 0.6, 0.0, 0.0, 2.0};
  const auto r0 = thr::delta_sectional(empty);
  CHECK(r0.found);
  CHECK(r0.value == 0.0);

  // Fully dense: all measurements required.
  thr::WeightedThresholdQuery dense{0.4, 0.6, 1.0, 1.0, 2.0};
  const auto r1 = thr::delta_sectional(dense);
  CHECK(r1.found);
  CHECK(r1.value == 1.0);
}

TEST_CASE("interior support densities yield a threshold strictly inside (gf, 1)", "[thresholds]") {
  thr::WeightedThresholdQuery q{0.3, 0.7, 0.6, 0.2, 3.0};
  const double gf = q.gamma1 * q.f1 + q.gamma2 * q.f2;
  const auto r = thr::delta_sectional(q);
  REQUIRE(r.found);
  CHECK(r.value > gf);
  CHECK(r.value < 1.0);

  // Cached: repeated queries return the identical value.
  CHECK(thr::delta_sectional(q).value == r.value);
}

TEST_CASE("weak threshold inversion anchors and round trip", "[thresholds]") {
  // Frozen after first verified computation.
  CHECK(thr::weak_threshold_mu(0.3) == Approx(0.086790).margin(2e-3));
  CHECK(thr::weak_threshold_mu(0.5) == Approx(0.192444).margin(2e-3));
  CHECK(thr::weak_threshold_mu(0.5555) == Approx(0.230070).margin(2e-3));
  CHECK(thr::weak_threshold_mu(0.7) == Approx(0.348683).margin(2e-3));

  CHECK(thr::weak_threshold_mu(0.5555) > 0.19);
  CHECK(thr::weak_threshold_mu(0.5555) < 0.26);

  double prev = 0.0;
  for (double delta : {0.3, 0.5, 0.7}) {
    const double mu = thr::weak_threshold_mu(delta);
    CHECK(mu > prev);
    prev = mu;
    // Inverting back lands within the documented tolerance.
    const double back = thr::delta_sectional(one_group_query(mu, 1.0)).value;
    CHECK(back == Approx(delta).margin(2e-3));
  }
  CHECK_THROWS_AS(thr::weak_threshold_mu(0.0), std::domain_error);
  CHECK_THROWS_AS(thr::weak_threshold_mu(1.0), std::domain_error);
}

TEST_CASE("worst-case ratio over support estimates", "[thresholds]") {
  // A perfect support estimate pins f1 = 1, so the scan degenerates to the
  // dense-on-support threshold.
  const double mu = 0.230070;
  const double pinned = thr::lambda_c(mu, 1.0, 10.0);
  CHECK(pinned ==
        Approx(thr::delta_sectional(one_group_query(mu, 10.0)).value).margin(1e-9));
  CHECK(pinned == Approx(0.245780).epsilon(2e-3)); // frozen
  CHECK(pinned < 0.5555);

  // Relaxing the overlap floor enlarges the feasible set, so the maximum
  // cannot decrease.
  const double relaxed = thr::lambda_c(mu, 0.9, 10.0);
  CHECK(relaxed >= pinned - 1e-9);

  CHECK_THROWS_AS(thr::lambda_c(0.0, 1.0, 10.0), std::domain_error);
}

TEST_CASE("certified sparsity gains are positive and ordered by tail flatness", "[thresholds]") {
  const auto gaussian = sig::Distribution::gaussian();
  const auto rayleigh = sig::Distribution::rayleigh_two_sided();

  const double g = thr::certified_improvement(0.5555, gaussian, 10.0);
  CHECK(g >= 1e-4);
  CHECK(g <= 1e-2);
  CHECK(g == Approx(1.124683e-4).epsilon(1e-2)); // frozen grid point

  const double r = thr::certified_improvement(0.5555, rayleigh, 10.0);
  CHECK(r > 0.0);
  CHECK(r <= g);

  // No penalty means no second stage to certify.
  CHECK(thr::certified_improvement(0.5555, gaussian, 1.0) == 0.0);
}
