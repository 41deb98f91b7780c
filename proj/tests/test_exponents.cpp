#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "rwl1/core/random_stream.hpp"
#include "rwl1/core/special_functions.hpp"
#include "rwl1/thresholds/face_exponents.hpp"

using Catch::Approx;
namespace thr = rwl1::thresholds;
namespace num = rwl1::num;

namespace {

double net(const thr::WeightedThresholdQuery& q, double t1, double t2) {
  return thr::psi_com(t1, t2, q) - thr::psi_int(t1, t2, q) - thr::psi_ext(t1, t2, q);
}

// Maximum of the net exponent over the admissible tau box: coarse lattice
// followed by shrinking local grids around the best point.
double box_peak(const thr::WeightedThresholdQuery& q) {
  const double t1m = q.tau1_max();
  const double t2m = q.tau2_max();
  double best = -1e300, b1 = 0.0, b2 = 0.0;
  const int n = 60;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const double t1 = t1m * i / n;
      const double t2 = t2m * j / n;
      const double v = net(q, t1, t2);
      if (v > best) { best = v; b1 = t1; b2 = t2; }
    }
  double span1 = t1m / n, span2 = t2m / n;
  for (int round = 0; round < 24; ++round) {
    for (int i = -3; i <= 3; ++i)
      for (int j = -3; j <= 3; ++j) {
        const double t1 = std::clamp(b1 + span1 * i / 3.0, 0.0, t1m);
        const double t2 = std::clamp(b2 + span2 * j / 3.0, 0.0, t2m);
        const double v = net(q, t1, t2);
        if (v > best) { best = v; b1 = t1; b2 = t2; }
      }
    span1 /= 3.0;
    span2 /= 3.0;
  }
  return best;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi) {
  const double invphi = 0.6180339887498949;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 300; ++i) {
    if (f1 < f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - invphi * (hi - lo); f1 = f(x1); }
    else { lo = x1; x1 = x2; f1 = f2; x2 = lo + invphi * (hi - lo); f2 = f(x2); }
  }
  return std::min(f1, f2);
}

} // namespace

TEST_CASE("query validation enforces the model constraints", "[exponents]") {
  thr::WeightedThresholdQuery ok{0.3, 0.7, 0.8, 0.1, 2.0};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.tau1_max() == Approx(0.3 * 0.2));
  CHECK(ok.tau2_max() == Approx(0.7 * 0.9));
  CHECK(ok.sparser_group_favored());

  thr::WeightedThresholdQuery bad_sum{0.3, 0.6, 1.0, 0.0, 2.0};
  CHECK_THROWS_AS(bad_sum.validate(), std::invalid_argument);
  thr::WeightedThresholdQuery bad_f{0.3, 0.7, 1.2, 0.0, 2.0};
  CHECK_THROWS_AS(bad_f.validate(), std::invalid_argument);
  thr::WeightedThresholdQuery bad_w{0.3, 0.7, 1.0, 0.0, 0.5};
  CHECK_THROWS_AS(bad_w.validate(), std::invalid_argument);
}

TEST_CASE("counting exponent on frozen points", "[exponents]") {
  // Fully dense first group, empty tau: every entropy term vanishes.
  thr::WeightedThresholdQuery q1{0.2265, 0.7735, 1.0, 0.0, 10.0};
  CHECK(thr::psi_com(0.0, 0.0, q1) == 0.0);

  // Symmetric half/half split at the interval midpoint: 1.5 log 2.
  thr::WeightedThresholdQuery q2{0.5, 0.5, 0.0, 0.0, 1.0};
  CHECK(thr::psi_com(0.25, 0.25, q2) == Approx(1.0397207708399179).epsilon(1e-13));

  // No omega dependence and symmetric under swapping the groups.
  thr::WeightedThresholdQuery a{0.3, 0.7, 0.4, 0.1, 3.0};
  thr::WeightedThresholdQuery b{0.7, 0.3, 0.1, 0.4, 3.0};
  CHECK(thr::psi_com(0.05, 0.2, a) == Approx(thr::psi_com(0.2, 0.05, b)).epsilon(1e-13));

  CHECK_THROWS_AS(thr::psi_com(0.5, 0.0, q1), std::domain_error); // outside the box
}

TEST_CASE("external exponent matches direct minimization", "[exponents]") {
  // One active group: psi_ext solves the stationarity condition of
  // J(x) = c x^2 - alpha2 log erf(x); compare against a golden-section
  // minimum of J built from scratch.
  thr::WeightedThresholdQuery q{0.2265, 0.7735, 1.0, 0.0, 1.0};
  const double tau2 = 0.3;
  const double c = 0.2265 + tau2;
  const double a2 = 0.7735 - tau2;
  const double direct = golden_min(
      [&](double x) { return c * x * x - a2 * std::log(std::erf(x)); }, 1e-8, 10.0);
  CHECK(thr::psi_ext(0.0, tau2, q) == Approx(direct).epsilon(1e-11));

  // Both groups active with omega = 3.
  thr::WeightedThresholdQuery q3{0.4, 0.6, 0.5, 0.25, 3.0};
  const double t1 = 0.1, t2 = 0.2;
  const double c3 = (t1 + 0.4 * 0.5) + 9.0 * (t2 + 0.6 * 0.25);
  const double al1 = q3.tau1_max() - t1;
  const double al2 = q3.tau2_max() - t2;
  const double direct3 = golden_min(
      [&](double x) {
        return c3 * x * x - al1 * std::log(std::erf(x)) - al2 * std::log(std::erf(3.0 * x));
      },
      1e-8, 10.0);
  CHECK(thr::psi_ext(t1, t2, q3) == Approx(direct3).epsilon(1e-10));

  // Box corner: no external faces remain.
  CHECK(thr::psi_ext(q3.tau1_max(), q3.tau2_max(), q3) == 0.0);

  // omega = 1 collapses the groups: redistributing tau mass changes nothing.
  thr::WeightedThresholdQuery m1{0.5, 0.5, 0.4, 0.4, 1.0};
  const double v1 = thr::psi_ext(0.05, 0.25, m1);
  const double v2 = thr::psi_ext(0.25, 0.05, m1);
  const double v3 = thr::psi_ext(0.15, 0.15, m1);
  CHECK(v1 == Approx(v2).epsilon(1e-11));
  CHECK(v1 == Approx(v3).epsilon(1e-11));
}

TEST_CASE("internal exponent limits, golden value, and one-group merge", "[exponents]") {
  thr::WeightedThresholdQuery q{0.2265, 0.7735, 1.0, 0.0, 10.0};
  CHECK(thr::psi_int(0.0, 0.0, q) == 0.0);

  // Golden value frozen at first verified computation (stationarity residual
  // below 1e-10 when recorded).
  CHECK(thr::psi_int(0.0, 0.2, q) == Approx(0.53408985525033326).epsilon(1e-10));

  // At omega = 1 only tau1 + tau2 matters; an independent single-group
  // implementation of the same dual characterization must agree.
  thr::WeightedThresholdQuery qm{0.35, 0.65, 0.6, 0.2, 1.0};
  const double om = qm.gamma1 * qm.f1 + qm.gamma2 * qm.f2;
  auto merged = [&](double t) {
    auto mhat = [](double u) {
      return u * num::std_normal_cdf(-u) / num::std_normal_pdf(-u);
    };
    const double target = t / (t + om);
    double ulo = 1e-10, uhi = 60.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (ulo + uhi);
      if (mhat(mid) < target) ulo = mid;
      else uhi = mid;
    }
    const double s = -0.5 * (ulo + uhi);
    const double y = -s * om / t;
    const double lam1 = 0.5 * s * s + std::log(2.0) + num::log_std_normal_cdf(s);
    return ((s * y - lam1) + (t / (2.0 * om)) * y * y + std::log(2.0)) * t;
  };
  for (double t1 : {0.0, 0.04, 0.09, 0.14}) {
    const double t2 = 0.14 - t1;
    CHECK(thr::psi_int(t1, t2, qm) == Approx(merged(0.14)).epsilon(1e-10));
  }

  // Zero support density in both groups leaves no internal angle scale.
  thr::WeightedThresholdQuery empty{0.5, 0.5, 0.0, 0.0, 2.0};
  CHECK_THROWS_AS(thr::psi_int(0.1, 0.1, empty), std::domain_error);
}

TEST_CASE("net exponent peaks at the support-choice entropy", "[exponents]") {
  // The three exponents balance exactly: the box maximum of
  // psi_com - psi_int - psi_ext equals (g1 H(f1) + g2 H(f2)) log 2. For
  // binary densities that entropy is zero and the peak is a tangency.
  const std::vector<thr::WeightedThresholdQuery> binary{
      {0.2265, 0.7735, 1.0, 0.0, 1.0},
      {0.2265, 0.7735, 1.0, 0.0, 10.0},
      {0.4, 0.6, 1.0, 0.0, 3.0},
  };
  for (const auto& q : binary) CHECK(std::abs(box_peak(q)) <= 1e-7);

  const std::vector<thr::WeightedThresholdQuery> interior{
      {0.3, 0.7, 0.6, 0.2, 3.0},
      {0.5, 0.5, 0.8, 0.5, 5.0},
      {0.25, 0.75, 0.9, 0.35, 2.0},
  };
  for (const auto& q : interior) {
    const double entropy =
        (q.gamma1 * num::bit_entropy(q.f1) + q.gamma2 * num::bit_entropy(q.f2)) *
        std::log(2.0);
    CHECK(box_peak(q) == Approx(entropy).margin(1e-6));
  }
}

TEST_CASE("net exponent is continuous across the box", "[exponents]") {
  // No jumps, NaNs, or infinities on interior lattices for randomized
  // admissible queries.
  for (int trial = 0; trial < 20; ++trial) {
    num::RandomStream s(9000, static_cast<std::uint64_t>(trial));
    thr::WeightedThresholdQuery q;
    q.gamma1 = 0.1 + 0.8 * s.uniform01();
    q.gamma2 = 1.0 - q.gamma1;
    q.f1 = 0.05 + 0.9 * s.uniform01();
    q.f2 = 0.05 + 0.9 * s.uniform01();
    q.omega = 1.0 + 9.0 * s.uniform01();
    q.validate();

    const int n = 50;
    std::vector<double> vals((n + 1) * (n + 1));
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double v = net(q, q.tau1_max() * i / n, q.tau2_max() * j / n);
        REQUIRE(std::isfinite(v));
        vals[static_cast<std::size_t>(i) * (n + 1) + j] = v;
      }
    for (int i = 0; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const std::size_t at = static_cast<std::size_t>(i) * (n + 1) + j;
        CHECK(std::abs(vals[at] - vals[at - 1]) < 0.5);
        if (i > 0) CHECK(std::abs(vals[at] - vals[at - n - 1]) < 0.5);
      }
  }
}
