#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "rwl1/core/quadrature.hpp"
#include "rwl1/core/random_stream.hpp"
#include "rwl1/signal/distribution.hpp"
#include "rwl1/signal/sparse_signal.hpp"

using Catch::Approx;
namespace sig = rwl1::sig;
namespace num = rwl1::num;

namespace {

std::vector<sig::Distribution> all_distributions() {
  return {sig::Distribution::gaussian(), sig::Distribution::uniform_pm1(),
          sig::Distribution::rayleigh_two_sided(), sig::Distribution::chi_two_sided(4),
          sig::Distribution::chi_two_sided(6)};
}

} // namespace

TEST_CASE("distribution names round-trip through the factory", "[signal]") {
  for (const auto& d : all_distributions())
    CHECK(sig::Distribution::from_name(d.name()).name() == d.name());
  CHECK_THROWS_AS(sig::Distribution::from_name("cauchy"), std::invalid_argument);
  CHECK_THROWS_AS(sig::Distribution::chi_two_sided(3), std::invalid_argument);
  CHECK_THROWS_AS(sig::Distribution::gaussian(-1.0), std::invalid_argument);
}

TEST_CASE("densities integrate to one", "[signal]") {
  for (const auto& d : all_distributions()) {
    const double half = num::integrate_to_infinity(
        [&d](double x) { return d.pdf(x); }, 0.0, 1e-12);
    CHECK(2.0 * half == Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("tail mass matches the integrated density", "[signal]") {
  for (const auto& d : all_distributions()) {
    for (double x : {0.0, 0.3, 1.0, 2.2}) {
      const double direct = num::integrate_to_infinity(
          [&d](double t) { return d.pdf(t); }, x, 1e-12);
      CHECK(d.tail_q(x) == Approx(direct).margin(1e-9));
    }
    CHECK_THROWS_AS(d.tail_q(-0.1), std::domain_error);
  }
}

TEST_CASE("tail quantile inverts the tail", "[signal]") {
  for (const auto& d : all_distributions()) {
    CHECK(d.quantile_psi(0.5) == 0.0);
    for (double q : {0.4, 0.25, 0.1, 0.02, 0.001}) {
      const double x = d.quantile_psi(q);
      REQUIRE(x > 0.0);
      CHECK(d.tail_q(x) == Approx(q).epsilon(1e-9));
    }
    CHECK_THROWS_AS(d.quantile_psi(0.0), std::domain_error);
    CHECK_THROWS_AS(d.quantile_psi(0.6), std::domain_error);
  }
}

TEST_CASE("absolute means match closed forms and quadrature", "[signal]") {
  // Frozen: sqrt(2/pi), 1/2, sqrt(pi/2), sqrt(2) G(2.5)/G(2), sqrt(2) G(3.5)/G(3).
  CHECK(sig::Distribution::gaussian().abs_mean() == Approx(0.7978845608028654).epsilon(1e-13));
  CHECK(sig::Distribution::uniform_pm1().abs_mean() == Approx(0.5).epsilon(1e-14));
  CHECK(sig::Distribution::rayleigh_two_sided().abs_mean() ==
        Approx(1.2533141373155001).epsilon(1e-13));
  CHECK(sig::Distribution::chi_two_sided(4).abs_mean() ==
        Approx(1.8799712059732505).epsilon(1e-13));
  CHECK(sig::Distribution::chi_two_sided(6).abs_mean() ==
        Approx(2.3499640074665633).epsilon(1e-13));
  for (const auto& d : all_distributions()) {
    const double byquad = 2.0 * num::integrate_to_infinity(
        [&d](double x) { return x * d.pdf(x); }, 0.0, 1e-12);
    CHECK(d.abs_mean() == Approx(byquad).epsilon(1e-8));
  }
}

TEST_CASE("density flatness order at the origin", "[signal]") {
  CHECK(sig::Distribution::gaussian().derivative_order_at_zero() == 0);
  CHECK(sig::Distribution::uniform_pm1().derivative_order_at_zero() == 0);
  CHECK(sig::Distribution::rayleigh_two_sided().derivative_order_at_zero() == 1);
  CHECK(sig::Distribution::chi_two_sided(4).derivative_order_at_zero() == 3);
  CHECK(sig::Distribution::chi_two_sided(6).derivative_order_at_zero() == 5);
  // Vanishing density at 0 exactly when the order is positive.
  CHECK(sig::Distribution::gaussian().pdf(0.0) > 0.0);
  CHECK(sig::Distribution::rayleigh_two_sided().pdf(0.0) == 0.0);
  CHECK(sig::Distribution::chi_two_sided(6).pdf(0.0) == 0.0);
}

TEST_CASE("sampling matches the analytic law", "[signal]") {
  const std::size_t n = 40000;
  for (const auto& d : all_distributions()) {
    num::RandomStream s(17, 3);
    double abs_sum = 0.0, sign_sum = 0.0;
    std::size_t above_one = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = d.sample(s);
      abs_sum += std::abs(x);
      sign_sum += (x > 0.0) ? 1.0 : -1.0;
      if (std::abs(x) > 1.0) ++above_one;
    }
    CHECK(abs_sum / n == Approx(d.abs_mean()).epsilon(0.03));
    CHECK(std::abs(sign_sum / n) < 0.02);
    CHECK(static_cast<double>(above_one) / n ==
          Approx(2.0 * d.tail_q(1.0)).margin(0.012));
  }
}

TEST_CASE("sparse signals plant exactly k entries on a sorted support", "[signal]") {
  const auto d = sig::Distribution::gaussian();
  num::RandomStream s(9, 4);
  const sig::SparseSignal x = sig::generate_sparse(50, 12, d, s);
  REQUIRE(x.n == 50);
  REQUIRE(x.support.size() == 12);
  REQUIRE(x.dense.size() == 50);
  for (std::size_t i = 1; i < x.support.size(); ++i)
    REQUIRE(x.support[i - 1] < x.support[i]);
  std::size_t nonzeros = 0;
  for (std::size_t i = 0; i < x.n; ++i)
    if (x.dense[i] != 0.0) ++nonzeros;
  CHECK(nonzeros == 12);
  for (std::size_t idx : x.support) CHECK(x.dense[idx] != 0.0);

  // Identical streams reproduce the signal; k = 0 and k = n behave.
  num::RandomStream s2(9, 4);
  const sig::SparseSignal y = sig::generate_sparse(50, 12, d, s2);
  CHECK(y.dense == x.dense);
  num::RandomStream s3(9, 5);
  CHECK(sig::generate_sparse(10, 0, d, s3).support.empty());
  CHECK(sig::generate_sparse(10, 10, d, s3).support.size() == 10);
  CHECK_THROWS_AS(sig::generate_sparse(4, 5, d, s3), std::invalid_argument);
}

TEST_CASE("support selection is roughly uniform", "[signal]") {
  const auto d = sig::Distribution::uniform_pm1();
  std::vector<int> hits(20, 0);
  num::RandomStream s(23, 0);
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const sig::SparseSignal x = sig::generate_sparse(20, 5, d, s);
    for (std::size_t idx : x.support) ++hits[idx];
  }
  // Each index is chosen with probability 1/4; allow 5 sigma.
  for (int h : hits) CHECK(std::abs(h - reps / 4) < 5 * std::sqrt(reps * 0.25 * 0.75));
}
