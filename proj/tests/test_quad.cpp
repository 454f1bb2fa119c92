#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "bw/quad.hpp"

using namespace bw::quad;

TEST_CASE("interval quadrature integrates smooth and singular integrands") {
  QuadResult r = integrate_interval([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(std::fabs(r.value - 1.0 / 3.0) < 1e-13);

  r = integrate_interval([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12);
  CHECK(std::fabs(r.value - 2.0) < 1e-11);

  // Integrable endpoint singularity; nodes never touch the endpoints.
  r = integrate_interval([](double x) { return std::log(x); }, 0.0, 1.0, 1e-10);
  CHECK(std::fabs(r.value + 1.0) < 1e-9);

  r = integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(std::fabs(r.value - 2.0) < 1e-8);

  r = integrate_interval([](double x) { return std::exp(x); }, -2.0, 3.0,
                         1e-12);
  CHECK(std::fabs(r.value - (std::exp(3.0) - std::exp(-2.0))) < 1e-10);
  CHECK(r.subdivisions >= 1);
}

TEST_CASE("unit interval quadrature handles log-power integrands") {
  // int_0^1 z^p |log z|^q dz = Gamma(1+q) / (1+p)^{1+q}.
  QuadResult r = integrate_unit_interval(
      [](double z) { return std::sqrt(z) * std::pow(-std::log(z), 2.5); }, 1e-12);
  double want = std::tgamma(3.5) / std::pow(1.5, 3.5);
  CHECK(std::fabs(r.value - want) / want < 1e-10);

  r = integrate_unit_interval([](double z) { return -std::log(z); }, 1e-12);
  CHECK(std::fabs(r.value - 1.0) < 1e-11);
}

TEST_CASE("semi-infinite quadrature matches closed forms") {
  QuadResult r = integrate_semi_infinite([](double x) { return std::exp(-x); }, 1e-12);
  CHECK(std::fabs(r.value - 1.0) < 1e-12);

  r = integrate_semi_infinite([](double x) { return x * std::exp(-x); }, 1e-12);
  CHECK(std::fabs(r.value - 1.0) < 1e-11);

  r = integrate_semi_infinite([](double x) { return x * x * std::exp(-x); }, 1e-12);
  CHECK(std::fabs(r.value - 2.0) < 1e-11);

  r = integrate_semi_infinite(
      [](double x) { return std::exp(-0.5 * x * x); }, 1e-12);
  CHECK(std::fabs(r.value - std::sqrt(0.5 * M_PI)) < 1e-10);

  // Slow exponential decay still converges to the requested tolerance.
  r = integrate_semi_infinite([](double x) { return std::exp(-0.2 * x); }, 1e-9);
  CHECK(std::fabs(r.value - 5.0) / 5.0 < 1e-9);
}

TEST_CASE("alternating series summation stops on two consecutive small terms") {
  SeriesResult r = sum_alternating_series(
      [](std::int64_t j) {
        return (j % 2 == 0 ? 1.0 : -1.0) * std::pow(0.7, static_cast<double>(j));
      },
      1e-13, 2);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - 1.0 / 1.7) < 1e-12);

  double fact = 1.0;
  r = sum_alternating_series(
      [&fact](std::int64_t j) {
        if (j > 0)
          fact *= static_cast<double>(j);
        return (j % 2 == 0 ? 1.0 : -1.0) / fact;
      },
      1e-14, 2);
  CHECK(r.converged);
  CHECK(std::fabs(r.value - std::exp(-1.0)) < 1e-13);
}

TEST_CASE("series summation honors the minimum term count") {
  SeriesResult r = sum_alternating_series(
      [](std::int64_t j) { return std::pow(0.5, static_cast<double>(j)); }, 1e-6, 25);
  CHECK(r.converged);
  CHECK(r.terms_used >= 25);
  CHECK(std::fabs(r.value - 2.0) < 1e-5);
}

TEST_CASE("series summation gives up on slowly decaying terms") {
  SeriesResult r = sum_alternating_series(
      [](std::int64_t j) {
        return (j % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(j + 1);
      },
      1e-9, 2);
  CHECK(!r.converged);
  CHECK(r.terms_used >= 100000);
}

TEST_CASE("series summation rejects non-finite terms") {
  CHECK_THROWS_AS(sum_alternating_series(
                      [](std::int64_t j) {
                        return j == 3 ? std::numeric_limits<double>::infinity()
                                      : std::pow(0.5, static_cast<double>(j));
                      },
                      1e-10, 2),
                  std::runtime_error);
}
