#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "bw/batch.hpp"
#include "bw/distribution.hpp"
#include "bw/inference.hpp"
#include "bw/specfun.hpp"

using namespace bw;
using namespace bw::inference;

static double rel_err(double got, double want) {
  if (want == 0.0)
    return std::fabs(got);
  return std::fabs(got - want) / std::fabs(want);
}

static Dataset simulated(const BwParams& p, std::uint64_t seed, std::size_t n,
                         const std::string& label) {
  return Dataset{batch::sample_serial(p, seed, n), label};
}

TEST_CASE("dataset validation reports empty and non-positive inputs") {
  CHECK_THROWS_AS((Dataset{{}, "x"}.validate()), std::domain_error);
  CHECK_THROWS_AS((Dataset{{1.0, 0.0}, "x"}.validate()), std::domain_error);
  CHECK_THROWS_AS((Dataset{{1.0, -3.0}, "x"}.validate()), std::domain_error);
  CHECK_THROWS_AS((Dataset{{1.0, std::nan("")}, "x"}.validate()), std::domain_error);
  CHECK_NOTHROW((Dataset{{0.5, 2.0, 7.0}, "x"}.validate()));
}

TEST_CASE("log likelihood sums the pointwise log density") {
  BwParams p{1.6, 0.9, 2.1, 0.4};
  Dataset d{{0.3, 1.1, 2.0, 4.7, 0.05}, "manual"};
  double want = 0.0;
  for (double y : d.observations)
    want += log_pdf(p, y);
  CHECK(rel_err(log_likelihood(p, d), want) < 1e-13);
}

TEST_CASE("score matches finite differences of the log likelihood") {
  std::mt19937_64 gen(4242);
  std::uniform_real_distribution<double> shape(0.5, 2.5);
  for (int trial = 0; trial < 5; ++trial) {
    BwParams p{shape(gen), shape(gen), shape(gen), shape(gen)};
    Dataset d = simulated(p, 100 + trial, 40, "sim");
    std::array<double, 4> s = score(p, d);
    double* fields[4] = {&p.a, &p.b, &p.c, &p.lambda};
    for (int i = 0; i < 4; ++i) {
      double t0 = *fields[i];
      double h = 1e-4 * t0;
      *fields[i] = t0 + h;
      double up = log_likelihood(p, d);
      *fields[i] = t0 - h;
      double dn = log_likelihood(p, d);
      *fields[i] = t0;
      double fd = (up - dn) / (2.0 * h);
      CHECK(std::fabs(s[i] - fd) <
            1e-6 * std::max(1.0, std::fabs(s[i])) + 1e-7);
    }
  }
}

TEST_CASE("fitting recovers simulated parameters") {
  BwParams truth{1.8, 1.4, 2.2, 0.08};
  Dataset d = simulated(truth, 11, 4000, "sim");
  FitResult r = fit_bw(d);
  CHECK(r.converged);
  CHECK(!r.at_boundary);
  CHECK(r.n_obs == 4000);
  CHECK(r.model == SpecialCase::BetaWeibull);
  CHECK(r.gradient_norm <= 1e-6);
  CHECK(r.log_likelihood >= log_likelihood(truth, d));
  // Raw parameters ride a flat (a, c, lambda) ridge, so recovery is judged
  // on the fitted distribution function, not on the coordinates.
  for (double q : {0.1, 0.5, 0.9}) {
    double xq = quantile(truth, q);
    CHECK(std::fabs(cdf(r.params, xq) - q) < 0.05);
  }

  // The score at the fit vanishes in the scaled norm.
  std::array<double, 4> s = score(r.params, d);
  double scale = std::max(1.0, std::fabs(r.log_likelihood));
  double* th[4] = {&r.params.a, &r.params.b, &r.params.c, &r.params.lambda};
  for (int i = 0; i < 4; ++i) {
    CHECK(std::fabs(*th[i] * s[i]) / scale <= 2e-6);
  }

  REQUIRE(r.covariance.has_value());
  const Matrix& cov = *r.covariance;
  CHECK(cov.n == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(cov.at(i, i) > 0.0);
    for (int j = 0; j < i; ++j) {
      CHECK(cov.at(i, j) == cov.at(j, i));
      CHECK(cov.at(i, j) * cov.at(i, j) < cov.at(i, i) * cov.at(j, j));
    }
  }

  // Starting at the truth cannot end below the truth itself; with several
  // stationary points on the ridge it may still stop short of the best fit.
  FitResult r2 = fit_bw(d, truth);
  CHECK(r2.converged);
  CHECK(r2.log_likelihood >= log_likelihood(truth, d) - 1e-6);
}

TEST_CASE("fitting each sub-model recovers its own simulated data") {
  BwParams wtruth{1, 1, 1.7, 0.5};
  Dataset wd = simulated(wtruth, 21, 3000, "w");
  FitResult w = fit_submodel(wd, SpecialCase::StandardWeibull);
  CHECK(w.converged);
  CHECK(w.params.a == 1.0);
  CHECK(w.params.b == 1.0);
  CHECK(rel_err(w.params.c, wtruth.c) < 0.05);
  CHECK(rel_err(w.params.lambda, wtruth.lambda) < 0.05);
  REQUIRE(w.covariance.has_value());
  CHECK(w.covariance->n == 2);

  BwParams etruth{2.5, 1, 1.3, 0.9};
  Dataset ed = simulated(etruth, 22, 3000, "ew");
  FitResult e = fit_submodel(ed, SpecialCase::ExponentiatedWeibull);
  CHECK(e.converged);
  CHECK(e.params.b == 1.0);
  CHECK(rel_err(e.params.c, etruth.c) < 0.25);

  BwParams btruth{1.6, 2.2, 1, 0.7};
  Dataset bd = simulated(btruth, 23, 3000, "be");
  FitResult b = fit_submodel(bd, SpecialCase::BetaExponential);
  CHECK(b.converged);
  CHECK(b.params.c == 1.0);

  CHECK_THROWS_AS(fit_submodel(wd, SpecialCase::BetaWeibull), std::invalid_argument);
  CHECK_THROWS_AS(fit_submodel(wd, SpecialCase::Exponential), std::invalid_argument);
}

TEST_CASE("the full model never fits worse than its sub-models") {
  Dataset d = simulated({2.0, 1.5, 1.5, 0.5}, 31, 500, "sim");
  FitResult full = fit_bw(d);
  for (SpecialCase sc : {SpecialCase::StandardWeibull, SpecialCase::ExponentiatedWeibull,
                         SpecialCase::BetaExponential}) {
    FitResult sub = fit_submodel(d, sc);
    CHECK(full.log_likelihood >= sub.log_likelihood - 1e-8);
  }
}

TEST_CASE("likelihood ratio statistic is invariant under data rescaling") {
  BwParams truth{2.0, 1.5, 2.2, 0.6};
  Dataset base = simulated(truth, 41, 400, "sim");
  double stat0 = 0.0;
  bool first = true;
  for (double k : {1.0, 0.1, 10.0}) {
    Dataset d = base;
    for (double& y : d.observations)
      y *= k;
    FitResult full = fit_bw(d);
    FitResult sub = fit_submodel(d, SpecialCase::StandardWeibull);
    CHECK(full.converged);
    CHECK(sub.converged);
    TestResult t = lr_test(full, sub, 2);
    if (first) {
      stat0 = t.statistic;
      first = false;
    } else {
      CHECK(std::fabs(t.statistic - stat0) <= 1e-6 * std::max(1.0, std::fabs(stat0)));
    }
  }
}

TEST_CASE("information matrix is symmetric and route-consistent") {
  BwParams p{2.5, 1.3, 1.7, 0.8};
  InfoMatrix ka = fisher_info(p, FisherRoute::Combined);
  InfoMatrix kb = fisher_info(p, FisherRoute::Printed);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      CHECK(ka.k[i][j] == ka.k[j][i]);
      CHECK(rel_err(ka.k[i][j], kb.k[i][j]) < 1e-6);
    }
  }
  CHECK(invert_spd(to_matrix(ka)).has_value());

  // At a = 1 the rate block collapses to the two-parameter closed form.
  BwParams w{1.0, 1.7, 2.3, 0.4};
  InfoMatrix kw = fisher_info(w);
  CHECK(rel_err(kw.k[3][3], w.c * w.c / (w.lambda * w.lambda)) < 1e-10);
}

TEST_CASE("information matrix matches the Monte Carlo score covariance") {
  const std::size_t n = 100000;
  int point = 0;
  for (BwParams p : {BwParams{1.6, 1.2, 1.5, 2.0}, BwParams{0.8, 2.0, 1.0, 1.0},
                     BwParams{1.0, 1.0, 3.0, 0.5}, BwParams{2.5, 0.7, 2.0, 1.3},
                     BwParams{0.6, 0.9, 1.2, 0.3}}) {
    std::vector<double> ys = batch::sample_serial(p, 7000 + point, n);
    ++point;
    double sum[4][4] = {};
    double sumsq[4][4] = {};
    std::vector<double> one(1);
    for (double y : ys) {
      one[0] = y;
      std::array<double, 4> s = batch::score_serial(p, one);
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
          double prod = s[i] * s[j];
          sum[i][j] += prod;
          sumsq[i][j] += prod * prod;
        }
      }
    }
    InfoMatrix k = fisher_info(p);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        double mean = sum[i][j] / static_cast<double>(n);
        double var = sumsq[i][j] / static_cast<double>(n) - mean * mean;
        double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
        CHECK(std::fabs(mean - k.k[i][j]) <=
              3.0 * se + 1e-3 * std::fabs(k.k[i][j]) + 1e-9);
      }
    }
  }
}

TEST_CASE("likelihood ratio test maps gaps to chi-square tails") {
  FitResult full;
  full.log_likelihood = -100.0;
  FitResult restricted;
  restricted.log_likelihood = -110.0;
  TestResult t = lr_test(full, restricted, 2);
  CHECK(t.statistic == doctest::Approx(20.0));
  CHECK(t.df == 2);
  CHECK(rel_err(t.p_value, std::exp(-10.0)) < 1e-10);
  CHECK(t.kind == TestKind::LR);

  restricted.log_likelihood = -100.0 + 1e-12;
  t = lr_test(full, restricted, 1);
  CHECK(t.statistic == 0.0);
  CHECK(t.p_value == 1.0);

  restricted.log_likelihood = -99.0;
  CHECK_THROWS_AS(lr_test(full, restricted, 2), std::runtime_error);
  restricted.log_likelihood = -110.0;
  CHECK_THROWS_AS(lr_test(full, restricted, 0), std::domain_error);
}

TEST_CASE("Wald test forms the quadratic in the pinned deviations") {
  FitResult fit;
  fit.model = SpecialCase::BetaWeibull;
  fit.params = {2.0, 3.0, 1.0, 1.0};
  Matrix cov;
  cov.n = 4;
  for (int i = 0; i < 4; ++i)
    cov.at(i, i) = (i < 2) ? 0.25 : 1.0;
  fit.covariance = cov;

  TestResult t = wald_test(fit, {{0, 1.0}, {1, 1.0}});
  CHECK(t.statistic == doctest::Approx(20.0));
  CHECK(t.df == 2);
  CHECK(rel_err(t.p_value, std::exp(-10.0)) < 1e-10);
  CHECK(t.kind == TestKind::Wald);

  // Pinning at the estimates themselves gives zero.
  t = wald_test(fit, {{0, 2.0}, {1, 3.0}});
  CHECK(t.statistic == 0.0);

  CHECK_THROWS_AS(wald_test(fit, {}), std::domain_error);
  CHECK_THROWS_AS(wald_test(fit, {{0, 1.0}, {0, 1.5}}), std::invalid_argument);

  FitResult wfit;
  wfit.model = SpecialCase::StandardWeibull;
  wfit.params = {1.0, 1.0, 2.0, 0.5};
  Matrix c2;
  c2.n = 2;
  c2.at(0, 0) = 0.1;
  c2.at(1, 1) = 0.2;
  wfit.covariance = c2;
  CHECK_THROWS_AS(wald_test(wfit, {{0, 1.0}}), std::invalid_argument);
  CHECK(wald_test(wfit, {{2, 1.0}}).df == 1);

  FitResult bare;
  bare.model = SpecialCase::BetaWeibull;
  CHECK_THROWS_AS(wald_test(bare, {{0, 1.0}}), std::runtime_error);

  Matrix sing;
  sing.n = 4;
  fit.covariance = sing;
  CHECK_THROWS_AS(wald_test(fit, {{0, 1.0}}), std::runtime_error);
}

TEST_CASE("free parameter indices match each nested model") {
  CHECK(free_param_indices(SpecialCase::BetaWeibull) == std::vector<int>{0, 1, 2, 3});
  CHECK(free_param_indices(SpecialCase::ExponentiatedWeibull) == std::vector<int>{0, 2, 3});
  CHECK(free_param_indices(SpecialCase::BetaExponential) == std::vector<int>{0, 1, 3});
  CHECK(free_param_indices(SpecialCase::Weibull) == std::vector<int>{2, 3});
  CHECK(free_param_indices(SpecialCase::StandardWeibull) == std::vector<int>{2, 3});
  CHECK(free_param_indices(SpecialCase::Exponential) == std::vector<int>{3});
}

TEST_CASE("matrix inversion round-trips and rejects indefinite input") {
  Matrix m;
  m.n = 3;
  double vals[3][3] = {{4, 1, 0}, {1, 3, 1}, {0, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m.at(i, j) = vals[i][j];
  auto inv = invert_spd(m);
  REQUIRE(inv.has_value());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k)
        acc += m.at(i, k) * inv->at(k, j);
      CHECK(std::fabs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }

  Matrix bad;
  bad.n = 2;
  bad.at(0, 0) = 1.0;
  bad.at(0, 1) = bad.at(1, 0) = 2.0;
  bad.at(1, 1) = 1.0;
  CHECK(!invert_spd(bad).has_value());
}

TEST_CASE("fitting degenerate and tiny datasets stays well-behaved") {
  Dataset tiny{{1.0, 2.0, 3.0}, "tiny"};
  FitResult r = fit_bw(tiny, std::nullopt, FitOptions{1e-6, 1e-10, 200, false});
  CHECK(r.n_obs == 3);
  CHECK(std::isfinite(r.log_likelihood));
  if (!r.converged)
    CHECK(!r.diagnostic.empty());

  Dataset one{{2.5}, "one"};
  FitResult w = fit_submodel(one, SpecialCase::StandardWeibull, std::nullopt,
                             FitOptions{1e-6, 1e-10, 200, false});
  CHECK(w.n_obs == 1);
  CHECK(!w.converged);
}
