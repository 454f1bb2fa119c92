#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bw/distribution.hpp"

// Likelihood, analytic score, maximum-likelihood fitting in log-parameter
// space, the expected (Fisher) information matrix, and likelihood-ratio /
// Wald tests for the nested sub-models.

namespace bw::inference {

struct Dataset {
  std::vector<double> observations;
  std::string label;

  // Non-empty, every entry strictly positive and finite.
  void validate() const;
};

// Small dense symmetric matrix, up to 4x4, row-major.
struct Matrix {
  int n = 0;
  std::array<double, 16> v{};

  double& at(int i, int j) { return v[static_cast<std::size_t>(i * n + j)]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i * n + j)]; }
};

// Expected information per observation, parameter order (a, b, c, lambda).
struct InfoMatrix {
  std::array<std::array<double, 4>, 4> k{};
};

struct FitResult {
  BwParams params{1.0, 1.0, 1.0, 1.0};
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  // max_i |d ell/d log theta_i| / max(1, |ell|) at the returned point.
  double gradient_norm = 0.0;
  // Asymptotic covariance of the estimates, inverse information divided by
  // n, over the model's free parameters. Attached whenever the point is
  // interior and the information matrix is positive definite, even for a
  // non-converged fit (the diagnostic says so); absent otherwise.
  std::optional<Matrix> covariance;
  SpecialCase model = SpecialCase::BetaWeibull;
  int n_obs = 0;
  bool at_boundary = false;
  std::string diagnostic;
};

enum class TestKind { LR, Wald };

struct TestResult {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  TestKind kind = TestKind::LR;
};

struct FitOptions {
  double grad_tol = 1e-6;
  double step_tol = 1e-10;
  int max_iterations = 500;
  bool multistart = true;  // grid restarts when the first start fails
};

// Sum of log pdf over the data; -inf (not an error) on underflow.
double log_likelihood(const BwParams& p, const Dataset& data);

// (d/da, d/db, d/dc, d/dlambda) of the log-likelihood, summed over the data.
// Throws std::overflow_error when (lambda*y)^c is not representable.
std::array<double, 4> score(const BwParams& p, const Dataset& data);

// Free parameters of each nested model, as indices into (a, b, c, lambda).
std::vector<int> free_param_indices(SpecialCase model);

FitResult fit_bw(const Dataset& data,
                 const std::optional<BwParams>& init = std::nullopt,
                 const FitOptions& opts = FitOptions{});

// model must be StandardWeibull, ExponentiatedWeibull or BetaExponential;
// the pinned components are held at 1.
FitResult fit_submodel(const Dataset& data, SpecialCase model,
                       const std::optional<BwParams>& init = std::nullopt,
                       const FitOptions& opts = FitOptions{});

// Inverse of a symmetric positive definite matrix via Cholesky; nullopt
// when the matrix is not positive definite.
std::optional<Matrix> invert_spd(const Matrix& m);

// 4x4 Matrix view of an InfoMatrix, same (a, b, c, lambda) order.
Matrix to_matrix(const InfoMatrix& info);

// The information elements kappa_cc and kappa_clambda combine T integrals
// whose pieces individually diverge for a <= 1; Combined evaluates the whole
// bracket under one integral, Printed evaluates the four T terms separately.
// Auto picks Combined for a <= 2 and Printed above (they agree in between).
enum class FisherRoute { Auto, Combined, Printed };

InfoMatrix fisher_info(const BwParams& p, FisherRoute route = FisherRoute::Auto);

// statistic = 2(l_full - l_restricted), chi-square(df) p-value. Throws when
// the statistic is materially negative, which means an optimizer failure.
TestResult lr_test(const FitResult& full, const FitResult& restricted, int df);

struct PinnedParam {
  int index;     // into (a, b, c, lambda)
  double value;  // null-hypothesis value
};

// statistic = (theta_S - theta_0)' [cov_SS]^{-1} (theta_S - theta_0) over the
// pinned subset, using the covariance carried by the fit.
TestResult wald_test(const FitResult& fit, const std::vector<PinnedParam>& pinned);

}  // namespace bw::inference
