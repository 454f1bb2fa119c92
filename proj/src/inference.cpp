#include "bw/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "bw/batch.hpp"
#include "bw/moments.hpp"
#include "bw/specfun.hpp"

namespace bw::inference {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogBoundary = 25.0;  // |log theta| past this is "boundary"
// Hard feasibility wall just outside the boundary: evaluation is refused
// there, so the line search can touch the wall but never jump past it into
// territory where the log-likelihood cancels catastrophically.
constexpr double kLogWall = 26.0;
constexpr double kMaxStepInf = 2.0;  // largest log-parameter step per iteration
constexpr double kEulerGamma = 0.57721566490153286060651209;

double rho(double x) {
  if (x > 1e-4)
    return -std::expm1(-x) / x;
  return 1.0 - x / 2.0 * (1.0 - x / 3.0 * (1.0 - x / 4.0));
}

// {x e^{-x} - (1-e^{-x})} / (1-e^{-x})^2, the bounded factor that lets the
// kappa_cc / kappa_clambda brackets live under a single integral. Series
// near zero: the numerator is -x^2/2 + x^3/3 - ..., all digits of which the
// direct form loses to cancellation.
double phi_rho(double x) {
  if (x < 0.05) {
    double num =
        -0.5 +
        x * (1.0 / 3.0 +
             x * (-0.125 + x * (1.0 / 30.0 +
                                x * (-1.0 / 144.0 + x * (1.0 / 840.0)))));
    double r = rho(x);
    return num / (r * r);
  }
  double u1 = -std::expm1(-x);
  return (x * std::exp(-x) - u1) / (u1 * u1);
}

// ---- small dense SPD linear algebra --------------------------------------

// In-place lower Cholesky; false when the matrix is not positive definite.
// The strict upper triangle is left untouched and never read afterwards.
bool cholesky(Matrix& m) {
  for (int i = 0; i < m.n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m.at(i, j);
      for (int k = 0; k < j; ++k)
        s -= m.at(i, k) * m.at(j, k);
      if (i == j) {
        if (!(s > 0.0) || !std::isfinite(s))
          return false;
        m.at(i, i) = std::sqrt(s);
      } else {
        m.at(i, j) = s / m.at(j, j);
      }
    }
  }
  return true;
}

void chol_solve(const Matrix& chol_l, const double* b, double* x) {
  int n = chol_l.n;
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k)
      s -= chol_l.at(i, k) * x[k];
    x[i] = s / chol_l.at(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int k = i + 1; k < n; ++k)
      s -= chol_l.at(k, i) * x[k];
    x[i] = s / chol_l.at(i, i);
  }
}

std::optional<Matrix> spd_inverse(const Matrix& m) {
  Matrix l = m;
  if (!cholesky(l))
    return std::nullopt;
  Matrix inv;
  inv.n = m.n;
  double e[4] = {0, 0, 0, 0};
  double col[4];
  for (int j = 0; j < m.n; ++j) {
    e[j] = 1.0;
    chol_solve(l, e, col);
    e[j] = 0.0;
    for (int i = 0; i < m.n; ++i)
      inv.at(i, j) = col[i];
  }
  // Clean up the roundoff asymmetry so downstream Cholesky calls see an
  // exactly symmetric matrix.
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < i; ++j) {
      double avg = 0.5 * (inv.at(i, j) + inv.at(j, i));
      inv.at(i, j) = avg;
      inv.at(j, i) = avg;
    }
  return inv;
}

// ---- quasi-Newton fit engine ----------------------------------------------

struct Problem {
  const std::vector<double>* y = nullptr;
  std::vector<int> free;  // indices into (a, b, c, lambda)
  BwParams base{1.0, 1.0, 1.0, 1.0};

  BwParams params_from(const double* z) const {
    BwParams p = base;
    double* f[4] = {&p.a, &p.b, &p.c, &p.lambda};
    for (std::size_t i = 0; i < free.size(); ++i)
      *f[free[static_cast<std::size_t>(i)]] = std::exp(z[i]);
    return p;
  }

  // f = -loglik, g = gradient in log parameters. False when the point is
  // infeasible (likelihood underflow or score overflow): the line search
  // treats that as a rejected step.
  bool eval(const double* z, double* f, double* g) const {
    for (std::size_t i = 0; i < free.size(); ++i)
      if (std::fabs(z[i]) > kLogWall)
        return false;
    BwParams p = params_from(z);
    double ll = batch::log_likelihood_serial(p, *y);
    if (!std::isfinite(ll))
      return false;
    std::array<double, 4> sc;
    try {
      sc = batch::score_serial(p, *y);
    } catch (const std::overflow_error&) {
      return false;
    }
    double theta[4] = {p.a, p.b, p.c, p.lambda};
    *f = -ll;
    for (std::size_t i = 0; i < free.size(); ++i) {
      int idx = free[i];
      g[i] = -theta[idx] * sc[static_cast<std::size_t>(idx)];
      if (!std::isfinite(g[i]))
        return false;
    }
    return true;
  }
};

struct BfgsOutcome {
  double z[4] = {0, 0, 0, 0};
  double ll = -kInf;
  int iterations = 0;
  bool converged = false;
  double gnorm = kInf;
  bool at_boundary = false;
  bool feasible = false;
  std::string note;
};

double scaled_gnorm(const double* g, int n, double f) {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    m = std::max(m, std::fabs(g[i]));
  return m / std::max(1.0, std::fabs(f));
}

BfgsOutcome bfgs_maximize(const Problem& prob, const double* z0,
                          const FitOptions& opts) {
  const int n = static_cast<int>(prob.free.size());
  BfgsOutcome out;
  double z[4], g[4], f;
  std::copy(z0, z0 + n, z);
  if (!prob.eval(z, &f, g)) {
    out.note = "infeasible starting point";
    std::copy(z, z + n, out.z);
    return out;
  }
  out.feasible = true;

  double h[4][4];  // inverse-Hessian approximation
  auto reset_h = [&] {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        h[i][j] = i == j ? 1.0 : 0.0;
  };
  reset_h();

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    bool boundary = false;
    for (int i = 0; i < n; ++i)
      boundary = boundary || std::fabs(z[i]) > kLogBoundary;
    if (boundary) {
      out.at_boundary = true;
      out.note = "stopped at the edge of the parameter space (|log theta| > 25)";
      break;
    }
    out.gnorm = scaled_gnorm(g, n, f);
    if (out.gnorm <= opts.grad_tol) {
      out.converged = true;
      break;
    }

    double d[4];
    for (int i = 0; i < n; ++i) {
      d[i] = 0.0;
      for (int j = 0; j < n; ++j)
        d[i] -= h[i][j] * g[j];
    }
    double dg = 0.0;
    for (int i = 0; i < n; ++i)
      dg += d[i] * g[i];
    if (!(dg < 0.0)) {
      // Curvature estimate gone bad; fall back to steepest descent.
      reset_h();
      for (int i = 0; i < n; ++i)
        d[i] = -g[i];
    }
    double dinf = 0.0;
    for (int i = 0; i < n; ++i)
      dinf = std::max(dinf, std::fabs(d[i]));
    if (dinf > kMaxStepInf)
      for (int i = 0; i < n; ++i)
        d[i] *= kMaxStepInf / dinf;
    dg = 0.0;
    for (int i = 0; i < n; ++i)
      dg += d[i] * g[i];

    double alpha = 1.0;
    double zn[4], gn[4], fn = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (int i = 0; i < n; ++i)
        zn[i] = z[i] + alpha * d[i];
      if (prob.eval(zn, &fn, gn) && fn <= f + 1e-4 * alpha * dg) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      out.note = "line search found no acceptable step";
      break;
    }

    double s[4], yv[4];
    double step_inf = 0.0, sy = 0.0, ss = 0.0, yy = 0.0;
    for (int i = 0; i < n; ++i) {
      s[i] = zn[i] - z[i];
      yv[i] = gn[i] - g[i];
      step_inf = std::max(step_inf, std::fabs(s[i]));
      sy += s[i] * yv[i];
      ss += s[i] * s[i];
      yy += yv[i] * yv[i];
    }
    std::copy(zn, zn + n, z);
    std::copy(gn, gn + n, g);
    f = fn;
    if (step_inf <= opts.step_tol) {
      out.note = "step size fell below the resolution limit";
      ++iter;
      break;
    }
    if (sy > 1e-12 * std::sqrt(ss * yy)) {
      // H <- (I - r s y')(H)(I - r y s') + r s s'
      double r = 1.0 / sy;
      double hy[4];
      for (int i = 0; i < n; ++i) {
        hy[i] = 0.0;
        for (int j = 0; j < n; ++j)
          hy[i] += h[i][j] * yv[j];
      }
      double yhy = 0.0;
      for (int i = 0; i < n; ++i)
        yhy += yv[i] * hy[i];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          h[i][j] += -r * (hy[i] * s[j] + s[i] * hy[j]) +
                     r * (1.0 + r * yhy) * s[i] * s[j];
    }
  }

  out.gnorm = scaled_gnorm(g, n, f);
  for (int i = 0; i < n; ++i)
    out.at_boundary = out.at_boundary || std::fabs(z[i]) > kLogBoundary;
  if (!out.converged)
    out.converged = out.gnorm <= opts.grad_tol && !out.at_boundary;
  if (out.converged && out.at_boundary)
    out.converged = false;
  if (!out.converged && out.note.empty())
    out.note = "iteration cap reached";
  out.iterations = iter;
  out.ll = -f;
  std::copy(z, z + n, out.z);
  return out;
}

bool outcome_better(const BfgsOutcome& lhs, const BfgsOutcome& rhs, int n) {
  if (lhs.ll != rhs.ll)
    return lhs.ll > rhs.ll;
  for (int i = 0; i < n; ++i)
    if (lhs.z[i] != rhs.z[i])
      return lhs.z[i] < rhs.z[i];
  return false;
}

FitResult finish_fit(const Problem& prob, const BfgsOutcome& out,
                     SpecialCase model, int n_obs) {
  FitResult r;
  r.params = prob.params_from(out.z);
  r.log_likelihood = out.ll;
  r.iterations = out.iterations;
  r.converged = out.converged;
  r.gradient_norm = out.gnorm;
  r.model = model;
  r.n_obs = n_obs;
  r.at_boundary = out.at_boundary;
  r.diagnostic = out.note;

  bool interior = !out.at_boundary;
  for (std::size_t i = 0; i < prob.free.size() && interior; ++i)
    interior = std::fabs(out.z[i]) <= kLogBoundary;
  if (!out.feasible)
    return r;
  if (!interior) {
    if (!r.diagnostic.empty())
      r.diagnostic += "; ";
    r.diagnostic += "asymptotic covariance withheld at the boundary";
    return r;
  }
  try {
    InfoMatrix info = fisher_info(r.params);
    int nf = static_cast<int>(prob.free.size());
    Matrix sub;
    sub.n = nf;
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j)
        sub.at(i, j) =
            info.k[static_cast<std::size_t>(prob.free[static_cast<std::size_t>(i)])]
                  [static_cast<std::size_t>(prob.free[static_cast<std::size_t>(j)])];
    std::optional<Matrix> inv = spd_inverse(sub);
    if (!inv) {
      if (!r.diagnostic.empty())
        r.diagnostic += "; ";
      r.diagnostic += "information matrix not positive definite, covariance unavailable";
      return r;
    }
    for (int i = 0; i < inv->n; ++i)
      for (int j = 0; j < inv->n; ++j)
        inv->at(i, j) /= static_cast<double>(n_obs);
    r.covariance = *inv;
  } catch (const std::exception& ex) {
    if (!r.diagnostic.empty())
      r.diagnostic += "; ";
    r.diagnostic += std::string("covariance unavailable: ") + ex.what();
  }
  return r;
}

// First start, then (only if it fails and multistart is on) the rest of the
// candidates; converged candidates win by log-likelihood with lexicographic
// ties, and when none converges the primary start's outcome is reported.
FitResult run_fit(const Problem& prob, SpecialCase model,
                  const std::vector<std::array<double, 4>>& starts,
                  const FitOptions& opts) {
  const int n_obs = static_cast<int>(prob.y->size());
  BfgsOutcome primary = bfgs_maximize(prob, starts[0].data(), opts);
  if (primary.converged || !opts.multistart || starts.size() == 1)
    return finish_fit(prob, primary, model, n_obs);

  const int n = static_cast<int>(prob.free.size());
  std::vector<BfgsOutcome> outcomes(starts.size() - 1);
  const std::int64_t m = static_cast<std::int64_t>(outcomes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t i = 0; i < m; ++i)
    outcomes[static_cast<std::size_t>(i)] =
        bfgs_maximize(prob, starts[static_cast<std::size_t>(i) + 1].data(), opts);

  const BfgsOutcome* best = nullptr;
  for (const BfgsOutcome& cand : outcomes) {
    if (!cand.converged)
      continue;
    if (!best || outcome_better(cand, *best, n))
      best = &cand;
  }
  if (!best)
    return finish_fit(prob, primary, model, n_obs);
  return finish_fit(prob, *best, model, n_obs);
}

struct WeibullInit {
  double c0;
  double lambda0;
};

// Moment matching on log scale: for Weibull data, Var(log Y) = pi^2/(6 c^2)
// and E(log Y) = -log lambda - gamma/c.
WeibullInit weibull_moment_init(const std::vector<double>& y) {
  double n = static_cast<double>(y.size());
  double mean_log = 0.0;
  for (double v : y)
    mean_log += std::log(v);
  mean_log /= n;
  double var_log = 0.0;
  for (double v : y) {
    double d = std::log(v) - mean_log;
    var_log += d * d;
  }
  var_log /= std::max(1.0, n - 1.0);
  double sd = std::sqrt(var_log);
  double c0 = sd > 1e-12 ? M_PI / (sd * std::sqrt(6.0)) : 1.0;
  double lambda0 = std::exp(-mean_log - kEulerGamma / c0);
  return {c0, lambda0};
}

std::array<double, 4> start_from(const Problem& prob, const BwParams& p) {
  std::array<double, 4> z{};
  const double theta[4] = {p.a, p.b, p.c, p.lambda};
  for (std::size_t i = 0; i < prob.free.size(); ++i)
    z[i] = std::log(theta[prob.free[i]]);
  return z;
}

}  // namespace

void Dataset::validate() const {
  if (observations.empty())
    throw std::domain_error("empty dataset");
  for (std::size_t i = 0; i < observations.size(); ++i) {
    double v = observations[i];
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::domain_error("observation " + std::to_string(i + 1) +
                              " is not a positive finite number");
  }
}

double log_likelihood(const BwParams& p, const Dataset& data) {
  data.validate();
  return batch::log_likelihood_serial(p, data.observations);
}

std::array<double, 4> score(const BwParams& p, const Dataset& data) {
  data.validate();
  return batch::score_serial(p, data.observations);
}

std::vector<int> free_param_indices(SpecialCase model) {
  switch (model) {
    case SpecialCase::BetaWeibull: return {0, 1, 2, 3};
    case SpecialCase::ExponentiatedWeibull: return {0, 2, 3};
    case SpecialCase::BetaExponential: return {0, 1, 3};
    case SpecialCase::Weibull:
    case SpecialCase::StandardWeibull: return {2, 3};
    case SpecialCase::Exponential: return {3};
  }
  throw std::logic_error("unknown model");
}

FitResult fit_bw(const Dataset& data, const std::optional<BwParams>& init,
                 const FitOptions& opts) {
  data.validate();
  Problem prob;
  prob.y = &data.observations;
  prob.free = {0, 1, 2, 3};

  WeibullInit w = weibull_moment_init(data.observations);
  FitResult wfit = fit_submodel(data, SpecialCase::StandardWeibull, std::nullopt, opts);
  double cw = wfit.converged ? wfit.params.c : w.c0;
  double lw = wfit.converged ? wfit.params.lambda : w.lambda0;

  std::vector<std::array<double, 4>> starts;
  if (init) {
    init->validate();
    starts.push_back(start_from(prob, *init));
  } else {
    starts.push_back(start_from(prob, {0.9, 0.9, cw, lw}));
  }
  for (double a0 : {0.1, 1.0, 5.0})
    for (double b0 : {0.1, 1.0, 5.0})
      for (double cm : {0.5, 1.0, 2.0})
        starts.push_back(start_from(prob, {a0, b0, cw * cm, lw}));
  return run_fit(prob, SpecialCase::BetaWeibull, starts, opts);
}

FitResult fit_submodel(const Dataset& data, SpecialCase model,
                       const std::optional<BwParams>& init,
                       const FitOptions& opts) {
  data.validate();
  Problem prob;
  prob.y = &data.observations;
  prob.free = free_param_indices(model);
  std::vector<std::array<double, 4>> starts;
  WeibullInit w = weibull_moment_init(data.observations);

  switch (model) {
    case SpecialCase::StandardWeibull: {
      prob.base = {1.0, 1.0, 1.0, 1.0};
      starts.push_back(start_from(prob, {1.0, 1.0, w.c0, w.lambda0}));
      for (double cm : {0.25, 0.5, 2.0, 4.0})
        starts.push_back(start_from(prob, {1.0, 1.0, w.c0 * cm, w.lambda0}));
      break;
    }
    case SpecialCase::ExponentiatedWeibull: {
      prob.base = {1.0, 1.0, 1.0, 1.0};
      starts.push_back(start_from(prob, {0.9, 1.0, w.c0, w.lambda0}));
      for (double a0 : {0.1, 1.0, 5.0})
        for (double cm : {0.5, 1.0, 2.0})
          starts.push_back(start_from(prob, {a0, 1.0, w.c0 * cm, w.lambda0}));
      break;
    }
    case SpecialCase::BetaExponential: {
      prob.base = {1.0, 1.0, 1.0, 1.0};
      double mean = 0.0;
      for (double v : data.observations)
        mean += v;
      mean /= static_cast<double>(data.observations.size());
      double l0 = 1.0 / mean;
      starts.push_back(start_from(prob, {0.9, 0.9, 1.0, l0}));
      for (double a0 : {0.1, 1.0, 5.0})
        for (double b0 : {0.1, 1.0, 5.0})
          starts.push_back(start_from(prob, {a0, b0, 1.0, l0}));
      break;
    }
    default:
      throw std::invalid_argument(
          "fit_submodel supports standard-weibull, exponentiated-weibull and "
          "beta-exponential");
  }
  if (init) {
    init->validate();
    starts.insert(starts.begin(), start_from(prob, *init));
  }
  return run_fit(prob, model, starts, opts);
}

std::optional<Matrix> invert_spd(const Matrix& m) {
  return spd_inverse(m);
}

Matrix to_matrix(const InfoMatrix& info) {
  Matrix m;
  m.n = 4;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m.at(i, j) = info.k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

InfoMatrix fisher_info(const BwParams& p, FisherRoute route) {
  p.validate();
  const double a = p.a, b = p.b, c = p.c, lam = p.lambda;
  const double bab = specfun::beta(a, b);
  const double tri_ab = specfun::trigamma(a + b);

  InfoMatrix m;
  auto& k = m.k;
  k[0][0] = specfun::trigamma(a) - tri_ab;
  k[0][1] = -tri_ab;
  k[0][2] = -moments::st_integral_weighted(2, b + 1, a - 1, 1, nullptr) / (c * bab);
  k[0][3] =
      -c * moments::st_integral_weighted(2, b + 1, a - 1, 0, nullptr) / (lam * bab);
  k[1][1] = specfun::trigamma(b) - tri_ab;
  k[1][2] = moments::st_integral_weighted(2, b, a, 1, nullptr) / (c * bab);
  k[1][3] = c * moments::st_integral_weighted(2, b, a, 0, nullptr) / (lam * bab);

  bool combined =
      route == FisherRoute::Combined || (route == FisherRoute::Auto && a <= 2.0);
  double n1, n2;
  if (combined) {
    auto rest = [a, b](double x) {
      return (a - 1.0) * phi_rho(x) + (a + b - 1.0);
    };
    n2 = moments::st_integral_weighted(2, b, a, 2, rest);
    n1 = moments::st_integral_weighted(2, b, a, 1, rest);
  } else {
    auto combo = [&](int e) {
      return (a - 1.0) * moments::st_integral_weighted(3, b + 1, a - 2, e, nullptr) +
             b * moments::st_integral_weighted(2, b, a - 2, e, nullptr) -
             (a + 2.0 * b - 1.0) *
                 moments::st_integral_weighted(2, b + 1, a - 2, e, nullptr) +
             (a + b - 1.0) *
                 moments::st_integral_weighted(2, b + 2, a - 2, e, nullptr);
    };
    n2 = combo(2);
    n1 = combo(1);
  }
  k[2][2] = 1.0 / (c * c) + n2 / (c * c * bab);
  k[2][3] = n1 / (lam * bab);

  double s3 =
      a == 1.0 ? 0.0 : moments::st_integral_weighted(3, b + 1, a - 2, 0, nullptr);
  k[3][3] = c * c / (lam * lam) + c * c * (a - 1.0) * s3 / (lam * lam * bab);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < i; ++j)
      k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          k[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return m;
}

TestResult lr_test(const FitResult& full, const FitResult& restricted, int df) {
  if (df < 1)
    throw std::domain_error("df must be a positive integer");
  double stat = 2.0 * (full.log_likelihood - restricted.log_likelihood);
  if (stat < -1e-8)
    throw std::runtime_error(
        "negative LR statistic: the full model's optimizer failed to dominate "
        "the restricted one");
  stat = std::max(stat, 0.0);
  return {stat, df, specfun::chi2_sf(stat, df), TestKind::LR};
}

TestResult wald_test(const FitResult& fit, const std::vector<PinnedParam>& pinned) {
  if (pinned.empty())
    throw std::domain_error("pinned parameter set must be non-empty");
  if (!fit.covariance)
    throw std::runtime_error("fit carries no covariance matrix");
  std::vector<int> free = free_param_indices(fit.model);
  const Matrix& cov = *fit.covariance;
  if (cov.n != static_cast<int>(free.size()))
    throw std::logic_error("covariance dimension does not match the model");

  const double theta[4] = {fit.params.a, fit.params.b, fit.params.c,
                           fit.params.lambda};
  const int ns = static_cast<int>(pinned.size());
  Matrix sub;
  sub.n = ns;
  double delta[4] = {0.0, 0.0, 0.0, 0.0};
  int pos[4] = {0, 0, 0, 0};
  for (int i = 0; i < ns; ++i) {
    int idx = pinned[static_cast<std::size_t>(i)].index;
    auto it = std::find(free.begin(), free.end(), idx);
    if (idx < 0 || idx > 3 || it == free.end())
      throw std::invalid_argument(
          "pinned parameter is not free in the fitted model");
    for (int j = 0; j < i; ++j)
      if (pinned[static_cast<std::size_t>(j)].index == idx)
        throw std::invalid_argument("pinned parameter listed twice");
    pos[i] = static_cast<int>(it - free.begin());
    delta[i] = theta[idx] - pinned[static_cast<std::size_t>(i)].value;
  }
  for (int i = 0; i < ns; ++i)
    for (int j = 0; j < ns; ++j)
      sub.at(i, j) = cov.at(pos[i], pos[j]);

  Matrix l = sub;
  if (!cholesky(l))
    throw std::runtime_error("singular covariance sub-block");
  double w[4];
  chol_solve(l, delta, w);
  double stat = 0.0;
  for (int i = 0; i < ns; ++i)
    stat += delta[i] * w[i];
  return {stat, ns, specfun::chi2_sf(stat, ns), TestKind::Wald};
}

}  // namespace bw::inference
