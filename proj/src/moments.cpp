#include "bw/moments.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "bw/specfun.hpp"

namespace bw::moments {

namespace {

using specfun::digamma;
using specfun::ln_gamma;
using specfun::trigamma;

bool is_positive_integer(double x) {
  return x == std::round(x) && x >= 1.0;
}

double neumaier(std::initializer_list<double> terms) {
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    double s = sum + t;
    if (std::fabs(sum) >= std::fabs(t))
      comp += (sum - s) + t;
    else
      comp += (t - s) + sum;
    sum = s;
  }
  return sum + comp;
}

// (1 - e^{-x})/x: the regular part of the kernel, 1 at the origin.
double rho(double x) {
  if (x > 1e-4)
    return -std::expm1(-x) / x;
  return 1.0 - x / 2.0 * (1.0 - x / 3.0 * (1.0 - x / 4.0));
}

double powlog(double lx, int e) {
  return e == 0 ? 1.0 : (e == 1 ? lx : lx * lx);
}

// ln Gamma(x+delta) - ln Gamma(x). The direct difference is fine until
// ln Gamma itself is so large that its rounding swamps the difference; past
// that, Stirling on the ratio.
double ln_gamma_diff(double x, double delta) {
  if (x < 1e6)
    return ln_gamma(x + delta) - ln_gamma(x);
  double r = delta / x;
  return delta * std::log(x) + (x + delta - 0.5) * std::log1p(r) - delta -
         delta / (12.0 * x * (x + delta));
}

// Series route, Gamma(d) sum_j (-1)^j C(a-1,j) (b+j)^{-d}. Integer a
// terminates at j = a; otherwise the terms settle into one sign decaying
// like j^{-a-d}, too slowly to truncate, so the head is summed directly and
// the tail from J = 256 on is handled by Euler-Maclaurin:
//   sum_{j>=J} h(j) = int_J^inf h + h(J)/2 - h'(J)/12 + O(h'''(J)).
double s_series(double d, double b, double a) {
  double ln_gd = ln_gamma(d);
  double sum = 0.0, comp = 0.0;
  double s = 1.0;  // (-1)^j C(a-1,j) by the recurrence s <- s (j+1-a)/(j+1)

  if (is_positive_integer(a)) {
    int n = static_cast<int>(a);
    for (int j = 0; j < n; ++j) {
      double term = s * std::exp(ln_gd - d * std::log(b + j));
      double t2 = sum + term;
      if (std::fabs(sum) >= std::fabs(term))
        comp += (sum - t2) + term;
      else
        comp += (term - t2) + sum;
      sum = t2;
      s *= (j + 1.0 - a) / (j + 1.0);
    }
    return sum + comp;
  }

  constexpr int kHead = 256;
  for (int j = 0; j < kHead; ++j) {
    double term = s * std::exp(ln_gd - d * std::log(b + j));
    if (!std::isfinite(term))
      return term;  // the sum itself is beyond double range
    double t2 = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t2) + term;
    else
      comp += (term - t2) + sum;
    sum = t2;
    s *= (j + 1.0 - a) / (j + 1.0);
  }
  double head = sum + comp;

  // |(-1)^j C(a-1,j)| = Gamma(a) |sin(pi a)|/pi * Gamma(j+1-a)/Gamma(j+1).
  double kJ = kHead;
  double sigma = s >= 0.0 ? 1.0 : -1.0;
  double ln_sin_fac =
      ln_gamma(a) + std::log(std::fabs(std::sin(M_PI * a))) - std::log(M_PI);
  double ln_hj = ln_sin_fac + ln_gamma(kJ + 1.0 - a) - ln_gamma(kJ + 1.0) +
                 ln_gd - d * std::log(b + kJ);
  double hj = sigma * std::exp(ln_hj);
  double hj_logderiv = digamma(kJ + 1.0 - a) - digamma(kJ + 1.0) - d / (b + kJ);

  // Tail integral with t = J v^{-1/(a+d-1)}, which turns the leading
  // algebraic decay into a constant on (0,1]; everything stays in log space
  // because t reaches magnitudes where h underflows while the substitution
  // factor overflows.
  double se = a + d - 1.0;
  double log_j = std::log(kJ);
  auto tail_f = [&](double v) {
    double log_t = log_j - std::log(v) / se;
    double expo;
    if (log_t > 40.0) {
      // g(t) = a log t and log(b+t) = log t to full precision out here; the
      // log t contributions cancel exactly.
      expo = ln_sin_fac + ln_gd - (se + 1.0) * log_j;
    } else {
      double t = std::exp(log_t);
      expo = ln_sin_fac - ln_gamma_diff(t + 1.0 - a, a) + ln_gd -
             d * std::log(b + t) + (se + 1.0) * (log_t - log_j);
    }
    return (kJ / se) * sigma * std::exp(expo);
  };
  double tail_tol = std::max(1e-15, 1e-12 * std::fabs(head));
  double tail_int = quad::integrate_unit_interval(tail_f, tail_tol).value;

  return head + tail_int + hj / 2.0 - hj * hj_logderiv / 12.0;
}

}  // namespace

void SIndex::validate() const {
  if (!(d > 0.0) || !std::isfinite(d) || !(b > 0.0) || !std::isfinite(b) ||
      !(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("S index requires d, b, a strictly positive and finite");
}

void TIndex::validate() const {
  if (!(d > 0.0) || !std::isfinite(d) || !(b > 0.0) || !std::isfinite(b) ||
      !(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("T index requires d, b, a strictly positive and finite");
  if (e < 0 || e > 2)
    throw std::domain_error("log power e must be 0, 1 or 2");
}

double st_integral_weighted(double d, double b, double a, int e,
                            const std::function<double(double)>& weight) {
  if (!(b > 0.0) || !std::isfinite(b) || !std::isfinite(d) || !std::isfinite(a))
    throw std::domain_error("integral requires finite d, a and positive b");
  if (!(d + a > 1.0))
    throw std::domain_error("divergent integral: x^{d+a-2} is not integrable at the origin");
  if (e < 0 || e > 2)
    throw std::domain_error("log power e must be 0, 1 or 2");

  // (0,1): u = x^s with s = d+a-1 absorbs the whole algebraic factor
  // x^{d+a-2} into du, leaving a bounded integrand (up to log powers).
  double s = d + a - 1.0;
  auto left = [&](double u) {
    double lx = std::log(u) / s;
    double x = std::exp(lx);
    double val = std::exp(-b * x) * std::pow(rho(x), a - 1.0) * powlog(lx, e) / s;
    if (weight)
      val *= weight(x);
    return val;
  };

  // (1,inf): z = e^{-b(x-1)} folds the exponential decay into the measure,
  // so slow rates (small b) cost refinement instead of a truncation error.
  auto right = [&](double z) {
    double x = 1.0 - std::log(z) / b;
    double val = std::exp((d - 1.0) * std::log(x)) *
                 std::pow(-std::expm1(-x), a - 1.0) * powlog(std::log(x), e);
    if (weight)
      val *= weight(x);
    return val;
  };
  double pref = std::exp(-b) / b;

  // First pass at no tolerance yields the root-panel magnitude, which sets
  // an absolute tolerance worth eleven relative digits for the second.
  double probe1 = std::fabs(quad::integrate_unit_interval(left, 1e300).value);
  double probe2 = std::fabs(quad::integrate_unit_interval(right, 1e300).value);
  double scale = std::max({probe1, pref * probe2, 1.0});
  double v1 = quad::integrate_unit_interval(left, 1e-11 * scale).value;
  double v2 = quad::integrate_unit_interval(right, 1e-11 * scale / pref).value;
  return v1 + pref * v2;
}

double s_integral(const SIndex& idx, SMethod method) {
  idx.validate();
  if (!(idx.d + idx.a > 1.0))
    throw std::domain_error("divergent integral: x^{d+a-2} is not integrable at the origin");
  switch (method) {
    case SMethod::ClosedForm: {
      double bab = specfun::beta(idx.a, idx.b);
      if (idx.d == 1.0)
        return bab;
      double dig = digamma(idx.a + idx.b) - digamma(idx.b);
      if (idx.d == 2.0)
        return bab * dig;
      if (idx.d == 3.0)
        return bab * (trigamma(idx.b) - trigamma(idx.a + idx.b) + dig * dig);
      throw std::invalid_argument("closed form is known only for d = 1, 2, 3");
    }
    case SMethod::Series:
      // Binomial cancellation grows like 2^a; past a = 40 every digit is gone.
      if (idx.a > 40.0)
        throw std::domain_error("series route loses all precision for a > 40; use quadrature");
      return s_series(idx.d, idx.b, idx.a);
    case SMethod::Quadrature:
      return st_integral_weighted(idx.d, idx.b, idx.a, 0, nullptr);
  }
  throw std::logic_error("unreachable");
}

double t_integral(const TIndex& idx) {
  idx.validate();
  if (!(idx.d + idx.a > 1.0))
    throw std::domain_error("divergent integral: x^{d+a-2} is not integrable at the origin");
  return st_integral_weighted(idx.d, idx.b, idx.a, idx.e, nullptr);
}

double moment(const BwParams& p, double r) {
  p.validate();
  if (!std::isfinite(r))
    throw std::domain_error("moment order must be finite");
  double d = r / p.c + 1.0;
  if (!(d > 0.0) || !(d + p.a > 1.0))
    throw std::domain_error("moment exists only for r/c + 1 > 0 and r > -c*a");
  if (r == 0.0)
    return 1.0;
  SIndex idx{d, p.b, p.a};
  SMethod m = p.a <= 25.0 ? SMethod::Series : SMethod::Quadrature;
  double s = s_integral(idx, m);
  return std::exp(-r * std::log(p.lambda)) * s / specfun::beta(p.a, p.b);
}

double moment_kc(const BwParams& p, int k) {
  p.validate();
  if (k < 1)
    throw std::domain_error("k must be a positive integer");
  if (k == 1) {
    return (digamma(p.a + p.b) - digamma(p.b)) *
           std::exp(-p.c * std::log(p.lambda));
  }
  if (k == 2) {
    double dig = digamma(p.a + p.b) - digamma(p.b);
    return (trigamma(p.b) - trigamma(p.a + p.b) + dig * dig) *
           std::exp(-2.0 * p.c * std::log(p.lambda));
  }
  return moment(p, k * p.c);
}

quad::SeriesResult mgf_series(const BwParams& p, double t, double tol) {
  p.validate();
  if (!(tol > 0.0))
    throw std::domain_error("series tolerance must be positive");
  if (t == 0.0)
    return {1.0, 1, 0.0, true};
  if (p.c < 1.0)
    throw std::domain_error("mgf moment series diverges for c < 1 at any t != 0");
  if (p.c == 1.0 && std::fabs(t) >= p.b * p.lambda)
    throw std::domain_error("mgf series for c = 1 converges only for |t| < b*lambda");

  double sum = 1.0, comp = 0.0;  // r = 0 term
  double log_abs_t = std::log(std::fabs(t));
  double log_r_fact = 0.0;
  double last = 1.0;
  int small_streak = 0;
  constexpr int kCap = 400;
  for (int r = 1; r <= kCap; ++r) {
    log_r_fact += std::log(static_cast<double>(r));
    double sign = (t < 0.0 && r % 2 == 1) ? -1.0 : 1.0;
    double term = sign * std::exp(r * log_abs_t - log_r_fact) * moment(p, r);
    if (!std::isfinite(term))
      throw std::overflow_error("mgf series term overflowed; |t| is too large for this c");
    double s2 = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - s2) + term;
    else
      comp += (term - s2) + sum;
    sum = s2;
    last = std::fabs(term);
    if (last <= tol * std::max(1.0, std::fabs(sum + comp)))
      ++small_streak;
    else
      small_streak = 0;
    if (small_streak >= 2)
      return {sum + comp, r + 1, last, true};
  }
  return {sum + comp, kCap + 1, last, false};
}

quad::SeriesResult mgf(const BwParams& p, double t, double tol) {
  p.validate();
  if (!(tol > 0.0))
    throw std::domain_error("series tolerance must be positive");
  if (t == 0.0)
    return {1.0, 1, 0.0, true};
  if (p.c == 1.0) {
    if (t >= p.b * p.lambda)
      throw std::domain_error("mgf does not exist for t >= b*lambda when c = 1");
    double value = std::exp(specfun::ln_beta(p.b - t / p.lambda, p.a) -
                            specfun::ln_beta(p.a, p.b));
    return {value, 1, 0.0, true};
  }
  if (p.c < 1.0)
    throw std::domain_error("mgf series diverges for c < 1; only t = 0 is defined");
  return mgf_series(p, t, tol);
}

namespace {

struct CentralMoments {
  double mu2, mu3, mu4;
};

CentralMoments central_moments(const BwParams& p) {
  double m1 = moment(p, 1.0);
  double m2 = moment(p, 2.0);
  double m3 = moment(p, 3.0);
  double m4 = moment(p, 4.0);
  double mu2 = neumaier({m2, -m1 * m1});
  if (!(mu2 > 0.0) || mu2 < 1e-6 * m2)
    throw std::runtime_error(
        "variance lost more than six decimal digits to raw-moment cancellation");
  double mu3 = neumaier({m3, -3.0 * m1 * m2, 2.0 * m1 * m1 * m1});
  double mu4 = neumaier(
      {m4, -4.0 * m1 * m3, 6.0 * m1 * m1 * m2, -3.0 * m1 * m1 * m1 * m1});
  return {mu2, mu3, mu4};
}

}  // namespace

double skewness(const BwParams& p) {
  CentralMoments cm = central_moments(p);
  return cm.mu3 / std::pow(cm.mu2, 1.5);
}

double kurtosis(const BwParams& p) {
  CentralMoments cm = central_moments(p);
  return cm.mu4 / (cm.mu2 * cm.mu2);
}

double log_moment_integral(double p_exp, double q_exp) {
  if (!(p_exp > -1.0))
    throw std::domain_error("requires p > -1");
  if (!(q_exp >= 0.0))
    throw std::domain_error("requires q >= 0");
  return std::exp(ln_gamma(1.0 + q_exp) - (q_exp + 1.0) * std::log1p(p_exp));
}

}  // namespace bw::moments
