#include "bw/distribution.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "bw/specfun.hpp"

namespace bw {

namespace {

bool is_positive_integer(double x) {
  return x == std::round(x) && x >= 1.0;
}

// u = (lambda x)^c computed through logs; the direct pow under/overflows for
// the shape/rate combinations this distribution is actually used with.
double log_u_of(const BwParams& p, double x) {
  return p.c * (std::log(p.lambda) + std::log(x));
}

void require_x_positive(double x) {
  if (!(x > 0.0))
    throw std::domain_error("x must be positive");
}

void require_x_nonnegative(double x) {
  if (!(x >= 0.0))
    throw std::domain_error("x must be non-negative");
}

// log(1 - e^{-u}) given log u, accurate over the whole line.
double log1mexp_from_log(double log_u) {
  if (log_u < -37.0)
    return log_u;  // 1 - e^{-u} = u to full precision here
  double u = std::exp(log_u);
  if (u > 745.0)
    return 0.0;
  return std::log(-std::expm1(-u));
}

}  // namespace

void BwParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a) || !(b > 0.0) || !std::isfinite(b) ||
      !(c > 0.0) || !std::isfinite(c) || !(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("all four parameters must be strictly positive and finite");
}

const char* special_case_name(SpecialCase sc) {
  switch (sc) {
    case SpecialCase::BetaWeibull: return "beta-weibull";
    case SpecialCase::ExponentiatedWeibull: return "exponentiated-weibull";
    case SpecialCase::Weibull: return "weibull";
    case SpecialCase::BetaExponential: return "beta-exponential";
    case SpecialCase::StandardWeibull: return "standard-weibull";
    case SpecialCase::Exponential: return "exponential";
  }
  return "unknown";
}

SpecialCase classify(const BwParams& p) {
  p.validate();
  // Most specific first; comparisons are exact by contract.
  if (p.a == 1.0 && p.b == 1.0 && p.c == 1.0) return SpecialCase::Exponential;
  if (p.a == 1.0 && p.b == 1.0) return SpecialCase::StandardWeibull;
  if (p.a == 1.0) return SpecialCase::Weibull;
  if (p.b == 1.0) return SpecialCase::ExponentiatedWeibull;
  if (p.c == 1.0) return SpecialCase::BetaExponential;
  return SpecialCase::BetaWeibull;
}

double log_pdf(const BwParams& p, double x) {
  p.validate();
  require_x_positive(x);
  double log_u = log_u_of(p, x);
  double u = std::exp(log_u);  // +inf is fine: -b*u drives the result to -inf
  return std::log(p.c) + p.c * std::log(p.lambda) + (p.c - 1.0) * std::log(x) -
         p.b * u + (p.a - 1.0) * log1mexp_from_log(log_u) -
         specfun::ln_beta(p.a, p.b);
}

double pdf(const BwParams& p, double x) {
  return std::exp(log_pdf(p, x));
}

double cdf(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  double y = -std::expm1(-u);
  if (y <= 0.0) return 0.0;  // u underflowed entirely
  // Past the median of the argument, 1 - e^{-u} loses the digits that the
  // upper tail lives on; switch to the complement through the reflection
  // identity I_y(a,b) = 1 - I_{1-y}(b,a) with 1 - y = e^{-u} computed exactly.
  if (y <= 0.5)
    return specfun::inc_beta_ratio(y, p.a, p.b);
  return 1.0 - specfun::inc_beta_ratio(std::exp(-u), p.b, p.a);
}

double survival(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (x == 0.0) return 1.0;
  double u = std::exp(log_u_of(p, x));
  double y = -std::expm1(-u);
  if (y <= 0.0) return 1.0;
  if (y <= 0.5)
    return 1.0 - specfun::inc_beta_ratio(y, p.a, p.b);
  return specfun::inc_beta_ratio(std::exp(-u), p.b, p.a);
}

double hazard(const BwParams& p, double x) {
  require_x_positive(x);
  double s = survival(p, x);
  if (s < 1e-300)
    throw std::overflow_error("hazard overflows: survival below 1e-300");
  return std::exp(log_pdf(p, x) - std::log(s));
}

double quantile(const BwParams& p, double q) {
  p.validate();
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("quantile level must lie in (0,1)");
  // Invert the beta layer, then the Weibull transform u = (lambda x)^c.
  // For q past one half, solve for the complement 1-y directly: -log of it
  // is then exact where -log1p(-y) would have no digits left.
  double u;
  if (q <= 0.5) {
    double y = specfun::inc_beta_ratio_inv(q, p.a, p.b);
    u = -std::log1p(-y);
  } else {
    double yc = specfun::inc_beta_ratio_inv(1.0 - q, p.b, p.a);
    u = -std::log(yc);
  }
  return std::exp(std::log(u) / p.c) / p.lambda;
}

quad::SeriesResult cdf_series_real_a(const BwParams& p, double x, double tol) {
  p.validate();
  require_x_nonnegative(x);
  if (is_positive_integer(p.a))
    throw std::domain_error("series form is undefined at integer a (poles of Gamma(a-j))");
  if (x == 0.0)
    return {0.0, 0, 0.0, true};
  double u = std::exp(log_u_of(p, x));
  double inv_beta = std::exp(-specfun::ln_beta(p.a, p.b));
  // Signed binomial weights via the recurrence s_{j+1} = s_j (j+1-a)/(j+1),
  // i.e. s_j = (-1)^j C(a-1, j); the term function is consumed in order.
  // Each defining term splits as {1 - e^{-(b+j)u}}/(b+j) = 1/(b+j) minus an
  // exponential part, and the 1/(b+j) parts sum to B(a,b) exactly, so only
  // the geometrically decaying exponentials are summed numerically. Summing
  // the unsplit terms would converge like j^{-a-1}, hopeless for small a.
  double s = 1.0;
  std::int64_t j_state = 0;
  auto term = [&](std::int64_t j) {
    if (j != j_state)
      throw std::logic_error("series terms must be consumed in order");
    double bj = p.b + static_cast<double>(j);
    double t = -s * inv_beta * std::exp(-bj * u) / bj;
    s *= (static_cast<double>(j) + 1.0 - p.a) / (static_cast<double>(j) + 1.0);
    ++j_state;
    return t;
  };
  std::int64_t min_terms = static_cast<std::int64_t>(std::ceil(p.a)) + 2;
  // Term ratios are below e^{-u}, so the tail after a term t is at most
  // |t|/(e^u - 1); shrink the per-term tolerance accordingly to make tol an
  // honest bound on the truncation error of the returned value.
  double term_tol = tol * std::min(1.0, std::expm1(u));
  quad::SeriesResult r = quad::sum_alternating_series(term, term_tol, min_terms);
  r.value += 1.0;
  return r;
}

double cdf_binomial_int_a(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (!is_positive_integer(p.a))
    throw std::domain_error("binomial form requires integer a");
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  double inv_beta = std::exp(-specfun::ln_beta(p.a, p.b));
  int n = static_cast<int>(p.a);
  double sum = 0.0;
  double s = 1.0;  // (-1)^j C(a-1, j)
  for (int j = 0; j < n; ++j) {
    double bj = p.b + j;
    sum += s * (-std::expm1(-bj * u)) / bj;
    s *= (static_cast<double>(j) + 1.0 - p.a) / (static_cast<double>(j) + 1.0);
  }
  return inv_beta * sum;
}

double cdf_binomial_int_ab(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (!is_positive_integer(p.a) || !is_positive_integer(p.b))
    throw std::domain_error("binomial-tail form requires integer a and b");
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  double log_y = log1mexp_from_log(log_u_of(p, x));
  int a = static_cast<int>(p.a);
  int n = a + static_cast<int>(p.b) - 1;
  double sum = 0.0;
  for (int j = a; j <= n; ++j) {
    double log_binom = specfun::ln_gamma(n + 1.0) - specfun::ln_gamma(j + 1.0) -
                       specfun::ln_gamma(n - j + 1.0);
    sum += std::exp(log_binom + j * log_y - (n - j) * u);
  }
  return sum;
}

double cdf_int_a_complement(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (!is_positive_integer(p.a))
    throw std::domain_error("complement form requires integer a");
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  double y = -std::expm1(-u);
  int a = static_cast<int>(p.a);
  // t_j = e^{-bu} Gamma(b+j) y^j / (Gamma(b) j!), built by a running product.
  double t = std::exp(-p.b * u);
  double sum = t;
  for (int j = 1; j < a; ++j) {
    t *= (p.b + (j - 1)) * y / j;
    sum += t;
  }
  return 1.0 - sum;
}

double cdf_int_b(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (!is_positive_integer(p.b))
    throw std::domain_error("this form requires integer b");
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  double log_y = log1mexp_from_log(log_u_of(p, x));
  int b = static_cast<int>(p.b);
  double t = std::exp(p.a * log_y);
  double sum = t;
  double z = std::exp(-u);
  for (int j = 1; j < b; ++j) {
    t *= (p.a + (j - 1)) * z / j;
    sum += t;
  }
  return sum;
}

double cdf_arctan_half_half(const BwParams& p, double x) {
  p.validate();
  require_x_nonnegative(x);
  if (!(p.a == 0.5 && p.b == 0.5))
    throw std::domain_error("arctan form requires a = b = 1/2");
  if (x == 0.0) return 0.0;
  double u = std::exp(log_u_of(p, x));
  return (2.0 / M_PI) * std::atan(std::sqrt(std::expm1(u)));
}

double sample_one(const BwParams& p, Rng& rng) {
  return sample_one_with(p, rng);
}

std::vector<double> sample(const BwParams& p, Rng& rng, std::size_t n) {
  p.validate();
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(sample_one(p, rng));
  return out;
}

}  // namespace bw
