#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bw/quad.hpp"
#include "bw/rng.hpp"

// The beta Weibull distribution: density, distribution function in all of
// its closed and series representations, hazard, quantile, sampling, and
// classification of the nested special cases.

namespace bw {

struct BwParams {
  double a;       // first beta shape
  double b;       // second beta shape
  double c;       // Weibull shape
  double lambda;  // Weibull rate, units 1/time

  // Throws std::domain_error unless all four are strictly positive and finite.
  void validate() const;
};

enum class SpecialCase {
  BetaWeibull,
  ExponentiatedWeibull,  // b = 1
  Weibull,               // a = 1, any b (rate rescales to lambda * b^{1/c})
  BetaExponential,       // c = 1
  StandardWeibull,       // a = b = 1
  Exponential,           // a = b = c = 1
};

const char* special_case_name(SpecialCase sc);

// Exact-equality classification; no fuzzy matching.
SpecialCase classify(const BwParams& p);

// log f(x); -inf where the density underflows. x > 0 required.
double log_pdf(const BwParams& p, double x);
double pdf(const BwParams& p, double x);

// F(x) = I_{1-exp{-(lambda x)^c}}(a, b). x >= 0 required.
double cdf(const BwParams& p, double x);

// 1 - F(x), computed on whichever side of the incomplete beta avoids
// cancellation; stays accurate deep into the upper tail.
double survival(const BwParams& p, double x);

// pdf / survival. Signals overflow once survival drops below 1e-300.
double hazard(const BwParams& p, double x);

// Inverse cdf for q in (0,1).
double quantile(const BwParams& p, double q);

// Series form of the cdf for non-integer a: the alternating sum
// Gamma(a+b)/Gamma(b) sum_j (-1)^j {1-e^{-(b+j)u}} / (Gamma(a-j) j! (b+j)).
// tol bounds the truncation error of the returned value; converged=false
// means the term cap was hit first, which happens for (lambda x)^c near 0.
quad::SeriesResult cdf_series_real_a(const BwParams& p, double x, double tol);

// Finite binomial sum over j = 0..a-1; integer a only.
double cdf_binomial_int_a(const BwParams& p, double x);

// Binomial-tail form for integer a and b with n = a + b - 1.
double cdf_binomial_int_ab(const BwParams& p, double x);

// Complement form 1 - e^{-bu} sum_j Gamma(b+j)/(Gamma(b) j!) (1-e^{-u})^j;
// integer a only.
double cdf_int_a_complement(const BwParams& p, double x);

// (1-e^{-u})^a sum_j Gamma(a+j)/(Gamma(a) j!) e^{-ju}; integer b only.
double cdf_int_b(const BwParams& p, double x);

// (2/pi) arctan sqrt(e^u - 1); a = b = 1/2 only.
double cdf_arctan_half_half(const BwParams& p, double x);

// One draw via the beta-variate transform X = {-log(1-B)}^{1/c}/lambda,
// usable with any of the rng engines.
template <class R>
double sample_one_with(const BwParams& p, R& rng) {
  double v = rng.beta_neglog1m(p.a, p.b);
  return std::exp(std::log(v) / p.c) / p.lambda;
}

double sample_one(const BwParams& p, Rng& rng);
std::vector<double> sample(const BwParams& p, Rng& rng, std::size_t n);

}  // namespace bw
