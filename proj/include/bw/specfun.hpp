#pragma once

// Gamma/beta special functions used throughout the library.
// All functions are pure, thread-safe, and throw std::domain_error on
// arguments outside their stated domains (NaN included).

namespace bw::specfun {

// log Gamma(x) for x > 0.
double ln_gamma(double x);

// psi(x) = d/dx log Gamma(x) for x > 0.
double digamma(double x);

// psi'(x) for x > 0.
double trigamma(double x);

// B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b) and its logarithm, a,b > 0.
double beta(double a, double b);
double ln_beta(double a, double b);

// Regularized incomplete beta I_y(a,b), y in [0,1], a,b > 0.
double inc_beta_ratio(double y, double a, double b);

// Inverse of inc_beta_ratio in y for fixed (a,b).
double inc_beta_ratio_inv(double p, double a, double b);

// Regularized incomplete gamma P(s,x) (lower) and Q(s,x) (upper), s > 0, x >= 0.
double gamma_p(double s, double x);
double gamma_q(double s, double x);

// Upper tail of the chi-square distribution with df degrees of freedom.
double chi2_sf(double x, int df);

}  // namespace bw::specfun
