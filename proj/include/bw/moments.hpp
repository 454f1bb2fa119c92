#pragma once

#include <functional>

#include "bw/distribution.hpp"
#include "bw/quad.hpp"

// The integral family S_{d,b,a} = int_0^inf x^{d-1} e^{-bx} (1-e^{-x})^{a-1} dx,
// its log-weighted extension T (an extra (log x)^e factor), and everything
// built on them: raw and generalized moments, the mgf, skewness and kurtosis.

namespace bw::moments {

struct SIndex {
  double d;  // power index, x^{d-1}
  double b;  // exponential rate
  double a;  // shape on the (1-e^{-x}) factor

  // All three strictly positive and finite.
  void validate() const;
};

struct TIndex {
  double d;
  double b;
  double a;
  int e;  // log power, 0, 1 or 2

  void validate() const;
};

enum class SMethod { Series, Quadrature, ClosedForm };

// S_{d,b,a}. The series route expands (1-e^{-x})^{a-1} binomially (finite sum
// for integer a); closed_form is available for d = 1, 2, 3 only and throws
// std::invalid_argument otherwise. Throws std::domain_error when d + a <= 1,
// where the integral diverges at the origin.
double s_integral(const SIndex& idx, SMethod method);

// T_{d,b,a,e}, quadrature only. T_{d,b,a,0} = S_{d,b,a}.
double t_integral(const TIndex& idx);

// The raw quadrature engine behind both: integrates
//   x^{d-1} e^{-bx} (1-e^{-x})^{a-1} (log x)^e weight(x)
// over (0,inf). Unlike the public index types, a may be zero or negative as
// long as d + a > 1 keeps the origin integrable; the information-matrix
// entries need exactly that. weight may be empty; otherwise it must be smooth,
// bounded near 0 and polynomially bounded at infinity.
double st_integral_weighted(double d, double b, double a, int e,
                            const std::function<double(double)>& weight);

// E(X^r) = lambda^{-r} S_{r/c+1, b, a} / B(a,b). Requires r/c + 1 > 0 and
// r > -c*a (integrability at the origin).
double moment(const BwParams& p, double r);

// E(X^{kc}) in closed form for k = 1 (digammas) and k = 2 (trigammas);
// larger k falls back to moment(p, k*c).
double moment_kc(const BwParams& p, int k);

// Moment generating function. c = 1 has the closed form
// B(b - t/lambda, a)/B(a,b) for t < b*lambda; c > 1 converges for every t
// through the moment series; c < 1 diverges for any t != 0.
quad::SeriesResult mgf(const BwParams& p, double t, double tol);

// The moment series sum_r t^r E(X^r) / r! on its own, without the c = 1
// closed-form shortcut; needs c > 1, or c = 1 with |t| < b*lambda.
quad::SeriesResult mgf_series(const BwParams& p, double t, double tol);

// Standardized third and fourth central moments (kurtosis is the raw
// standardized moment, 9 for the exponential, not the excess). Throws
// std::runtime_error when forming the variance from raw moments loses more
// than six decimal digits to cancellation.
double skewness(const BwParams& p);
double kurtosis(const BwParams& p);

// int_0^1 z^p |log z|^q dz = Gamma(1+q) / (1+p)^{q+1} for p > -1, q >= 0.
double log_moment_integral(double p_exp, double q_exp);

}  // namespace bw::moments
