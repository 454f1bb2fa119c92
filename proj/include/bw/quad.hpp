#pragma once

#include <cstdint>
#include <functional>

// Adaptive Gauss-Kronrod quadrature and series summation. These are the
// workhorses behind the moment integrals and also serve as independent
// oracles for every series identity in the test suite.

namespace bw::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int subdivisions = 0;
};

struct SeriesResult {
  double value = 0.0;
  std::int64_t terms_used = 0;
  double last_term_magnitude = 0.0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;
using TermFn = std::function<double(std::int64_t)>;

// Integrates f over a finite interval [lo, hi]. Endpoint singularities are
// fine as long as they are integrable; nodes never touch the endpoints.
// Refines until abs_error_estimate <= tol, except that when rounding noise
// dominates the estimates it returns the best achieved result, so
// abs_error_estimate is the authority, not tol.
QuadResult integrate_interval(const Integrand& f, double lo, double hi, double tol);

// Integrates f over (0,1).
QuadResult integrate_unit_interval(const Integrand& f, double tol);

// Integrates f over (0,inf): directly on (0,1), then through the
// substitution x = 1 - log z on (1,inf).
QuadResult integrate_semi_infinite(const Integrand& f, double tol);

// Sums term(0) + term(1) + ... with the stopping rule: j >= min_terms and
// |term(j)| <= tol * max(1, |partial sum|) for two consecutive j. Terms are
// requested in order. Gives up (converged=false, no throw) after 1e5 terms.
SeriesResult sum_alternating_series(const TermFn& term, double tol, std::int64_t min_terms);

}  // namespace bw::quad
