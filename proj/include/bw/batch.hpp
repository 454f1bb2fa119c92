#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "bw/distribution.hpp"

// Bulk kernels over whole datasets: log-likelihood and score sums, curve
// grids, and stream sampling. Each kernel comes in a serial and an OpenMP
// variant that produce bitwise-identical results: work is cut into fixed
// 1024-element blocks, each block is summed on its own, and the per-block
// partials are reduced serially in index order, so the result never depends
// on the thread schedule. Without OpenMP the parallel variants degrade to
// the serial ones.

namespace bw::batch {

// Sum of log pdf(y_i); -inf when any term underflows, never NaN. Observations
// must be strictly positive (callers validate; see inference::Dataset).
double log_likelihood_serial(const BwParams& p, const std::vector<double>& y);
double log_likelihood_parallel(const BwParams& p, const std::vector<double>& y);

// Score vector (d/da, d/db, d/dc, d/dlambda) summed over observations.
// Throws std::overflow_error when (lambda*y)^c overflows for some y.
std::array<double, 4> score_serial(const BwParams& p, const std::vector<double>& y);
std::array<double, 4> score_parallel(const BwParams& p, const std::vector<double>& y);

enum class CurveKind { Pdf, Cdf, Survival, Hazard };

std::vector<double> curve_serial(const BwParams& p, CurveKind kind,
                                 const std::vector<double>& xs);
std::vector<double> curve_parallel(const BwParams& p, CurveKind kind,
                                   const std::vector<double>& xs);

// n draws; draw i is a pure function of (seed, i) through its own
// counter-derived stream, so serial and parallel output are identical.
std::vector<double> sample_serial(const BwParams& p, std::uint64_t seed, std::size_t n);
std::vector<double> sample_parallel(const BwParams& p, std::uint64_t seed, std::size_t n);

bool openmp_enabled();
int max_threads();

}  // namespace bw::batch
