#include "bw/batch.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bw/rng.hpp"
#include "bw/specfun.hpp"

namespace bw::batch {

namespace {

constexpr std::int64_t kBlockSize = 1024;

std::int64_t block_count(std::int64_t n) {
  return (n + kBlockSize - 1) / kBlockSize;
}

// Runs fn(block_index) over all blocks; parallel when asked for and OpenMP
// is compiled in. fn must not throw (wrap anything that can in the caller).
template <class Fn>
void run_blocks(std::int64_t nblocks, bool parallel, const Fn& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
  for (std::int64_t blk = 0; blk < nblocks; ++blk)
    fn(blk);
#else
  (void)parallel;
  for (std::int64_t blk = 0; blk < nblocks; ++blk)
    fn(blk);
#endif
}

double log1mexp_from_log(double log_u) {
  if (log_u < -37.0)
    return log_u;
  double u = std::exp(log_u);
  if (u > 745.0)
    return 0.0;
  return std::log(-std::expm1(-u));
}

double loglik_impl(const BwParams& p, const std::vector<double>& y, bool parallel) {
  p.validate();
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  const std::int64_t nblocks = block_count(n);
  const double log_lambda = std::log(p.lambda);

  std::vector<double> partial(nblocks, 0.0);
  run_blocks(nblocks, parallel, [&](std::int64_t blk) {
    std::int64_t lo = blk * kBlockSize;
    std::int64_t hi = std::min(n, lo + kBlockSize);
    double acc = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      double logy = std::log(y[i]);
      double logv = p.c * (log_lambda + logy);
      double v = std::exp(logv);
      acc += (p.c - 1.0) * logy - p.b * v +
             (p.a - 1.0) * log1mexp_from_log(logv);
    }
    partial[blk] = acc;
  });

  double sum = 0.0;
  for (std::int64_t blk = 0; blk < nblocks; ++blk)
    sum += partial[blk];
  double per_obs_const =
      std::log(p.c) + p.c * log_lambda - specfun::ln_beta(p.a, p.b);
  return sum + static_cast<double>(n) * per_obs_const;
}

struct ScorePartial {
  double l1me = 0.0;   // sum of log(1 - e^{-v})
  double v = 0.0;      // sum of v = (lambda y)^c
  double lv_h = 0.0;   // sum of log(v) * H
  double h = 0.0;      // sum of H = 1 - b v + (a-1) v e^{-v}/(1-e^{-v})
  bool overflow = false;
};

std::array<double, 4> score_impl(const BwParams& p, const std::vector<double>& y,
                                 bool parallel) {
  p.validate();
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  const std::int64_t nblocks = block_count(n);
  const double log_lambda = std::log(p.lambda);

  std::vector<ScorePartial> partial(nblocks);
  run_blocks(nblocks, parallel, [&](std::int64_t blk) {
    std::int64_t lo = blk * kBlockSize;
    std::int64_t hi = std::min(n, lo + kBlockSize);
    ScorePartial s;
    for (std::int64_t i = lo; i < hi; ++i) {
      double logv = p.c * (log_lambda + std::log(y[i]));
      double v = std::exp(logv);
      if (v == std::numeric_limits<double>::infinity()) {
        s.overflow = true;
        break;
      }
      // v e^{-v}/(1-e^{-v}) = v/(e^v - 1), limit 1 at v = 0.
      double g = v == 0.0 ? 1.0 : v / std::expm1(v);
      double h = 1.0 - p.b * v + (p.a - 1.0) * g;
      s.l1me += log1mexp_from_log(logv);
      s.v += v;
      s.lv_h += logv * h;
      s.h += h;
    }
    partial[blk] = s;
  });

  ScorePartial total;
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    if (partial[blk].overflow)
      throw std::overflow_error("(lambda*y)^c overflows for an observation");
    total.l1me += partial[blk].l1me;
    total.v += partial[blk].v;
    total.lv_h += partial[blk].lv_h;
    total.h += partial[blk].h;
  }

  double nd = static_cast<double>(n);
  double psi_ab = specfun::digamma(p.a + p.b);
  std::array<double, 4> sc;
  sc[0] = nd * (psi_ab - specfun::digamma(p.a)) + total.l1me;
  sc[1] = nd * (psi_ab - specfun::digamma(p.b)) - total.v;
  sc[2] = nd / p.c + total.lv_h / p.c;
  sc[3] = (p.c / p.lambda) * total.h;
  return sc;
}

std::vector<double> curve_impl(const BwParams& p, CurveKind kind,
                               const std::vector<double>& xs, bool parallel) {
  p.validate();
  const std::int64_t n = static_cast<std::int64_t>(xs.size());
  const std::int64_t nblocks = block_count(n);
  std::vector<double> out(n);
  std::vector<std::exception_ptr> errs(nblocks);

  run_blocks(nblocks, parallel, [&](std::int64_t blk) {
    std::int64_t lo = blk * kBlockSize;
    std::int64_t hi = std::min(n, lo + kBlockSize);
    try {
      for (std::int64_t i = lo; i < hi; ++i) {
        switch (kind) {
          case CurveKind::Pdf: out[i] = pdf(p, xs[i]); break;
          case CurveKind::Cdf: out[i] = cdf(p, xs[i]); break;
          case CurveKind::Survival: out[i] = survival(p, xs[i]); break;
          case CurveKind::Hazard: out[i] = hazard(p, xs[i]); break;
        }
      }
    } catch (...) {
      errs[blk] = std::current_exception();
    }
  });

  // First failing block in index order, so errors are deterministic too.
  for (std::int64_t blk = 0; blk < nblocks; ++blk)
    if (errs[blk])
      std::rethrow_exception(errs[blk]);
  return out;
}

std::vector<double> sample_impl(const BwParams& p, std::uint64_t seed,
                                std::size_t n, bool parallel) {
  p.validate();
  const std::int64_t count = static_cast<std::int64_t>(n);
  const std::int64_t nblocks = block_count(count);
  std::vector<double> out(n);
  run_blocks(nblocks, parallel, [&](std::int64_t blk) {
    std::int64_t lo = blk * kBlockSize;
    std::int64_t hi = std::min(count, lo + kBlockSize);
    for (std::int64_t i = lo; i < hi; ++i) {
      StreamRng rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
      out[i] = sample_one_with(p, rng);
    }
  });
  return out;
}

}  // namespace

double log_likelihood_serial(const BwParams& p, const std::vector<double>& y) {
  return loglik_impl(p, y, false);
}

double log_likelihood_parallel(const BwParams& p, const std::vector<double>& y) {
  return loglik_impl(p, y, true);
}

std::array<double, 4> score_serial(const BwParams& p, const std::vector<double>& y) {
  return score_impl(p, y, false);
}

std::array<double, 4> score_parallel(const BwParams& p, const std::vector<double>& y) {
  return score_impl(p, y, true);
}

std::vector<double> curve_serial(const BwParams& p, CurveKind kind,
                                 const std::vector<double>& xs) {
  return curve_impl(p, kind, xs, false);
}

std::vector<double> curve_parallel(const BwParams& p, CurveKind kind,
                                   const std::vector<double>& xs) {
  return curve_impl(p, kind, xs, true);
}

std::vector<double> sample_serial(const BwParams& p, std::uint64_t seed,
                                  std::size_t n) {
  return sample_impl(p, seed, n, false);
}

std::vector<double> sample_parallel(const BwParams& p, std::uint64_t seed,
                                    std::size_t n) {
  return sample_impl(p, seed, n, true);
}

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace bw::batch
