#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

// Random variate generation. Transforms are hand-rolled (not the standard
// library distributions) so that a given seed produces identical streams on
// every platform; the tests and the simulate command rely on that.

namespace bw {

inline std::uint64_t splitmix64_next(std::uint64_t& s) {
  s += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Tiny engine used for the per-index streams in the parallel sampling
// kernel: each draw index gets its own scrambled starting state, so output
// does not depend on the thread count.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return splitmix64_next(state_); }

 private:
  std::uint64_t state_;
};

template <class Engine>
class BasicRng {
 public:
  explicit BasicRng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on the open interval (0,1); never returns an endpoint, so logs
  // of draws are always finite.
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  // Gamma(shape, 1) for shape >= 1 by Marsaglia-Tsang squeeze rejection.
  double gamma_at_least_one(double shape) {
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x)
        return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v;
    }
  }

  // log of a Gamma(shape, 1) draw. For shape < 1 the boost
  // G_s = G_{s+1} * U^{1/s} is applied in log space: tiny shapes produce
  // draws far below the smallest positive double, which only the logarithm
  // can represent.
  double log_gamma_draw(double shape) {
    if (!(shape > 0.0))
      throw std::domain_error("gamma draw needs a positive shape");
    if (shape >= 1.0)
      return std::log(gamma_at_least_one(shape));
    return std::log(gamma_at_least_one(shape + 1.0)) + std::log(uniform()) / shape;
  }

  // V = -log(1 - B) with B ~ Beta(a, b), computed from two gamma draws
  // entirely in log space. Sampling B in double precision and then taking
  // -log1p(-B) truncates the distribution's upper tail as soon as B rounds
  // to 1, which happens with sizeable probability for small shapes.
  double beta_neglog1m(double a, double b) {
    double diff = log_gamma_draw(a) - log_gamma_draw(b);
    double v;
    if (diff > 36.0)
      v = diff + std::exp(-diff);
    else
      v = std::log1p(std::exp(diff));
    // diff below ~-745 underflows to v = 0; nudge into the support.
    return v > 0.0 ? v : 1e-308;
  }

 private:
  Engine eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

using Rng = BasicRng<std::mt19937_64>;
using StreamRng = BasicRng<SplitMix64>;

// Starting state for draw index i under a user seed; used by both the
// serial and the parallel sampling kernels so they emit identical output.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0xD2B74407B1CE6E93ull * (index + 1));
  return splitmix64_next(s);
}

}  // namespace bw
