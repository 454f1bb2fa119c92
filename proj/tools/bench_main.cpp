// Times the serial reference kernels against the OpenMP ones and verifies
// that both produce bitwise-identical results.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <vector>

#include "bw/batch.hpp"
#include "bw/distribution.hpp"

namespace {

volatile double sink = 0.0;

double time_best_of(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void report(const char* kernel, std::int64_t n, double ts, double tp,
            bool identical) {
  std::printf("%-16s %10lld %12.4f %12.4f %8.2fx %10s\n", kernel,
              static_cast<long long>(n), ts, tp, ts / tp,
              identical ? "yes" : "NO");
}

}  // namespace

int main() {
  const bw::BwParams p{0.8, 1.7, 2.3, 0.05};
  std::printf("openmp: %s, max threads: %d\n\n",
              bw::batch::openmp_enabled() ? "yes" : "no",
              bw::batch::max_threads());
  std::printf("%-16s %10s %12s %12s %8s %10s\n", "kernel", "n", "serial(s)",
              "parallel(s)", "speedup", "identical");

  for (std::int64_t n : {200000LL, 1000000LL, 4000000LL}) {
    std::vector<double> y = bw::batch::sample_serial(p, 42, n);

    double lls = 0.0, llp = 0.0;
    double ts = time_best_of([&] { lls = bw::batch::log_likelihood_serial(p, y); }, 3);
    double tp = time_best_of([&] { llp = bw::batch::log_likelihood_parallel(p, y); }, 3);
    sink = lls + llp;
    report("log_likelihood", n, ts, tp, lls == llp);

    std::array<double, 4> ss{}, sp{};
    ts = time_best_of([&] { ss = bw::batch::score_serial(p, y); }, 3);
    tp = time_best_of([&] { sp = bw::batch::score_parallel(p, y); }, 3);
    sink = ss[0] + sp[0];
    report("score", n, ts, tp, ss == sp);

    std::vector<double> cs, cp;
    ts = time_best_of(
        [&] { cs = bw::batch::curve_serial(p, bw::batch::CurveKind::Pdf, y); }, 3);
    tp = time_best_of(
        [&] { cp = bw::batch::curve_parallel(p, bw::batch::CurveKind::Pdf, y); }, 3);
    sink = cs[0] + cp[0];
    report("curve pdf", n, ts, tp, cs == cp);

    std::vector<double> ds, dp;
    ts = time_best_of([&] { ds = bw::batch::sample_serial(p, 7, n); }, 3);
    tp = time_best_of([&] { dp = bw::batch::sample_parallel(p, 7, n); }, 3);
    sink = ds[0] + dp[0];
    report("sample", n, ts, tp, ds == dp);
  }
  return 0;
}
