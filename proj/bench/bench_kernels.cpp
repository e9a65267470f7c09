// Timings of the parallel kernels against the serial reference paths.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "toeplitz/autgroup.hpp"
#include "toeplitz/blockmap.hpp"
#include "toeplitz/reference.hpp"
#include "toeplitz/substrate.hpp"

using namespace toeplitz;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  Params P = Params::defaults();
  Subshift X(P);
  X.window_budget = i64{1} << 26;

  {
    auto t0 = Clock::now();
    auto ref = reference_generate(P, 7, 0, 1'000'000);
    double t_ref = ms_since(t0);
    t0 = Clock::now();
    auto fast = X.generate(7, 0, 1'000'000);
    double t_fast = ms_since(t0);
    std::printf("generate depth 7, 1M cells: reference %.1f ms, kernel %.1f ms (%s)\n",
                t_ref, t_fast, ref == fast ? "equal" : "MISMATCH");
  }

  {
    auto t0 = Clock::now();
    auto pw = X.point_window(0, 8'000'000);
    std::printf("point window, 8M cells: %.1f ms (ends with %c)\n",
                ms_since(t0), pw.cells.back());
  }

  {
    Subshift Y(P);  // fresh caches
    auto t0 = Clock::now();
    (void)Y.language(41);
    std::printf("language(41): %.1f ms (%zu words, window %lld)\n",
                ms_since(t0), Y.language(41).size(), Y.language_window(41));
  }

  {
    Subshift Y(P);
    auto t0 = Clock::now();
    auto counts = Y.factor_counts(150);
    std::printf("windowed factor counts to 150: %.1f ms (window %lld)\n",
                ms_since(t0), counts.window);
  }

  {
    Subshift Y(P);
    auto t0 = Clock::now();
    const Rule& s2 = sigma_rule(Y, 2);
    std::printf("sigma_2 construction: %.1f ms (radius %d)\n", ms_since(t0),
                s2.radius);
    t0 = Clock::now();
    Rule sq = compose(Y, s2, s2);
    std::printf("compose sigma_2 o sigma_2: %.1f ms (radius %d)\n",
                ms_since(t0), sq.radius);
    t0 = Clock::now();
    Rule m = minimize(Y, sq);
    std::printf("minimize the square: %.1f ms (radius %d -> %d)\n",
                ms_since(t0), sq.radius, m.radius);
  }

  return 0;
}
