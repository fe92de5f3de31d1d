// Benchmark of the parallel matrix kernels against the serial reference, on
// the two entry rings that dominate the solver's inner loops: exact rationals
// and truncated power series.

#include <chrono>
#include <iostream>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "geosolve/matrix.hpp"
#include "geosolve/series.hpp"

using namespace geosolve;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double time_best_of(int reps, F&& f) {
  double best = 1e100;
  for (int i = 0; i < reps; ++i) {
    auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

Matrix<BigRat> random_rat_matrix(std::mt19937_64& rng, int n, int bits) {
  Matrix<BigRat> m = Matrix<BigRat>::zeros(n, BigRat(0));
  for (auto& e : m.a) {
    BigInt num(0), den(0);
    for (int b = 0; b < bits; b += 32) {
      num = (num << 32) + (unsigned long)(rng() & 0xffffffffu);
      den = (den << 32) + (unsigned long)(rng() & 0xffffffffu);
    }
    e = make_rat(num + 1, den + 1);
  }
  return m;
}

Matrix<TruncSeries> random_series_matrix(std::mt19937_64& rng, int n, int cap) {
  TruncSeries like({BigInt(0)}, cap);
  Matrix<TruncSeries> m = Matrix<TruncSeries>::zeros(n, like);
  for (auto& e : m.a)
    for (int d = 0; d <= cap; ++d)
      e.set({(uint32_t)d}, BigRat((long)(rng() % 2001) - 1000));
  return m;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (no OpenMP)\n";
#endif
  std::mt19937_64 rng(1);

  std::cout << "\nrational entries (256-bit numerators/denominators)\n";
  std::cout << "  n   serial[s]   parallel[s]   speedup\n";
  for (int n : {8, 16, 32, 64}) {
    Matrix<BigRat> a = random_rat_matrix(rng, n, 256);
    Matrix<BigRat> b = random_rat_matrix(rng, n, 256);
    Matrix<BigRat> r1, r2;
    double ts = time_best_of(3, [&] { r1 = mat_mul_serial(a, b); });
    double tp = time_best_of(3, [&] { r2 = mat_mul_parallel(a, b); });
    if (!(r1 == r2)) {
      std::cerr << "MISMATCH at n=" << n << "\n";
      return 1;
    }
    std::printf("%4d   %9.4f   %11.4f   %7.2fx\n", n, ts, tp, ts / tp);
  }

  std::cout << "\ntruncated-series entries (one variable, cap 8)\n";
  std::cout << "  n   serial[s]   parallel[s]   speedup\n";
  for (int n : {4, 8, 16, 32}) {
    Matrix<TruncSeries> a = random_series_matrix(rng, n, 8);
    Matrix<TruncSeries> b = random_series_matrix(rng, n, 8);
    Matrix<TruncSeries> r1, r2;
    double ts = time_best_of(3, [&] { r1 = mat_mul_serial(a, b); });
    double tp = time_best_of(3, [&] { r2 = mat_mul_parallel(a, b); });
    if (!(r1 == r2)) {
      std::cerr << "MISMATCH at n=" << n << "\n";
      return 1;
    }
    std::printf("%4d   %9.4f   %11.4f   %7.2fx\n", n, ts, tp, ts / tp);
  }
  return 0;
}
