// Times the OpenMP kernels against their serial references. Not a test;
// build and run manually:  ./build/benchmarks/bench_kernels [n_repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "liecomm/algebra.hpp"
#include "liecomm/linalg.hpp"
#include "liecomm/rng.hpp"

using namespace liecomm;
using linalg::Mat;
using linalg::Vec;

namespace {

Mat random_matrix(int r, int c, uint64_t seed) {
  Rng rng(seed);
  Mat m(r, c);
  for (double& v : m.a) v = rng.normal();
  return m;
}

Mat random_symmetric(int n, uint64_t seed) {
  Rng rng(seed);
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = rng.normal();
  return m;
}

template <typename F>
double time_best_of(int repeats, F&& f) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt < best) best = dt;
  }
  return best;
}

void row(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_s * 1e3, parallel_s * 1e3,
              serial_s / parallel_s);
}

volatile double g_sink = 0.0;

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns run the same serial code\n");
#endif
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    const Mat A = random_matrix(384, 384, 1);
    const Mat B = random_matrix(384, 384, 2);
    const double ts = time_best_of(repeats, [&] { g_sink += linalg::serial::matmul(A, B)(0, 0); });
    const double tp = time_best_of(repeats, [&] { g_sink += linalg::matmul(A, B)(0, 0); });
    row("matmul 384x384", ts, tp);
  }
  {
    const Mat A = random_matrix(512, 512, 3);
    Rng rng(4);
    const Vec x = rng.normal_vec(512);
    const double ts = time_best_of(repeats, [&] {
      for (int k = 0; k < 200; ++k) g_sink += linalg::serial::matvec(A, x)[0];
    });
    const double tp = time_best_of(repeats, [&] {
      for (int k = 0; k < 200; ++k) g_sink += linalg::matvec(A, x)[0];
    });
    row("matvec 512x512 (x200)", ts, tp);
  }
  {
    const Mat A = random_matrix(300, 300, 5);
    const Mat B = random_matrix(300, 300, 6);
    const double ts = time_best_of(repeats, [&] {
      for (int k = 0; k < 50; ++k) g_sink += linalg::serial::trace_product(A, B);
    });
    const double tp = time_best_of(repeats, [&] {
      for (int k = 0; k < 50; ++k) g_sink += linalg::trace_product(A, B);
    });
    row("trace_product 300 (x50)", ts, tp);
  }
  {
    const Mat A = random_symmetric(160, 7);
    const double ts =
        time_best_of(repeats, [&] { g_sink += linalg::serial::sym_eig_jacobi(A).values[0]; });
    const double tp = time_best_of(repeats, [&] { g_sink += linalg::sym_eig_jacobi(A).values[0]; });
    row("sym_eig_jacobi 160", ts, tp);
  }
  {
    // Whole-algebra construction: structure constants + ad-trace Gram.
    const AlgebraSpec spec = AlgebraSpec::so(12);
    const double tp = time_best_of(repeats, [&] {
      const LieAlgebra g = build_algebra_value(spec);
      g_sink += g.killing(0, 0);
    });
    std::printf("%-28s %13s %10.3f ms\n", "build so(12) (d=66)", "-", tp * 1e3);
  }
  return g_sink == 12345.0 ? 1 : 0;
}
