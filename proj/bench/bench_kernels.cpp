// Times the serial reference loops against the OpenMP variants, kernel by
// kernel, on a few state sizes. Run as `rbv_bench [n ...]`; default sizes are
// 18, 20 and 22 qubits. Each cell is the best of several calls.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rbv/kernels.hpp"

namespace {

using rbv::kernels::cplx;
using rbv::kernels::Mat2;

std::vector<cplx> random_amps(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<cplx> amps(dim);
  double norm_sq = 0.0;
  for (cplx& a : amps) {
    a = {gauss(rng), gauss(rng)};
    norm_sq += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (cplx& a : amps) a *= scale;
  return amps;
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    best = std::min(best, secs);
  }
  return best;
}

struct Row {
  const char* name;
  std::function<void(cplx*)> serial;
  std::function<void(cplx*)> parallel;
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> sizes;
  for (int i = 1; i < argc; ++i) sizes.push_back(std::atoi(argv[i]));
  if (sizes.empty()) sizes = {18, 20, 22};

#ifdef _OPENMP
  std::printf("omp threads: %d\n", omp_get_max_threads());
#else
  std::printf("omp threads: (built without OpenMP; both columns run the serial code)\n");
#endif

  const Mat2 hadamard{{M_SQRT1_2, 0.0}, {M_SQRT1_2, 0.0}, {M_SQRT1_2, 0.0}, {-M_SQRT1_2, 0.0}};

  for (const int n : sizes) {
    if (n < 4 || n > 26) {
      std::printf("skipping n=%d (want 4..26)\n", n);
      continue;
    }
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t tmask = dim >> (n / 2);  // a middle qubit: worst of both strides
    const std::size_t cmask = (dim >> 1) | (dim >> 2);
    const std::vector<std::size_t> bin_masks = {dim >> 1, std::size_t{1}};
    const int reps = std::max(3, 1 << (n < 24 ? 24 - n : 0));

    const std::vector<cplx> base = random_amps(dim, 0xb35c41ull ^ static_cast<std::uint64_t>(n));
    std::vector<cplx> work = base;
    std::vector<double> bins(4, 0.0);

    namespace ser = rbv::kernels::serial_impl;
    namespace par = rbv::kernels::omp_impl;
    const std::vector<Row> rows = {
        {"apply_matrix1",
         [&](cplx* a) { ser::apply_matrix1(a, dim, tmask, hadamard); },
         [&](cplx* a) { par::apply_matrix1(a, dim, tmask, hadamard); }},
        {"apply_phase1",
         [&](cplx* a) { ser::apply_phase1(a, dim, tmask, cplx{0.0, 1.0}); },
         [&](cplx* a) { par::apply_phase1(a, dim, tmask, cplx{0.0, 1.0}); }},
        {"apply_flip",
         [&](cplx* a) { ser::apply_flip(a, dim, tmask); },
         [&](cplx* a) { par::apply_flip(a, dim, tmask); }},
        {"apply_controlled_flip",
         [&](cplx* a) { ser::apply_controlled_flip(a, dim, cmask, cmask, tmask); },
         [&](cplx* a) { par::apply_controlled_flip(a, dim, cmask, cmask, tmask); }},
        {"apply_swap",
         [&](cplx* a) { ser::apply_swap(a, dim, dim >> 1, std::size_t{1}); },
         [&](cplx* a) { par::apply_swap(a, dim, dim >> 1, std::size_t{1}); }},
        {"norm_sq",
         [&](cplx* a) { volatile double x = ser::norm_sq(a, dim); (void)x; },
         [&](cplx* a) { volatile double x = par::norm_sq(a, dim); (void)x; }},
        {"scale",
         [&](cplx* a) { ser::scale(a, dim, 1.0); },
         [&](cplx* a) { par::scale(a, dim, 1.0); }},
        {"bin_probabilities",
         [&](cplx* a) { ser::bin_probabilities(a, dim, bin_masks, bins.data()); },
         [&](cplx* a) { par::bin_probabilities(a, dim, bin_masks, bins.data()); }},
    };

    std::printf("\nn=%d  dim=%zu  state=%.1f MiB  reps=%d\n", n, dim,
                static_cast<double>(dim) * sizeof(cplx) / (1024.0 * 1024.0), reps);
    std::printf("  %-22s %12s %12s %9s\n", "kernel", "serial", "parallel", "ratio");
    for (const Row& row : rows) {
      work = base;
      const double t_serial = best_of(reps, [&] { row.serial(work.data()); });
      work = base;
      const double t_parallel = best_of(reps, [&] { row.parallel(work.data()); });
      std::printf("  %-22s %10.3f ms %10.3f ms %8.2fx\n", row.name, t_serial * 1e3,
                  t_parallel * 1e3, t_serial / t_parallel);
    }

    // Sanity: both backends produce the same bytes for a mutating kernel.
    std::vector<cplx> a = base;
    std::vector<cplx> b = base;
    ser::apply_matrix1(a.data(), dim, tmask, hadamard);
    par::apply_matrix1(b.data(), dim, tmask, hadamard);
    double worst = 0.0;
    for (std::size_t i = 0; i < dim; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    std::printf("  max |serial - parallel| after apply_matrix1: %.3g\n", worst);
  }
  return 0;
}
