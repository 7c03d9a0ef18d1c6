#include "rbv/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdint>

// Same semantics as serial_impl; pair loops carry disjoint writes so a plain
// parallel-for is safe. Reductions go through per-thread partials merged in
// thread order to keep floating-point summation deterministic per thread count.
namespace rbv::kernels::omp_impl {

namespace {
inline std::size_t compose(std::size_t p, std::size_t low) {
  return ((p & ~low) << 1) | (p & low);
}

inline std::size_t bin_of(std::size_t i, const std::vector<std::size_t>& masks) {
  std::size_t b = 0;
  for (std::size_t m : masks) b = (b << 1) | ((i & m) ? 1u : 0u);
  return b;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline int thread_num() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}
}  // namespace

void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u) {
  const std::size_t low = tmask - 1;
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < half; ++p) {
    const std::size_t i0 = compose(static_cast<std::size_t>(p), low);
    const std::size_t i1 = i0 | tmask;
    const cplx a0 = amp[i0], a1 = amp[i1];
    amp[i0] = u.m00 * a0 + u.m01 * a1;
    amp[i1] = u.m10 * a0 + u.m11 * a1;
  }
}

void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase) {
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    if (static_cast<std::size_t>(i) & tmask) amp[i] *= phase;
}

void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask) {
  const std::size_t low = tmask - 1;
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < half; ++p) {
    const std::size_t i0 = compose(static_cast<std::size_t>(p), low);
    std::swap(amp[i0], amp[i0 | tmask]);
  }
}

void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask) {
  const std::size_t low = tmask - 1;
  const std::int64_t half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < half; ++p) {
    const std::size_t i0 = compose(static_cast<std::size_t>(p), low);
    if ((i0 & cmask) == cval) std::swap(amp[i0], amp[i0 | tmask]);
  }
}

void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask) {
  const std::size_t both = amask | bmask;
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    if ((u & amask) && !(u & bmask)) std::swap(amp[u], amp[u ^ both]);
  }
}

double norm_sq(const cplx* amp, std::size_t dim) {
  const int nt = max_threads();
  std::vector<double> partial(nt, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel
  {
    const int t = thread_num();
    double local = 0.0;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) local += std::norm(amp[i]);
    partial[t] = local;
  }
  double s = 0.0;
  for (double v : partial) s += v;
  return s;
}

void scale(cplx* amp, std::size_t dim, double factor) {
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) amp[i] *= factor;
}

void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                       double* bins) {
  const std::size_t nbins = std::size_t{1} << masks.size();
  const int nt = max_threads();
  std::vector<double> partial(static_cast<std::size_t>(nt) * nbins, 0.0);
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel
  {
    double* local = partial.data() + static_cast<std::size_t>(thread_num()) * nbins;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
      local[bin_of(static_cast<std::size_t>(i), masks)] += std::norm(amp[i]);
  }
  for (int t = 0; t < nt; ++t)
    for (std::size_t b = 0; b < nbins; ++b) bins[b] += partial[static_cast<std::size_t>(t) * nbins + b];
}

void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                    std::size_t bin) {
  const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    if (bin_of(static_cast<std::size_t>(i), masks) != bin) amp[i] = cplx{0.0, 0.0};
}

}  // namespace rbv::kernels::omp_impl
