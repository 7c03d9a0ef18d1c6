#include "rbv/kernels.hpp"

namespace rbv::kernels {

namespace {
// Below this size the OpenMP fork/join costs more than the sweep itself.
constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;
// Parallel bin accumulation allocates per-thread bin arrays; past this many
// measured qubits fall back to the serial single-array pass.
constexpr std::size_t kMaxParallelBinBits = 16;

Backend g_default = Backend::parallel;

inline bool go_parallel(Backend b, std::size_t dim) {
  return b == Backend::parallel && dim >= kParallelThreshold;
}
}  // namespace

Backend default_backend() { return g_default; }
void set_default_backend(Backend b) { g_default = b; }

void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::apply_matrix1(amp, dim, tmask, u);
  else
    serial_impl::apply_matrix1(amp, dim, tmask, u);
}

void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::apply_phase1(amp, dim, tmask, phase);
  else
    serial_impl::apply_phase1(amp, dim, tmask, phase);
}

void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::apply_flip(amp, dim, tmask);
  else
    serial_impl::apply_flip(amp, dim, tmask);
}

void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::apply_controlled_flip(amp, dim, cmask, cval, tmask);
  else
    serial_impl::apply_controlled_flip(amp, dim, cmask, cval, tmask);
}

void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::apply_swap(amp, dim, amask, bmask);
  else
    serial_impl::apply_swap(amp, dim, amask, bmask);
}

double norm_sq(const cplx* amp, std::size_t dim, Backend b) {
  if (go_parallel(b, dim)) return omp_impl::norm_sq(amp, dim);
  return serial_impl::norm_sq(amp, dim);
}

void scale(cplx* amp, std::size_t dim, double factor, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::scale(amp, dim, factor);
  else
    serial_impl::scale(amp, dim, factor);
}

void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                       double* bins, Backend b) {
  if (go_parallel(b, dim) && masks.size() <= kMaxParallelBinBits)
    omp_impl::bin_probabilities(amp, dim, masks, bins);
  else
    serial_impl::bin_probabilities(amp, dim, masks, bins);
}

void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                    std::size_t bin, Backend b) {
  if (go_parallel(b, dim))
    omp_impl::project_to_bin(amp, dim, masks, bin);
  else
    serial_impl::project_to_bin(amp, dim, masks, bin);
}

}  // namespace rbv::kernels
