#include "rbv/kernels.hpp"

namespace rbv::kernels::serial_impl {

namespace {
// Index of the p-th basis state with the tmask bit forced to 0.
inline std::size_t compose(std::size_t p, std::size_t low) {
  return ((p & ~low) << 1) | (p & low);
}

inline std::size_t bin_of(std::size_t i, const std::vector<std::size_t>& masks) {
  std::size_t b = 0;
  for (std::size_t m : masks) b = (b << 1) | ((i & m) ? 1u : 0u);
  return b;
}
}  // namespace

void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u) {
  const std::size_t low = tmask - 1;
  for (std::size_t p = 0; p < dim / 2; ++p) {
    const std::size_t i0 = compose(p, low);
    const std::size_t i1 = i0 | tmask;
    const cplx a0 = amp[i0], a1 = amp[i1];
    amp[i0] = u.m00 * a0 + u.m01 * a1;
    amp[i1] = u.m10 * a0 + u.m11 * a1;
  }
}

void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase) {
  for (std::size_t i = 0; i < dim; ++i)
    if (i & tmask) amp[i] *= phase;
}

void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask) {
  const std::size_t low = tmask - 1;
  for (std::size_t p = 0; p < dim / 2; ++p) {
    const std::size_t i0 = compose(p, low);
    std::swap(amp[i0], amp[i0 | tmask]);
  }
}

void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask) {
  const std::size_t low = tmask - 1;
  for (std::size_t p = 0; p < dim / 2; ++p) {
    const std::size_t i0 = compose(p, low);
    if ((i0 & cmask) == cval) std::swap(amp[i0], amp[i0 | tmask]);
  }
}

void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask) {
  const std::size_t both = amask | bmask;
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & amask) && !(i & bmask)) std::swap(amp[i], amp[i ^ both]);
}

double norm_sq(const cplx* amp, std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += std::norm(amp[i]);
  return s;
}

void scale(cplx* amp, std::size_t dim, double factor) {
  for (std::size_t i = 0; i < dim; ++i) amp[i] *= factor;
}

void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                       double* bins) {
  for (std::size_t i = 0; i < dim; ++i) bins[bin_of(i, masks)] += std::norm(amp[i]);
}

void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& masks,
                    std::size_t bin) {
  for (std::size_t i = 0; i < dim; ++i)
    if (bin_of(i, masks) != bin) amp[i] = cplx{0.0, 0.0};
}

}  // namespace rbv::kernels::serial_impl
