#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rbv::kernels {

using cplx = std::complex<double>;

// Two implementations of every amplitude kernel: a plain serial loop kept as the
// reference, and an OpenMP-parallel variant. The dispatcher routes `parallel` to
// the OpenMP code only above a size threshold; below it the serial loop wins on
// overhead alone. Both orders of reduction are fixed, so repeated runs with the
// same thread count produce identical bytes.
enum class Backend { serial, parallel };

Backend default_backend();
void set_default_backend(Backend b);

// Dense 2x2 applied to the qubit selected by `tmask` (a single set bit).
struct Mat2 {
  cplx m00, m01, m10, m11;
};

void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u, Backend b);
// diag(1, phase) on the selected qubit.
void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase, Backend b);
// Pauli X on the selected qubit.
void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask, Backend b);
// Flip `tmask` wherever (i & cmask) == cval. Covers CNOT, Toffoli and MCX with
// arbitrary control polarity (cval holds the expected control-bit pattern).
void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask, Backend b);
void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask, Backend b);

double norm_sq(const cplx* amp, std::size_t dim, Backend b);
void scale(cplx* amp, std::size_t dim, double factor, Backend b);

// Accumulate |amp[i]|^2 into 2^k bins, where bin bits follow bit_masks order
// (bit_masks[0] is the most significant bin bit).
void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                       double* bins, Backend b);
// Zero every amplitude whose bin (same convention as above) differs from `bin`.
void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                    std::size_t bin, Backend b);

namespace serial_impl {
void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u);
void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase);
void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask);
void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask);
void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask);
double norm_sq(const cplx* amp, std::size_t dim);
void scale(cplx* amp, std::size_t dim, double factor);
void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                       double* bins);
void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                    std::size_t bin);
}  // namespace serial_impl

namespace omp_impl {
void apply_matrix1(cplx* amp, std::size_t dim, std::size_t tmask, const Mat2& u);
void apply_phase1(cplx* amp, std::size_t dim, std::size_t tmask, cplx phase);
void apply_flip(cplx* amp, std::size_t dim, std::size_t tmask);
void apply_controlled_flip(cplx* amp, std::size_t dim, std::size_t cmask, std::size_t cval,
                           std::size_t tmask);
void apply_swap(cplx* amp, std::size_t dim, std::size_t amask, std::size_t bmask);
double norm_sq(const cplx* amp, std::size_t dim);
void scale(cplx* amp, std::size_t dim, double factor);
void bin_probabilities(const cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                       double* bins);
void project_to_bin(cplx* amp, std::size_t dim, const std::vector<std::size_t>& bit_masks,
                    std::size_t bin);
}  // namespace omp_impl

}  // namespace rbv::kernels
