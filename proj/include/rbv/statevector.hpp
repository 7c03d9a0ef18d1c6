#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rbv/bitstring.hpp"
#include "rbv/gate.hpp"
#include "rbv/kernels.hpp"
#include "rbv/random.hpp"

namespace rbv {

class Circuit;

using cplx = std::complex<double>;

// Dense amplitude vector over computational basis states. Qubit 0 is the most
// significant bit of the basis index, so for a 2-qubit state |q0 q1>, basis
// label "10" sits at index 2. Construction past the qubit cap (default 26,
// overridable through the RBVQHE_QUBIT_CAP environment variable) raises
// ResourceError before any allocation happens.
class Statevector {
 public:
  explicit Statevector(int num_qubits);
  static Statevector from_amplitudes(std::vector<cplx> amps);

  static int qubit_cap();

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cplx> amplitudes() const { return amps_; }
  cplx amp(std::size_t i) const { return amps_.at(i); }

  double norm() const;
  std::size_t mask_for(int qubit) const;

  kernels::Backend backend() const { return backend_; }
  void set_backend(kernels::Backend b) { backend_ = b; }

  void apply(const Gate& g);
  void apply(const Circuit& c);

  // Probability of each joint outcome of `qubits`, indexed so that the first
  // listed qubit is the most significant outcome bit.
  std::vector<double> branch_probabilities(const std::vector<int>& qubits) const;
  // Project onto the given branch and renormalize. BranchError if its
  // probability is (near) zero.
  void collapse(const std::vector<int>& qubits, std::size_t branch);

  // Grow the register by k fresh |0> qubits appended after the existing ones.
  void append_zero_qubits(int k);
  // Remove qubit q, which must already be collapsed to |expected_bit>.
  void drop_qubit(int q, int expected_bit);

 private:
  int num_qubits_ = 0;
  std::vector<cplx> amps_;
  kernels::Backend backend_ = kernels::default_backend();

  void check_qubit(int q) const;
};

Statevector new_zero_state(int num_qubits);
Statevector apply_gate(Statevector state, const Gate& g);

struct MeasurementOutcome {
  BitString bits;       // outcome per measured qubit, in the order requested
  double probability;   // Born probability of this branch
  Statevector post_state;
};

MeasurementOutcome measure_computational(const Statevector& state, const std::vector<int>& qubits,
                                         MeasurementPolicy& policy);
// In-place variant; returns outcome bits and branch probability.
std::pair<BitString, double> measure_computational_inplace(Statevector& state,
                                                           const std::vector<int>& qubits,
                                                           MeasurementPolicy& policy);

struct BellOutcome {
  int a;
  int b;
};

// Measurement in the S^s_exponent-rotated Bell basis
//   { (S^u-dagger Z^b X^a (x) I) |Phi00> : a, b in {0,1} },   |Phi00> = (|00>+|11>)/sqrt(2),
// with the rotated operator acting on q1. Realized as: apply S^u to q1, then
// CNOT(q1 -> q2), then H(q1), then measure both qubits. Outcome mapping (fixed):
//   a = bit measured on q2,  b = bit measured on q1.
// The post-measurement state leaves q1 in |b> and q2 in |a> (computational
// frame after the un-Bell circuit), ready for drop_qubit.
std::pair<BellOutcome, Statevector> measure_bell_rotated(const Statevector& state, int q1, int q2,
                                                         int s_exponent, MeasurementPolicy& policy);
BellOutcome measure_bell_rotated_inplace(Statevector& state, int q1, int q2, int s_exponent,
                                         MeasurementPolicy& policy);

// True iff x == phi * y with |phi| = 1, where phi is fixed from the
// largest-magnitude amplitude of y and the residual 2-norm must be <= tol.
bool equal_up_to_global_phase(const Statevector& x, const Statevector& y, double tol);

// |<a|b>|^2
double fidelity(const Statevector& a, const Statevector& b);

}  // namespace rbv
