#include "rbv/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rbv/circuit.hpp"
#include "rbv/errors.hpp"

namespace rbv {

namespace {
constexpr int kDefaultQubitCap = 26;
constexpr double kBranchFloor = 1e-12;

int read_cap() {
  if (const char* env = std::getenv("RBVQHE_QUBIT_CAP")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 34) return static_cast<int>(v);
  }
  return kDefaultQubitCap;
}

const kernels::Mat2 kHadamard{{std::numbers::sqrt2 / 2, 0.0},
                              {std::numbers::sqrt2 / 2, 0.0},
                              {std::numbers::sqrt2 / 2, 0.0},
                              {-std::numbers::sqrt2 / 2, 0.0}};
}  // namespace

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("Statevector: need at least one qubit");
  const int cap = qubit_cap();
  if (num_qubits > cap)
    throw ResourceError("Statevector: " + std::to_string(num_qubits) + " qubits exceeds cap of " +
                        std::to_string(cap));
  amps_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amps_[0] = cplx{1.0, 0.0};
}

Statevector Statevector::from_amplitudes(std::vector<cplx> amps) {
  if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
    throw std::invalid_argument("from_amplitudes: length must be a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  Statevector sv(n);
  const double norm2 = kernels::serial_impl::norm_sq(amps.data(), amps.size());
  if (std::abs(norm2 - 1.0) > 1e-6)
    throw std::invalid_argument("from_amplitudes: vector is not normalized");
  sv.amps_ = std::move(amps);
  return sv;
}

int Statevector::qubit_cap() {
  static const int cap = read_cap();
  return cap;
}

double Statevector::norm() const {
  return std::sqrt(kernels::norm_sq(amps_.data(), amps_.size(), backend_));
}

std::size_t Statevector::mask_for(int qubit) const {
  check_qubit(qubit);
  return std::size_t{1} << (num_qubits_ - 1 - qubit);
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_)
    throw std::invalid_argument("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(num_qubits_) + "-qubit state");
}

void Statevector::apply(const Gate& g) {
  validate_gate_shape(g);
  check_qubit(g.target);
  for (int c : g.controls) check_qubit(c);

  const std::size_t tmask = mask_for(g.target);
  cplx* a = amps_.data();
  const std::size_t d = dim();
  using kernels::apply_controlled_flip;
  using kernels::apply_flip;
  using kernels::apply_matrix1;
  using kernels::apply_phase1;
  using kernels::apply_swap;

  switch (g.kind) {
    case GateKind::X:
      apply_flip(a, d, tmask, backend_);
      break;
    case GateKind::Z:
      apply_phase1(a, d, tmask, cplx{-1.0, 0.0}, backend_);
      break;
    case GateKind::S:
      apply_phase1(a, d, tmask, cplx{0.0, 1.0}, backend_);
      break;
    case GateKind::Sdg:
      apply_phase1(a, d, tmask, cplx{0.0, -1.0}, backend_);
      break;
    case GateKind::T:
      apply_phase1(a, d, tmask, std::polar(1.0, std::numbers::pi / 4), backend_);
      break;
    case GateKind::Tdg:
      apply_phase1(a, d, tmask, std::polar(1.0, -std::numbers::pi / 4), backend_);
      break;
    case GateKind::H:
      apply_matrix1(a, d, tmask, kHadamard, backend_);
      break;
    case GateKind::SWAP:
      apply_swap(a, d, mask_for(g.controls[0]), tmask, backend_);
      break;
    case GateKind::CNOT:
    case GateKind::TOFFOLI:
    case GateKind::MCX: {
      std::size_t cmask = 0, cval = 0;
      for (std::size_t i = 0; i < g.controls.size(); ++i) {
        const std::size_t m = mask_for(g.controls[i]);
        cmask |= m;
        if (g.polarity[i]) cval |= m;
      }
      apply_controlled_flip(a, d, cmask, cval, tmask, backend_);
      break;
    }
  }
}

void Statevector::apply(const Circuit& c) {
  if (c.num_qubits() > num_qubits_)
    throw std::invalid_argument("circuit is wider than the state");
  for (const Gate& g : c.gates()) apply(g);
}

std::vector<double> Statevector::branch_probabilities(const std::vector<int>& qubits) const {
  if (qubits.empty()) throw std::invalid_argument("branch_probabilities: no qubits given");
  std::vector<std::size_t> masks;
  masks.reserve(qubits.size());
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    check_qubit(qubits[i]);
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      if (qubits[i] == qubits[j]) throw std::invalid_argument("duplicate qubit in measurement list");
    masks.push_back(mask_for(qubits[i]));
  }
  std::vector<double> bins(std::size_t{1} << qubits.size(), 0.0);
  kernels::bin_probabilities(amps_.data(), dim(), masks, bins.data(), backend_);
  return bins;
}

void Statevector::collapse(const std::vector<int>& qubits, std::size_t branch) {
  std::vector<std::size_t> masks;
  masks.reserve(qubits.size());
  for (int q : qubits) masks.push_back(mask_for(q));
  std::vector<double> bins(std::size_t{1} << qubits.size(), 0.0);
  kernels::bin_probabilities(amps_.data(), dim(), masks, bins.data(), backend_);
  if (branch >= bins.size()) throw BranchError("collapse: branch index out of range");
  const double p = bins[branch];
  if (p < kBranchFloor)
    throw BranchError("collapse: branch " + std::to_string(branch) + " has probability " +
                      std::to_string(p));
  kernels::project_to_bin(amps_.data(), dim(), masks, branch, backend_);
  kernels::scale(amps_.data(), dim(), 1.0 / std::sqrt(p), backend_);
}

void Statevector::append_zero_qubits(int k) {
  if (k < 0) throw std::invalid_argument("append_zero_qubits: negative count");
  if (k == 0) return;
  const int cap = qubit_cap();
  if (num_qubits_ + k > cap)
    throw ResourceError("append_zero_qubits: " + std::to_string(num_qubits_ + k) +
                        " qubits exceeds cap of " + std::to_string(cap));
  std::vector<cplx> grown(dim() << k, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < dim(); ++i) grown[i << k] = amps_[i];
  amps_ = std::move(grown);
  num_qubits_ += k;
}

void Statevector::drop_qubit(int q, int expected_bit) {
  check_qubit(q);
  if (num_qubits_ == 1) throw std::invalid_argument("drop_qubit: cannot drop the last qubit");
  if (expected_bit != 0 && expected_bit != 1)
    throw std::invalid_argument("drop_qubit: expected bit must be 0 or 1");
  const std::size_t mask = mask_for(q);
  const std::size_t low = mask - 1;
  double leak = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    const bool bit = (i & mask) != 0;
    if (bit != (expected_bit == 1)) leak += std::norm(amps_[i]);
  }
  if (leak > 1e-9)
    throw BranchError("drop_qubit: qubit " + std::to_string(q) +
                      " is not collapsed (stray mass " + std::to_string(leak) + ")");
  std::vector<cplx> shrunk(dim() / 2);
  const std::size_t keep = expected_bit ? mask : 0;
  for (std::size_t p = 0; p < shrunk.size(); ++p) {
    const std::size_t i = (((p & ~low) << 1) | (p & low)) | keep;
    shrunk[p] = amps_[i];
  }
  amps_ = std::move(shrunk);
  num_qubits_ -= 1;
  if (leak > 0.0) {
    const double kept = kernels::norm_sq(amps_.data(), amps_.size(), backend_);
    if (kept > 0.0) kernels::scale(amps_.data(), amps_.size(), 1.0 / std::sqrt(kept), backend_);
  }
}

Statevector new_zero_state(int num_qubits) { return Statevector(num_qubits); }

Statevector apply_gate(Statevector state, const Gate& g) {
  state.apply(g);
  return state;
}

std::pair<BitString, double> measure_computational_inplace(Statevector& state,
                                                           const std::vector<int>& qubits,
                                                           MeasurementPolicy& policy) {
  const std::vector<double> probs = state.branch_probabilities(qubits);
  const int branch = policy.pick(probs);
  state.collapse(qubits, static_cast<std::size_t>(branch));
  return {BitString::from_index(static_cast<std::uint64_t>(branch), static_cast<int>(qubits.size())),
          probs[branch]};
}

MeasurementOutcome measure_computational(const Statevector& state, const std::vector<int>& qubits,
                                         MeasurementPolicy& policy) {
  Statevector post = state;
  auto [bits, p] = measure_computational_inplace(post, qubits, policy);
  return {std::move(bits), p, std::move(post)};
}

BellOutcome measure_bell_rotated_inplace(Statevector& state, int q1, int q2, int s_exponent,
                                         MeasurementPolicy& policy) {
  if (q1 == q2) throw std::invalid_argument("measure_bell_rotated: qubits must differ");
  if (s_exponent != 0 && s_exponent != 1)
    throw std::invalid_argument("measure_bell_rotated: s exponent must be 0 or 1");
  if (s_exponent) state.apply(Gate::s(q1));
  state.apply(Gate::cnot(q1, q2));
  state.apply(Gate::h(q1));
  auto [bits, p] = measure_computational_inplace(state, {q1, q2}, policy);
  (void)p;
  return {bits.bit(1), bits.bit(0)};
}

std::pair<BellOutcome, Statevector> measure_bell_rotated(const Statevector& state, int q1, int q2,
                                                         int s_exponent, MeasurementPolicy& policy) {
  Statevector post = state;
  BellOutcome out = measure_bell_rotated_inplace(post, q1, q2, s_exponent, policy);
  return {out, std::move(post)};
}

bool equal_up_to_global_phase(const Statevector& x, const Statevector& y, double tol) {
  if (x.dim() != y.dim()) throw std::invalid_argument("equal_up_to_global_phase: dimension mismatch");
  std::size_t j = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < y.dim(); ++i) {
    const double m = std::abs(y.amp(i));
    if (m > best) {
      best = m;
      j = i;
    }
  }
  cplx phi{1.0, 0.0};
  if (best > 0.0) {
    const cplx ratio = x.amp(j) / y.amp(j);
    const double mag = std::abs(ratio);
    if (mag > 1e-12) phi = ratio / mag;
  }
  double dist2 = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) dist2 += std::norm(x.amp(i) - phi * y.amp(i));
  return std::sqrt(dist2) <= tol;
}

double fidelity(const Statevector& a, const Statevector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  cplx inner{0.0, 0.0};
  for (std::size_t i = 0; i < a.dim(); ++i) inner += std::conj(a.amp(i)) * b.amp(i);
  return std::norm(inner);
}

}  // namespace rbv
