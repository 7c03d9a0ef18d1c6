#pragma once

#include <string>
#include <vector>

#include "rbv/gate.hpp"

namespace rbv {

// Optional role annotations used by the solvers and the CLI. Synthesized
// circuits always carry them; hand-written circuit files may omit them.
struct RegisterLabels {
  std::vector<int> register1;
  std::vector<int> register2;
  std::vector<int> ancilla1;
  std::vector<int> ancilla2;

  bool empty() const {
    return register1.empty() && register2.empty() && ancilla1.empty() && ancilla2.empty();
  }
  bool operator==(const RegisterLabels&) const = default;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, RegisterLabels labels = {});

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  const RegisterLabels& labels() const { return labels_; }
  RegisterLabels& labels() { return labels_; }

  // Validates gate shape and operand range before accepting.
  void append(Gate g);
  // Appends every gate of `other` (which must not be wider than this circuit).
  void extend(const Circuit& other);

  bool operator==(const Circuit&) const = default;

 private:
  int num_qubits_ = 0;
  std::vector<Gate> gates_;
  RegisterLabels labels_;
};

Circuit concat(const Circuit& a, const Circuit& b);

// Exact Clifford+T realization of a Toffoli gate: 7 T/Tdg, 6 CNOT, 2 H.
// Negated controls are handled by conjugating the corresponding control wire
// with X before and after the core network.
std::vector<Gate> decompose_toffoli(const Gate& g);

// Rewrites every TOFFOLI via decompose_toffoli and X-conjugates negated-control
// CNOTs; all other gates pass through untouched. MCX gates are rejected.
Circuit decompose_to_clifford_t(const Circuit& c);

struct TCountReport {
  long long t_gates = 0;        // T/Tdg present, plus 7 per TOFFOLI
  long long toffolis_before_decomposition = 0;
  long long mcx_before_decomposition = 0;
  long long cnots = 0;          // literal CNOT gates in the circuit as given
};

TCountReport t_count(const Circuit& c);

// Canonical JSON (sorted keys, two-space indent, trailing newline), so
// serialize(deserialize(s)) == s byte-for-byte on canonical input.
std::string serialize(const Circuit& c);
Circuit deserialize_circuit(const std::string& text);

}  // namespace rbv
