#include "rbv/circuit.hpp"

#include <stdexcept>
#include <string>

namespace rbv {

Circuit::Circuit(int num_qubits, RegisterLabels labels)
    : num_qubits_(num_qubits), labels_(std::move(labels)) {
  if (num_qubits < 1) throw std::invalid_argument("Circuit: need at least one qubit");
}

void Circuit::append(Gate g) {
  validate_gate_shape(g);
  const auto check = [&](int q) {
    if (q < 0 || q >= num_qubits_)
      throw std::invalid_argument("Circuit::append: qubit " + std::to_string(q) +
                                  " out of range for width " + std::to_string(num_qubits_));
  };
  check(g.target);
  for (int c : g.controls) check(c);
  gates_.push_back(std::move(g));
}

void Circuit::extend(const Circuit& other) {
  if (other.num_qubits() > num_qubits_)
    throw std::invalid_argument("Circuit::extend: other circuit is wider");
  for (const Gate& g : other.gates()) append(g);
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("concat: circuits have different widths");
  Circuit out = a;
  out.extend(b);
  return out;
}

std::vector<Gate> decompose_toffoli(const Gate& g) {
  if (g.kind != GateKind::TOFFOLI)
    throw std::invalid_argument("decompose_toffoli: expected a TOFFOLI gate");
  validate_gate_shape(g);
  const int c1 = g.controls[0], c2 = g.controls[1], t = g.target;

  std::vector<Gate> out;
  std::vector<int> negated;
  for (std::size_t i = 0; i < 2; ++i)
    if (g.polarity[i] == 0) negated.push_back(g.controls[i]);

  for (int q : negated) out.push_back(Gate::x(q));
  out.push_back(Gate::h(t));
  out.push_back(Gate::cnot(c2, t));
  out.push_back(Gate::tdg(t));
  out.push_back(Gate::cnot(c1, t));
  out.push_back(Gate::t(t));
  out.push_back(Gate::cnot(c2, t));
  out.push_back(Gate::tdg(t));
  out.push_back(Gate::cnot(c1, t));
  out.push_back(Gate::t(c2));
  out.push_back(Gate::t(t));
  out.push_back(Gate::h(t));
  out.push_back(Gate::cnot(c1, c2));
  out.push_back(Gate::t(c1));
  out.push_back(Gate::tdg(c2));
  out.push_back(Gate::cnot(c1, c2));
  for (int q : negated) out.push_back(Gate::x(q));
  return out;
}

Circuit decompose_to_clifford_t(const Circuit& c) {
  Circuit out(c.num_qubits(), c.labels());
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::TOFFOLI:
        for (Gate& d : decompose_toffoli(g)) out.append(std::move(d));
        break;
      case GateKind::MCX:
        throw std::invalid_argument(
            "decompose_to_clifford_t: MCX has no supported Clifford+T expansion here");
      case GateKind::CNOT:
        if (g.polarity[0] == 0) {
          out.append(Gate::x(g.controls[0]));
          out.append(Gate::cnot(g.controls[0], g.target));
          out.append(Gate::x(g.controls[0]));
        } else {
          out.append(g);
        }
        break;
      default:
        out.append(g);
        break;
    }
  }
  return out;
}

TCountReport t_count(const Circuit& c) {
  TCountReport r;
  for (const Gate& g : c.gates()) {
    switch (g.kind) {
      case GateKind::T:
      case GateKind::Tdg:
        r.t_gates += 1;
        break;
      case GateKind::TOFFOLI:
        r.toffolis_before_decomposition += 1;
        r.t_gates += 7;
        break;
      case GateKind::MCX:
        r.mcx_before_decomposition += 1;
        break;
      case GateKind::CNOT:
        r.cnots += 1;
        break;
      default:
        break;
    }
  }
  return r;
}

}  // namespace rbv
