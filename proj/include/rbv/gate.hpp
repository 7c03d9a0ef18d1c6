#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace rbv {

enum class GateKind { X, Z, H, S, Sdg, T, Tdg, CNOT, SWAP, TOFFOLI, MCX };

const char* to_string(GateKind k);
std::optional<GateKind> gate_kind_from(std::string_view name);

bool is_single_qubit(GateKind k);
// True for the gates whose key-update rule is a Clifford rule (includes SWAP).
bool is_clifford(GateKind k);

// One circuit operation. `controls`/`polarity` are aligned; polarity 1 means the
// control activates on |1>, 0 means it activates on |0>. SWAP stores its second
// operand in controls[0] (polarity ignored, kept as 1 for shape uniformity).
struct Gate {
  GateKind kind{};
  int target{};
  std::vector<int> controls{};
  std::vector<int> polarity{};

  static Gate x(int q) { return {GateKind::X, q, {}, {}}; }
  static Gate z(int q) { return {GateKind::Z, q, {}, {}}; }
  static Gate h(int q) { return {GateKind::H, q, {}, {}}; }
  static Gate s(int q) { return {GateKind::S, q, {}, {}}; }
  static Gate sdg(int q) { return {GateKind::Sdg, q, {}, {}}; }
  static Gate t(int q) { return {GateKind::T, q, {}, {}}; }
  static Gate tdg(int q) { return {GateKind::Tdg, q, {}, {}}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, t, {c}, {1}}; }
  static Gate swap_gate(int a, int b) { return {GateKind::SWAP, b, {a}, {1}}; }
  static Gate toffoli(int c1, int c2, int t) { return {GateKind::TOFFOLI, t, {c1, c2}, {1, 1}}; }
  static Gate toffoli_pol(int c1, int p1, int c2, int p2, int t) {
    return {GateKind::TOFFOLI, t, {c1, c2}, {p1, p2}};
  }
  static Gate mcx(std::vector<int> controls, std::vector<int> polarity, int t) {
    return {GateKind::MCX, t, std::move(controls), std::move(polarity)};
  }

  bool operator==(const Gate&) const = default;
};

// Structural checks independent of any particular circuit width: control arity
// per kind, polarity alignment, pairwise-distinct operands. Throws
// std::invalid_argument naming the violated requirement.
void validate_gate_shape(const Gate& g);

}  // namespace rbv
