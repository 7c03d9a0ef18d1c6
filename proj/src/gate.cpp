#include "rbv/gate.hpp"

#include <stdexcept>
#include <string>

namespace rbv {

const char* to_string(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "Tdg";
    case GateKind::CNOT: return "CNOT";
    case GateKind::SWAP: return "SWAP";
    case GateKind::TOFFOLI: return "TOFFOLI";
    case GateKind::MCX: return "MCX";
  }
  return "?";
}

std::optional<GateKind> gate_kind_from(std::string_view name) {
  using GK = GateKind;
  if (name == "X") return GK::X;
  if (name == "Z") return GK::Z;
  if (name == "H") return GK::H;
  if (name == "S") return GK::S;
  if (name == "Sdg") return GK::Sdg;
  if (name == "T") return GK::T;
  if (name == "Tdg") return GK::Tdg;
  if (name == "CNOT") return GK::CNOT;
  if (name == "SWAP") return GK::SWAP;
  if (name == "TOFFOLI") return GK::TOFFOLI;
  if (name == "MCX") return GK::MCX;
  return std::nullopt;
}

bool is_single_qubit(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
      return true;
    default:
      return false;
  }
}

bool is_clifford(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::CNOT:
    case GateKind::SWAP:
      return true;
    default:
      return false;
  }
}

void validate_gate_shape(const Gate& g) {
  const auto fail = [&](const std::string& why) {
    throw std::invalid_argument(std::string(to_string(g.kind)) + ": " + why);
  };
  std::size_t want = 0;
  switch (g.kind) {
    case GateKind::CNOT:
    case GateKind::SWAP:
      want = 1;
      break;
    case GateKind::TOFFOLI:
      want = 2;
      break;
    case GateKind::MCX:
      if (g.controls.empty()) fail("needs at least one control");
      want = g.controls.size();
      break;
    default:
      want = 0;
      break;
  }
  if (g.controls.size() != want)
    fail("expected " + std::to_string(want) + " control(s), got " + std::to_string(g.controls.size()));
  if (g.polarity.size() != g.controls.size()) fail("polarity list must align with controls");
  for (int p : g.polarity)
    if (p != 0 && p != 1) fail("polarity entries must be 0 or 1");
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    if (g.controls[i] == g.target) fail("target coincides with a control");
    for (std::size_t j = i + 1; j < g.controls.size(); ++j)
      if (g.controls[i] == g.controls[j]) fail("duplicate control qubit");
  }
}

}  // namespace rbv
