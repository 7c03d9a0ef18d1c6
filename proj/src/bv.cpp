#include "rbv/bv.hpp"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "rbv/errors.hpp"
#include "rbv/statevector.hpp"

namespace rbv {

using nlohmann::json;

namespace {

void check_structure(const RecursiveInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("instance: n must be >= 1");
  const std::size_t count = std::size_t{1} << inst.n;
  if (inst.s.size() != inst.n) throw std::invalid_argument("instance: s has wrong width");
  if (inst.s_map.size() != count)
    throw std::invalid_argument("instance: s_map must have exactly 2^n entries");
  if (inst.g_table.size() != count)
    throw std::invalid_argument("instance: g_table must have exactly 2^n entries");
  for (std::size_t i = 0; i < count; ++i) {
    if (inst.s_map[i].size() != inst.n)
      throw std::invalid_argument("instance: s_map entry " + std::to_string(i) + " has wrong width");
    if (inst.g_table[i] != 0 && inst.g_table[i] != 1)
      throw std::invalid_argument("instance: g_table entry " + std::to_string(i) +
                                  " must be 0 or 1");
  }
}

RegisterLabels recursive_labels(int n) {
  RegisterLabels l;
  for (int i = 0; i < n; ++i) l.register1.push_back(i);
  for (int i = 0; i < n; ++i) l.register2.push_back(n + i);
  l.ancilla1 = {2 * n};
  l.ancilla2 = {2 * n + 1};
  return l;
}

}  // namespace

InstanceDiagnostics validate_instance(const RecursiveInstance& inst) {
  check_structure(inst);
  InstanceDiagnostics d;
  const std::size_t count = std::size_t{1} << inst.n;
  int zeros = 0;
  for (std::size_t v = 0; v < count; ++v) {
    if (inst.g_table[v] == 0) {
      d.g_attains_zero = true;
      ++zeros;
    } else {
      d.g_attains_one = true;
    }
  }
  d.g_balanced = (zeros * 2 == static_cast<int>(count));
  for (std::size_t x1 = 0; x1 < count; ++x1) {
    const BitString x1b = BitString::from_index(x1, inst.n);
    const std::uint64_t inner = inst.s_map[x1].index();
    if (inst.g_table[inner] != inst.s.dot(x1b)) d.inconsistent_x1.push_back(x1);
  }
  d.ok = d.inconsistent_x1.empty() && d.g_attains_zero && d.g_attains_one;
  return d;
}

bool g_matches_linear_s(const RecursiveInstance& inst) {
  const std::size_t count = std::size_t{1} << inst.n;
  for (std::size_t v = 0; v < count; ++v)
    if (inst.g_table[v] != inst.s.dot(BitString::from_index(v, inst.n))) return false;
  return true;
}

Circuit oracle_nonrecursive(const BitString& s) {
  const int n = s.size();
  if (n < 1) throw std::invalid_argument("oracle_nonrecursive: empty hidden string");
  Circuit c(n + 1);
  for (int i : s.one_positions()) c.append(Gate::cnot(i, n));
  return c;
}

Circuit build_nonrecursive_circuit(const NonrecursiveInstance& inst) {
  if (inst.n < 1 || inst.s.size() != inst.n)
    throw std::invalid_argument("nonrecursive instance: bad width");
  RegisterLabels labels;
  for (int i = 0; i < inst.n; ++i) labels.register1.push_back(i);
  labels.ancilla1 = {inst.n};
  Circuit c(inst.n + 1, labels);
  c.append(Gate::x(inst.n));
  for (int i = 0; i <= inst.n; ++i) c.append(Gate::h(i));
  c.extend(oracle_nonrecursive(inst.s));
  for (int i = 0; i < inst.n; ++i) c.append(Gate::h(i));
  return c;
}

Circuit oracle_general_k2(const RecursiveInstance& inst) {
  check_structure(inst);
  const int n = inst.n;
  Circuit c(2 * n + 2);
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t x1 = 0; x1 < count; ++x1) {
    const BitString x1b = BitString::from_index(x1, n);
    for (int j : inst.s_map[x1].one_positions()) {
      std::vector<int> controls, polarity;
      for (int i = 0; i < n; ++i) {
        controls.push_back(i);
        polarity.push_back(x1b.bit(i));
      }
      controls.push_back(n + j);
      polarity.push_back(1);
      c.append(Gate::mcx(std::move(controls), std::move(polarity), 2 * n));
    }
  }
  return c;
}

Circuit oracle_g(const RecursiveInstance& inst) {
  check_structure(inst);
  const int n = inst.n;
  Circuit c(2 * n + 2);
  if (g_matches_linear_s(inst)) {
    for (int i : inst.s.one_positions()) c.append(Gate::cnot(n + i, 2 * n + 1));
    return c;
  }
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t v = 0; v < count; ++v) {
    if (inst.g_table[v] != 1) continue;
    const BitString vb = BitString::from_index(v, n);
    std::vector<int> controls, polarity;
    for (int i = 0; i < n; ++i) {
      controls.push_back(n + i);
      polarity.push_back(vb.bit(i));
    }
    c.append(Gate::mcx(std::move(controls), std::move(polarity), 2 * n + 1));
  }
  return c;
}

Circuit build_recursive_circuit(const RecursiveInstance& inst) {
  return build_recursive_circuit(inst, oracle_general_k2(inst));
}

Circuit build_recursive_circuit(const RecursiveInstance& inst, const Circuit& inner_oracle) {
  check_structure(inst);
  const int n = inst.n;
  if (inner_oracle.num_qubits() != 2 * n + 2)
    throw std::invalid_argument("build_recursive_circuit: inner oracle has wrong width");
  Circuit c(2 * n + 2, recursive_labels(n));
  c.append(Gate::x(2 * n));
  c.append(Gate::x(2 * n + 1));
  for (int q = 0; q < 2 * n + 2; ++q) c.append(Gate::h(q));
  c.extend(inner_oracle);
  for (int q = n; q < 2 * n; ++q) c.append(Gate::h(q));
  c.extend(oracle_g(inst));
  for (int q = n; q < 2 * n; ++q) c.append(Gate::h(q));
  c.extend(inner_oracle);
  for (int q = 0; q < n; ++q) c.append(Gate::h(q));
  return c;
}

SolveResult solve(const Circuit& circuit) {
  if (circuit.labels().register1.empty())
    throw std::invalid_argument("solve: circuit has no register1 labels");
  Statevector sv = new_zero_state(circuit.num_qubits());
  sv.apply(circuit);
  const std::vector<int>& reg1 = circuit.labels().register1;
  const std::vector<double> probs = sv.branch_probabilities(reg1);
  std::size_t top = 0;
  for (std::size_t i = 1; i < probs.size(); ++i)
    if (probs[i] > probs[top]) top = i;
  if (probs[top] < 1.0 - 1e-9) {
    std::string msg = "solve: register-1 outcome is not deterministic; top branches:";
    std::vector<std::size_t> order(probs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return probs[a] > probs[b]; });
    for (std::size_t k = 0; k < std::min<std::size_t>(3, order.size()); ++k)
      msg += " " + BitString::from_index(order[k], static_cast<int>(reg1.size())).str() + ":" +
             std::to_string(probs[order[k]]);
    throw NondeterministicOutcome(msg);
  }
  return {BitString::from_index(top, static_cast<int>(reg1.size())), probs[top]};
}

std::string serialize(const RecursiveInstance& inst) {
  check_structure(inst);
  json j;
  j["n"] = inst.n;
  j["s"] = inst.s.str();
  json sm = json::object();
  json gt = json::object();
  const std::size_t count = std::size_t{1} << inst.n;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string key = BitString::from_index(i, inst.n).str();
    sm[key] = inst.s_map[i].str();
    gt[key] = inst.g_table[i];
  }
  j["s_map"] = std::move(sm);
  j["g_table"] = std::move(gt);
  return j.dump(2) + "\n";
}

RecursiveInstance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("instance file: missing integer field \"n\"");
  RecursiveInstance inst;
  inst.n = j["n"].get<int>();
  if (inst.n < 1 || inst.n > 20) throw ParseError("instance file: n out of range");
  if (!j.contains("s") || !j["s"].is_string())
    throw ParseError("instance file: missing string field \"s\"");
  inst.s = BitString::parse(j["s"].get<std::string>());
  if (inst.s.size() != inst.n) throw ParseError("instance file: s has wrong width");
  if (!j.contains("s_map") || !j["s_map"].is_object())
    throw ParseError("instance file: missing object field \"s_map\"");
  if (!j.contains("g_table") || !j["g_table"].is_object())
    throw ParseError("instance file: missing object field \"g_table\"");
  const std::size_t count = std::size_t{1} << inst.n;
  inst.s_map.resize(count);
  inst.g_table.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string key = BitString::from_index(i, inst.n).str();
    if (!j["s_map"].contains(key))
      throw ParseError("instance file: missing s_map entry for \"" + key + "\"");
    if (!j["s_map"][key].is_string())
      throw ParseError("instance file: s_map[\"" + key + "\"] must be a string");
    inst.s_map[i] = BitString::parse(j["s_map"][key].get<std::string>());
    if (inst.s_map[i].size() != inst.n)
      throw ParseError("instance file: s_map[\"" + key + "\"] has wrong width");
    if (!j["g_table"].contains(key))
      throw ParseError("instance file: missing g_table entry for \"" + key + "\"");
    if (!j["g_table"][key].is_number_integer())
      throw ParseError("instance file: g_table[\"" + key + "\"] must be 0 or 1");
    inst.g_table[i] = j["g_table"][key].get<int>();
    if (inst.g_table[i] != 0 && inst.g_table[i] != 1)
      throw ParseError("instance file: g_table[\"" + key + "\"] must be 0 or 1");
  }
  return inst;
}

}  // namespace rbv
