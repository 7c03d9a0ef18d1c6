#include <json.hpp>

#include "rbv/circuit.hpp"
#include "rbv/errors.hpp"

// Circuit file format:
// {
//   "num_qubits": 6,
//   "gates": [{"kind": "TOFFOLI", "target": 4, "controls": [0, 2], "polarity": [1, 1]}, ...],
//   "labels": {"register1": [0, 1], "register2": [2, 3], "ancilla1": [4], "ancilla2": [5]}
// }
// "labels" is optional. Keys are emitted sorted, making the encoding canonical.

namespace rbv {

using nlohmann::json;

namespace {

std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return std::to_string(line);
}

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON parse error at line " + line_of(text, e.byte) + ": " + e.what());
  }
}

}  // namespace

std::string serialize(const Circuit& c) {
  json j;
  j["num_qubits"] = c.num_qubits();
  j["gates"] = json::array();
  for (const Gate& g : c.gates()) {
    json e;
    e["kind"] = to_string(g.kind);
    e["target"] = g.target;
    e["controls"] = g.controls;
    e["polarity"] = g.polarity;
    j["gates"].push_back(std::move(e));
  }
  if (!c.labels().empty()) {
    json l;
    l["register1"] = c.labels().register1;
    l["register2"] = c.labels().register2;
    l["ancilla1"] = c.labels().ancilla1;
    l["ancilla2"] = c.labels().ancilla2;
    j["labels"] = std::move(l);
  }
  return j.dump(2) + "\n";
}

Circuit deserialize_circuit(const std::string& text) {
  const json j = parse_or_throw(text);
  if (!j.is_object()) throw ParseError("circuit file: top level must be an object");
  if (!j.contains("num_qubits") || !j["num_qubits"].is_number_integer())
    throw ParseError("circuit file: missing integer field \"num_qubits\"");
  if (!j.contains("gates") || !j["gates"].is_array())
    throw ParseError("circuit file: missing array field \"gates\"");

  RegisterLabels labels;
  if (j.contains("labels")) {
    const json& l = j["labels"];
    if (!l.is_object()) throw ParseError("circuit file: \"labels\" must be an object");
    const auto load = [&](const char* key, std::vector<int>& out) {
      if (l.contains(key)) {
        if (!l[key].is_array()) throw ParseError(std::string("labels.") + key + ": must be an array");
        out = l[key].get<std::vector<int>>();
      }
    };
    load("register1", labels.register1);
    load("register2", labels.register2);
    load("ancilla1", labels.ancilla1);
    load("ancilla2", labels.ancilla2);
  }

  Circuit c(j["num_qubits"].get<int>(), std::move(labels));
  std::size_t idx = 0;
  for (const json& e : j["gates"]) {
    const std::string locus = "gates[" + std::to_string(idx) + "]";
    if (!e.is_object()) throw ParseError(locus + ": must be an object");
    if (!e.contains("kind") || !e["kind"].is_string())
      throw ParseError(locus + ".kind: missing or not a string");
    const auto kind = gate_kind_from(e["kind"].get<std::string>());
    if (!kind) throw ParseError(locus + ".kind: unknown gate \"" + e["kind"].get<std::string>() + "\"");
    if (!e.contains("target") || !e["target"].is_number_integer())
      throw ParseError(locus + ".target: missing or not an integer");
    Gate g;
    g.kind = *kind;
    g.target = e["target"].get<int>();
    if (e.contains("controls")) {
      if (!e["controls"].is_array()) throw ParseError(locus + ".controls: must be an array");
      g.controls = e["controls"].get<std::vector<int>>();
    }
    if (e.contains("polarity")) {
      if (!e["polarity"].is_array()) throw ParseError(locus + ".polarity: must be an array");
      g.polarity = e["polarity"].get<std::vector<int>>();
    }
    try {
      c.append(std::move(g));
    } catch (const std::invalid_argument& err) {
      throw ParseError(locus + ": " + err.what());
    }
    ++idx;
  }
  return c;
}

}  // namespace rbv
