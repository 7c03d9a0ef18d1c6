#include "rbv/qhe.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "rbv/errors.hpp"

namespace rbv::qhe {

using nlohmann::json;

PauliKey keygen(int n, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("keygen: negative register size");
  PauliKey key;
  key.a.resize(n);
  key.b.resize(n);
  for (int i = 0; i < n; ++i) key.a[i] = static_cast<std::uint8_t>(rng() & 1);
  for (int i = 0; i < n; ++i) key.b[i] = static_cast<std::uint8_t>(rng() & 1);
  return key;
}

PauliKey keygen(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return keygen(n, rng);
}

namespace {

void check_key_width(const Statevector& state, const PauliKey& key, const char* who) {
  if (key.size() != state.num_qubits())
    throw std::invalid_argument(std::string(who) + ": key covers " + std::to_string(key.size()) +
                                " qubits, state has " + std::to_string(state.num_qubits()));
}

Statevector apply_pad(Statevector state, const PauliKey& key) {
  for (int q = 0; q < key.size(); ++q) {
    if (key.b[q]) state.apply(Gate::z(q));
    if (key.a[q]) state.apply(Gate::x(q));
  }
  return state;
}

}  // namespace

// X^a Z^b is self-inverse up to the global phase (-1)^(a.b), so padding twice
// with the same key restores the plaintext ray.
Statevector qotp_encrypt(Statevector state, const PauliKey& key) {
  check_key_width(state, key, "qotp_encrypt");
  return apply_pad(std::move(state), key);
}

Statevector qotp_decrypt(Statevector state, const PauliKey& key) {
  check_key_width(state, key, "qotp_decrypt");
  return apply_pad(std::move(state), key);
}

PauliKey update_key_clifford(PauliKey key, const Gate& g) {
  validate_gate_shape(g);
  const auto check = [&key](int q) {
    if (q < 0 || q >= key.size())
      throw std::invalid_argument("update_key_clifford: qubit " + std::to_string(q) +
                                  " outside the key");
  };
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Z:
      check(g.target);
      return key;
    case GateKind::H:
      check(g.target);
      std::swap(key.a[g.target], key.b[g.target]);
      return key;
    case GateKind::S:
    case GateKind::Sdg:
      check(g.target);
      key.b[g.target] ^= key.a[g.target];
      return key;
    case GateKind::CNOT: {
      if (g.polarity[0] != 1)
        throw std::invalid_argument(
            "update_key_clifford: negated-control CNOT has no rule; conjugate with X first");
      const int c = g.controls[0];
      const int t = g.target;
      check(c);
      check(t);
      key.b[c] ^= key.b[t];
      key.a[t] ^= key.a[c];
      return key;
    }
    case GateKind::SWAP: {
      const int p = g.controls[0];
      const int q = g.target;
      check(p);
      check(q);
      std::swap(key.a[p], key.a[q]);
      std::swap(key.b[p], key.b[q]);
      return key;
    }
    default:
      throw std::invalid_argument(std::string("update_key_clifford: no key rule for ") +
                                  to_string(g.kind));
  }
}

const char* to_string(Mode m) { return m == Mode::eager ? "eager" : "deferred"; }

namespace {

// Fresh |Phi00> pair on (c, s) = (W, W+1), gate on the data qubit, then the
// data qubit trades places with s. Returns (c, s).
std::pair<int, int> provision_pair_and_swap(Statevector& backend, int data_qubit, GateKind gate) {
  if (gate != GateKind::T && gate != GateKind::Tdg)
    throw std::invalid_argument("teleport: gate must be T or Tdg");
  if (data_qubit < 0 || data_qubit >= backend.num_qubits())
    throw std::invalid_argument("teleport: data qubit out of range");
  const int c = backend.num_qubits();
  backend.append_zero_qubits(2);
  const int s = c + 1;
  backend.apply(Gate::h(c));
  backend.apply(Gate::cnot(c, s));
  backend.apply(gate == GateKind::T ? Gate::t(data_qubit) : Gate::tdg(data_qubit));
  backend.apply(Gate::swap_gate(data_qubit, s));
  return {c, s};
}

// Rotated Bell measurement on (s, c) followed by removal of both qubits.
// q1 of the measurement collapses to |b> and q2 to |a>; s sits above c, so
// dropping s first leaves c's index intact.
std::pair<int, int> measure_pair_and_drop(Statevector& backend, int qubit_s, int qubit_c, int u,
                                          MeasurementPolicy& policy) {
  const BellOutcome out = measure_bell_rotated_inplace(backend, qubit_s, qubit_c, u, policy);
  backend.drop_qubit(qubit_s, out.b);
  backend.drop_qubit(qubit_c, out.a);
  return {out.a, out.b};
}

std::pair<int, int> teleport_key_update(GateKind gate, int a, int b, int r_a, int r_b) {
  if (gate == GateKind::T) return {a ^ r_a, a ^ b ^ r_b};
  // Tdg commutation leaves an S^2 = Z correction that folds into the b bit.
  return {a ^ r_a, b ^ r_b};
}

}  // namespace

std::pair<std::pair<int, int>, TeleportEvent> teleport_t_gate(Statevector& backend, int data_qubit,
                                                              GateKind gate, int a, int b, Mode mode,
                                                              MeasurementPolicy& policy,
                                                              int event_id) {
  const auto [c, s] = provision_pair_and_swap(backend, data_qubit, gate);
  TeleportEvent ev;
  ev.event_id = event_id;
  ev.data_qubit = data_qubit;
  ev.gate = gate;
  ev.qubit_c = c;
  ev.qubit_s = s;
  if (mode == Mode::deferred) return {{a, b}, ev};
  const auto [r_a, r_b] = measure_pair_and_drop(backend, s, c, a, policy);
  ev.outcome = {r_a, r_b};
  return {teleport_key_update(gate, a, b, r_a, r_b), ev};
}

ClientLedger::ClientLedger(PauliKey initial, MeasurementPolicy& policy)
    : key_(std::move(initial)), policy_(&policy) {}

void ClientLedger::on_clifford(const Gate& g) { key_ = update_key_clifford(std::move(key_), g); }

void ClientLedger::eager_measure(Statevector& backend, const TeleportEvent& shell) {
  const int w = shell.data_qubit;
  if (w < 0 || w >= key_.size())
    throw std::invalid_argument("eager_measure: event data qubit outside the key");
  const int a = key_.a[w];
  const int b = key_.b[w];
  const auto [r_a, r_b] = measure_pair_and_drop(backend, shell.qubit_s, shell.qubit_c, a, *policy_);
  const auto [na, nb] = teleport_key_update(shell.gate, a, b, r_a, r_b);
  key_.a[w] = static_cast<std::uint8_t>(na);
  key_.b[w] = static_cast<std::uint8_t>(nb);
  outcomes_.emplace_back(r_a, r_b);
}

ServerEvalParts evaluate_server(const Circuit& circuit, Statevector encrypted, Mode mode,
                                const EvalObserver& observer) {
  if (circuit.num_qubits() != encrypted.num_qubits())
    throw std::invalid_argument("evaluate_server: circuit and state widths differ");
  EvalTranscript transcript;
  transcript.mode = mode;
  int next_event = 0;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::TOFFOLI || g.kind == GateKind::MCX)
      throw std::invalid_argument("evaluate_server: circuit must be Clifford+T, decompose first");
    if (g.kind == GateKind::T || g.kind == GateKind::Tdg) {
      if (mode == Mode::eager && !observer.on_teleport)
        throw std::invalid_argument("evaluate_server: eager mode requires an on_teleport observer");
      const auto [c, s] = provision_pair_and_swap(encrypted, g.target, g.kind);
      TeleportEvent ev;
      ev.event_id = next_event++;
      ev.data_qubit = g.target;
      ev.gate = g.kind;
      ev.qubit_c = c;
      ev.qubit_s = s;
      transcript.events.push_back(ev);  // no outcome on the server side, ever
      transcript.steps.push_back({g.kind, {g.target}, ev.event_id});
      if (observer.on_teleport) observer.on_teleport(encrypted, ev);
    } else {
      if (g.kind == GateKind::CNOT && g.polarity[0] != 1)
        throw std::invalid_argument("evaluate_server: negated-control CNOT, conjugate with X first");
      encrypted.apply(g);
      KeyUpdateStep step;
      step.rule = g.kind;
      if (g.kind == GateKind::CNOT || g.kind == GateKind::SWAP)
        step.qubits = {g.controls[0], g.target};
      else
        step.qubits = {g.target};
      transcript.steps.push_back(std::move(step));
      if (observer.on_clifford) observer.on_clifford(g);
    }
  }
  return {std::move(encrypted), std::move(transcript)};
}

EvalResult evaluate(const Circuit& circuit, const Statevector& encrypted, const PauliKey& initial_key,
                    Mode mode, MeasurementPolicy& policy) {
  ClientLedger ledger(initial_key, policy);
  EvalObserver observer;
  if (mode == Mode::eager) {
    // The rotation exponent of each Bell measurement is the data qubit's
    // current a bit, so the ledger must track every Clifford update live.
    observer.on_clifford = [&ledger](const Gate& g) { ledger.on_clifford(g); };
    observer.on_teleport = [&ledger](Statevector& st, const TeleportEvent& ev) {
      ledger.eager_measure(st, ev);
    };
  }
  ServerEvalParts parts = evaluate_server(circuit, encrypted, mode, observer);
  EvalResult res{std::move(parts.state), std::move(parts.server_transcript), {}};
  if (mode == Mode::eager) {
    const auto& outs = ledger.outcomes();
    std::size_t next = 0;
    for (auto& ev : res.transcript.events) ev.outcome = outs.at(next++);
    res.eager_final_key = ledger.key();
  }
  return res;
}

namespace {

Gate gate_from_step(const KeyUpdateStep& step) {
  const auto need = [&step](std::size_t arity) {
    if (step.qubits.size() != arity)
      throw ProtocolError(std::string("decrypt: step for ") + to_string(step.rule) + " lists " +
                          std::to_string(step.qubits.size()) + " qubits, wants " +
                          std::to_string(arity));
  };
  switch (step.rule) {
    case GateKind::X:
      need(1);
      return Gate::x(step.qubits[0]);
    case GateKind::Z:
      need(1);
      return Gate::z(step.qubits[0]);
    case GateKind::H:
      need(1);
      return Gate::h(step.qubits[0]);
    case GateKind::S:
      need(1);
      return Gate::s(step.qubits[0]);
    case GateKind::Sdg:
      need(1);
      return Gate::sdg(step.qubits[0]);
    case GateKind::CNOT:
      need(2);
      return Gate::cnot(step.qubits[0], step.qubits[1]);
    case GateKind::SWAP:
      need(2);
      return Gate::swap_gate(step.qubits[0], step.qubits[1]);
    default:
      throw ProtocolError(std::string("decrypt: step rule ") + to_string(step.rule) +
                          " is not a Clifford key rule");
  }
}

}  // namespace

DecryptResult decrypt(const Statevector& output, const EvalTranscript& transcript,
                      const PauliKey& initial_key, MeasurementPolicy& policy,
                      std::vector<PauliKey>* snapshots) {
  Statevector state = output;
  PauliKey key = initial_key;
  EvalTranscript completed = transcript;
  int expected_next = 0;
  for (const KeyUpdateStep& step : completed.steps) {
    if (step.event_id.has_value()) {
      const int id = *step.event_id;
      if (id != expected_next)
        throw ProtocolError("decrypt: teleport event " + std::to_string(id) +
                            " out of order, expected " + std::to_string(expected_next));
      ++expected_next;
      if (id < 0 || id >= static_cast<int>(completed.events.size()))
        throw ProtocolError("decrypt: step references missing event " + std::to_string(id));
      TeleportEvent& ev = completed.events[static_cast<std::size_t>(id)];
      if (ev.event_id != id || ev.gate != step.rule ||
          step.qubits != std::vector<int>{ev.data_qubit})
        throw ProtocolError("decrypt: step and event " + std::to_string(id) + " disagree");
      const int w = ev.data_qubit;
      if (w < 0 || w >= key.size())
        throw ProtocolError("decrypt: event " + std::to_string(id) + " targets a qubit outside the key");
      const int a = key.a[w];
      const int b = key.b[w];
      int r_a = 0;
      int r_b = 0;
      if (completed.mode == Mode::eager) {
        if (!ev.outcome.has_value())
          throw ProtocolError("decrypt: eager event " + std::to_string(id) + " carries no outcome");
        r_a = ev.outcome->first;
        r_b = ev.outcome->second;
      } else {
        if (ev.outcome.has_value())
          throw ProtocolError("decrypt: deferred event " + std::to_string(id) +
                              " was already measured");
        // Pairs were appended above the data register in event order and are
        // consumed in the same order, so the pair up for measurement always
        // sits directly above the data qubits.
        const int cur_c = key.size();
        const int cur_s = cur_c + 1;
        const auto [ra, rb] = measure_pair_and_drop(state, cur_s, cur_c, a, policy);
        r_a = ra;
        r_b = rb;
        ev.outcome = {r_a, r_b};
      }
      const auto [na, nb] = teleport_key_update(ev.gate, a, b, r_a, r_b);
      key.a[w] = static_cast<std::uint8_t>(na);
      key.b[w] = static_cast<std::uint8_t>(nb);
    } else {
      key = update_key_clifford(std::move(key), gate_from_step(step));
    }
    if (snapshots) snapshots->push_back(key);
  }
  if (expected_next != static_cast<int>(completed.events.size()))
    throw ProtocolError("decrypt: transcript holds " + std::to_string(completed.events.size()) +
                        " events but only " + std::to_string(expected_next) + " steps reference one");
  Statevector plain = qotp_decrypt(std::move(state), key);
  return {std::move(plain), std::move(key), std::move(completed)};
}

SchemeReport run_scheme(const Circuit& circuit, const Statevector& plaintext, Mode mode,
                        std::uint64_t key_seed, MeasurementPolicy& policy) {
  if (circuit.num_qubits() != plaintext.num_qubits())
    throw std::invalid_argument("run_scheme: circuit and plaintext widths differ");
  // Setup: the pair budget equals the number of T/Tdg gates.
  int m = 0;
  for (const Gate& g : circuit.gates())
    if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++m;
  const PauliKey key = keygen(circuit.num_qubits(), key_seed);
  Statevector encrypted = qotp_encrypt(plaintext, key);
  EvalResult eval = evaluate(circuit, encrypted, key, mode, policy);
  std::vector<PauliKey> snapshots;
  DecryptResult dec = decrypt(eval.state, eval.transcript, key, policy, &snapshots);
  Statevector direct = plaintext;
  direct.apply(circuit);
  const double fid = fidelity(dec.plaintext, direct);
  return SchemeReport{std::move(dec.completed), fid,
                      m,  m,
                      std::move(dec.final_key), std::move(dec.plaintext),
                      std::move(snapshots)};
}

SchemeReport run_scheme(const Circuit& circuit, const Statevector& plaintext, Mode mode,
                        std::uint64_t seed) {
  MeasurementPolicy policy = MeasurementPolicy::seeded(seed ^ 0x9e3779b97f4a7c15ull);
  return run_scheme(circuit, plaintext, mode, seed, policy);
}

std::string serialize(const EvalTranscript& t) {
  json j;
  j["mode"] = to_string(t.mode);
  j["m"] = t.m();
  j["steps"] = json::array();
  for (const KeyUpdateStep& s : t.steps) {
    json js;
    js["rule"] = to_string(s.rule);
    js["qubits"] = s.qubits;
    if (s.event_id) js["event"] = *s.event_id;
    j["steps"].push_back(std::move(js));
  }
  j["events"] = json::array();
  for (const TeleportEvent& e : t.events) {
    json je;
    je["id"] = e.event_id;
    je["qubit"] = e.data_qubit;
    je["gate"] = to_string(e.gate);
    if (e.outcome) {
      je["r_a"] = e.outcome->first;
      je["r_b"] = e.outcome->second;
    } else {
      je["r_a"] = nullptr;
      je["r_b"] = nullptr;
    }
    j["events"].push_back(std::move(je));
  }
  return j.dump(2) + "\n";
}

namespace {

std::string transcript_line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return std::to_string(line);
}

int require_int(const json& j, const char* key, const std::string& locus) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(locus + "." + key + ": missing or not an integer");
  return j[key].get<int>();
}

}  // namespace

EvalTranscript transcript_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("JSON parse error at line " + transcript_line_of(text, e.byte) + ": " +
                     e.what());
  }
  if (!j.is_object()) throw ParseError("transcript: top level must be an object");
  if (!j.contains("mode") || !j["mode"].is_string())
    throw ParseError("transcript: missing string field \"mode\"");
  EvalTranscript t;
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "eager")
    t.mode = Mode::eager;
  else if (mode == "deferred")
    t.mode = Mode::deferred;
  else
    throw ParseError("transcript.mode: unknown mode \"" + mode + "\"");
  if (!j.contains("steps") || !j["steps"].is_array())
    throw ParseError("transcript: missing array field \"steps\"");
  if (!j.contains("events") || !j["events"].is_array())
    throw ParseError("transcript: missing array field \"events\"");

  std::size_t idx = 0;
  for (const json& e : j["steps"]) {
    const std::string locus = "steps[" + std::to_string(idx) + "]";
    if (!e.is_object()) throw ParseError(locus + ": must be an object");
    if (!e.contains("rule") || !e["rule"].is_string())
      throw ParseError(locus + ".rule: missing or not a string");
    const auto kind = gate_kind_from(e["rule"].get<std::string>());
    if (!kind) throw ParseError(locus + ".rule: unknown gate \"" + e["rule"].get<std::string>() + "\"");
    KeyUpdateStep step;
    step.rule = *kind;
    if (!e.contains("qubits") || !e["qubits"].is_array())
      throw ParseError(locus + ".qubits: missing or not an array");
    step.qubits = e["qubits"].get<std::vector<int>>();
    if (e.contains("event")) {
      if (!e["event"].is_number_integer())
        throw ParseError(locus + ".event: must be an integer");
      step.event_id = e["event"].get<int>();
    }
    if ((step.rule == GateKind::T || step.rule == GateKind::Tdg) != step.event_id.has_value())
      throw ParseError(locus + ": \"event\" is required exactly for T/Tdg steps");
    t.steps.push_back(std::move(step));
    ++idx;
  }

  idx = 0;
  for (const json& e : j["events"]) {
    const std::string locus = "events[" + std::to_string(idx) + "]";
    if (!e.is_object()) throw ParseError(locus + ": must be an object");
    TeleportEvent ev;
    ev.event_id = require_int(e, "id", locus);
    ev.data_qubit = require_int(e, "qubit", locus);
    if (!e.contains("gate") || !e["gate"].is_string())
      throw ParseError(locus + ".gate: missing or not a string");
    const auto kind = gate_kind_from(e["gate"].get<std::string>());
    if (!kind || (*kind != GateKind::T && *kind != GateKind::Tdg))
      throw ParseError(locus + ".gate: must be T or Tdg");
    ev.gate = *kind;
    if (!e.contains("r_a") || !e.contains("r_b"))
      throw ParseError(locus + ": missing \"r_a\"/\"r_b\" (use null when unmeasured)");
    const bool a_null = e["r_a"].is_null();
    const bool b_null = e["r_b"].is_null();
    if (a_null != b_null) throw ParseError(locus + ": r_a and r_b must be filled together");
    if (!a_null) {
      if (!e["r_a"].is_number_integer() || !e["r_b"].is_number_integer())
        throw ParseError(locus + ": r_a and r_b must be integers or null");
      const int ra = e["r_a"].get<int>();
      const int rb = e["r_b"].get<int>();
      if ((ra & ~1) || (rb & ~1)) throw ParseError(locus + ": r_a and r_b must be 0 or 1");
      ev.outcome = {ra, rb};
    }
    t.events.push_back(std::move(ev));
    ++idx;
  }

  if (j.contains("m")) {
    if (!j["m"].is_number_integer() || j["m"].get<int>() != t.m())
      throw ParseError("transcript.m: does not match the event count");
  }
  return t;
}

}  // namespace rbv::qhe
