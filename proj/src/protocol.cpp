#include "rbv/protocol.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "rbv/errors.hpp"

namespace rbv::proto {

using nlohmann::json;

const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::SETUP: return "SETUP";
    case MessageKind::ENCRYPTED_INPUT: return "ENCRYPTED_INPUT";
    case MessageKind::EVAL_RESULT: return "EVAL_RESULT";
    case MessageKind::DECRYPT_REPORT: return "DECRYPT_REPORT";
  }
  return "?";
}

void MessageChannel::send(ProtocolMessage msg) {
  static constexpr MessageKind kOrder[] = {MessageKind::SETUP, MessageKind::ENCRYPTED_INPUT,
                                           MessageKind::EVAL_RESULT, MessageKind::DECRYPT_REPORT};
  if (log_.size() >= 4) throw ProtocolError("channel: conversation already complete");
  if (msg.kind != kOrder[log_.size()])
    throw ProtocolError(std::string("channel: expected ") + to_string(kOrder[log_.size()]) +
                        " at position " + std::to_string(log_.size()) + ", got " +
                        to_string(msg.kind));
  log_.push_back(std::move(msg));
}

int StateStore::put(Statevector state) {
  slots_.emplace_back(std::move(state));
  return static_cast<int>(slots_.size()) - 1;
}

Statevector StateStore::take(int handle) {
  if (handle < 0 || handle >= static_cast<int>(slots_.size()) ||
      !slots_[static_cast<std::size_t>(handle)].has_value())
    throw ProtocolError("state store: empty or unknown handle " + std::to_string(handle));
  Statevector state = std::move(*slots_[static_cast<std::size_t>(handle)]);
  slots_[static_cast<std::size_t>(handle)].reset();
  return state;
}

std::uint64_t key_digest(const qhe::PauliKey& key) {
  std::uint64_t h = 14695981039346656037ull;
  const auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint8_t>(key.size() & 0xff));
  for (const std::uint8_t bit : key.a) mix(bit);
  for (const std::uint8_t bit : key.b) mix(bit);
  return h;
}

namespace {

std::string digest_hex(std::uint64_t digest) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

json parse_body(const ProtocolMessage& msg, MessageKind expected) {
  if (msg.kind != expected)
    throw ProtocolError(std::string("handler for ") + to_string(expected) + " received " +
                        to_string(msg.kind));
  try {
    return json::parse(msg.body);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string(to_string(msg.kind)) + ": body is not valid JSON: " + e.what());
  }
}

int body_int(const json& j, const char* key, MessageKind kind) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ProtocolError(std::string(to_string(kind)) + ": missing integer field \"" + key + "\"");
  return j[key].get<int>();
}

}  // namespace

void ServerSession::on_setup(const ProtocolMessage& msg) {
  const json j = parse_body(msg, MessageKind::SETUP);
  if (!j.contains("mode") || !j["mode"].is_string())
    throw ProtocolError("SETUP: missing string field \"mode\"");
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "eager")
    mode_ = qhe::Mode::eager;
  else if (mode == "deferred")
    mode_ = qhe::Mode::deferred;
  else
    throw ProtocolError("SETUP: unknown mode \"" + mode + "\"");
  if (!j.contains("circuit") || !j["circuit"].is_object())
    throw ProtocolError("SETUP: missing object field \"circuit\"");
  try {
    circuit_ = deserialize_circuit(j["circuit"].dump());
  } catch (const ParseError& e) {
    throw ProtocolError(std::string("SETUP: bad circuit: ") + e.what());
  }
}

const Circuit& ServerSession::circuit() const {
  if (!circuit_) throw ProtocolError("server session: no SETUP received yet");
  return *circuit_;
}

ProtocolMessage ServerSession::on_encrypted_input(const ProtocolMessage& msg, StateStore& store,
                                                  const qhe::EvalObserver& client_hooks) {
  if (!circuit_) throw ProtocolError("server session: ENCRYPTED_INPUT before SETUP");
  const json j = parse_body(msg, MessageKind::ENCRYPTED_INPUT);
  const int handle = body_int(j, "state_handle", MessageKind::ENCRYPTED_INPUT);
  Statevector encrypted = store.take(handle);
  qhe::ServerEvalParts parts = qhe::evaluate_server(*circuit_, std::move(encrypted), mode_,
                                                    client_hooks);
  const int out_handle = store.put(std::move(parts.state));
  json body;
  body["state_handle"] = out_handle;
  body["transcript"] = json::parse(qhe::serialize(parts.server_transcript));
  return {MessageKind::EVAL_RESULT, body.dump(2) + "\n"};
}

ClientSession::ClientSession(Statevector plaintext, std::uint64_t key_seed,
                             std::uint64_t policy_seed)
    : plaintext_(std::move(plaintext)),
      key_seed_(key_seed),
      policy_(MeasurementPolicy::seeded(policy_seed)) {}

ProtocolMessage ClientSession::setup(const Circuit& circuit, qhe::Mode mode) {
  if (stage_ != 0) throw ProtocolError("client session: SETUP already sent");
  if (circuit.num_qubits() != plaintext_.num_qubits())
    throw std::invalid_argument("client session: circuit and plaintext widths differ");
  circuit_ = circuit;
  mode_ = mode;
  stage_ = 1;
  json body;
  body["mode"] = qhe::to_string(mode);
  body["circuit"] = json::parse(serialize(circuit));
  return {MessageKind::SETUP, body.dump(2) + "\n"};
}

ProtocolMessage ClientSession::encrypted_input(StateStore& store) {
  if (stage_ != 1) throw ProtocolError("client session: ENCRYPTED_INPUT out of order");
  key_ = qhe::keygen(plaintext_.num_qubits(), key_seed_);
  ledger_.emplace(key_, policy_);
  const int handle = store.put(qhe::qotp_encrypt(plaintext_, key_));
  stage_ = 2;
  json body;
  body["num_qubits"] = plaintext_.num_qubits();
  body["state_handle"] = handle;
  return {MessageKind::ENCRYPTED_INPUT, body.dump(2) + "\n"};
}

qhe::EvalObserver ClientSession::interactive_hooks() {
  if (stage_ < 2) throw ProtocolError("client session: hooks requested before encryption");
  qhe::EvalObserver observer;
  if (mode_ == qhe::Mode::eager) {
    qhe::ClientLedger* ledger = &*ledger_;
    observer.on_clifford = [ledger](const Gate& g) { ledger->on_clifford(g); };
    observer.on_teleport = [ledger](Statevector& st, const qhe::TeleportEvent& ev) {
      ledger->eager_measure(st, ev);
    };
  }
  return observer;
}

ProtocolMessage ClientSession::decrypt_report(const ProtocolMessage& eval_result,
                                              StateStore& store) {
  if (stage_ != 2) throw ProtocolError("client session: DECRYPT_REPORT out of order");
  const json j = parse_body(eval_result, MessageKind::EVAL_RESULT);
  const int handle = body_int(j, "state_handle", MessageKind::EVAL_RESULT);
  if (!j.contains("transcript") || !j["transcript"].is_object())
    throw ProtocolError("EVAL_RESULT: missing object field \"transcript\"");
  qhe::EvalTranscript transcript;
  try {
    transcript = qhe::transcript_from_json(j["transcript"].dump());
  } catch (const ParseError& e) {
    throw ProtocolError(std::string("EVAL_RESULT: bad transcript: ") + e.what());
  }
  Statevector output = store.take(handle);

  if (mode_ == qhe::Mode::eager) {
    // The wire transcript is sanitized; the outcomes live only in the ledger.
    const auto& outs = ledger_->outcomes();
    if (outs.size() != transcript.events.size())
      throw ProtocolError("EVAL_RESULT: event count disagrees with the ledger");
    for (std::size_t i = 0; i < outs.size(); ++i) {
      if (transcript.events[i].outcome.has_value())
        throw ProtocolError("EVAL_RESULT: wire transcript leaked a measurement outcome");
      transcript.events[i].outcome = outs[i];
    }
  }

  qhe::DecryptResult dec = qhe::decrypt(output, transcript, key_, policy_);
  if (mode_ == qhe::Mode::eager && dec.final_key != ledger_->key())
    throw ProtocolError("client session: ledger and transcript replay disagree on the final key");

  Statevector direct = plaintext_;
  direct.apply(*circuit_);
  fidelity_ = rbv::fidelity(dec.plaintext, direct);
  completed_ = std::move(dec.completed);
  final_key_ = std::move(dec.final_key);
  decrypted_ = std::move(dec.plaintext);
  stage_ = 3;

  json body;
  body["fidelity"] = fidelity_;
  body["key_digest"] = digest_hex(key_digest(*final_key_));
  body["m"] = completed_->m();
  return {MessageKind::DECRYPT_REPORT, body.dump(2) + "\n"};
}

int ClientSession::m() const {
  if (completed_) return completed_->m();
  if (!circuit_) return 0;
  int count = 0;
  for (const Gate& g : circuit_->gates())
    if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++count;
  return count;
}

const qhe::PauliKey& ClientSession::final_key() const {
  if (!final_key_) throw ProtocolError("client session: decryption has not run");
  return *final_key_;
}

const Statevector& ClientSession::decrypted() const {
  if (!decrypted_) throw ProtocolError("client session: decryption has not run");
  return *decrypted_;
}

const qhe::EvalTranscript& ClientSession::completed_transcript() const {
  if (!completed_) throw ProtocolError("client session: decryption has not run");
  return *completed_;
}

std::string ProtocolRunReport::to_json(bool include_wall_time) const {
  json j;
  j["mode"] = qhe::to_string(mode);
  j["m"] = m;
  j["fidelity"] = fidelity;
  j["key_digest"] = digest_hex(reported_digest);
  j["digest_verified"] = (reported_digest == recomputed_digest);
  if (measured_s) j["measured_s"] = measured_s->str();
  j["messages"] = json::array();
  for (const ProtocolMessage& msg : wire) {
    json entry;
    entry["kind"] = to_string(msg.kind);
    entry["body"] = json::parse(msg.body);
    j["messages"].push_back(std::move(entry));
  }
  if (include_wall_time) j["wall_time_seconds"] = wall_time_seconds;
  return j.dump(2) + "\n";
}

ProtocolRunReport run_qhe_protocol(const Circuit& circuit, const Statevector& plaintext,
                                   qhe::Mode mode, std::uint64_t key_seed,
                                   std::uint64_t policy_seed) {
  const auto start = std::chrono::steady_clock::now();
  MessageChannel channel;
  StateStore store;
  ClientSession client(plaintext, key_seed, policy_seed);
  ServerSession server;

  channel.send(client.setup(circuit, mode));
  server.on_setup(channel.log().back());
  channel.send(client.encrypted_input(store));
  const qhe::EvalObserver hooks = client.interactive_hooks();
  channel.send(server.on_encrypted_input(channel.log().back(), store, hooks));
  channel.send(client.decrypt_report(channel.log().back(), store));

  ProtocolRunReport report;
  report.mode = mode;
  report.m = client.m();
  report.fidelity = client.fidelity();
  report.recomputed_digest = key_digest(client.final_key());
  const json last = json::parse(channel.log().back().body);
  report.reported_digest =
      std::stoull(last["key_digest"].get<std::string>(), nullptr, 16);
  report.completed = client.completed_transcript();
  report.wire = channel.log();

  const std::vector<int>& reg1 = circuit.labels().register1;
  if (!reg1.empty()) {
    const std::vector<double> probs = client.decrypted().branch_probabilities(reg1);
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs.size(); ++i)
      if (probs[i] > probs[best]) best = i;
    if (probs[best] < 1.0 - 1e-9)
      throw NondeterministicOutcome("protocol run: register-1 readout is not deterministic (top " +
                                    std::to_string(probs[best]) + ")");
    report.measured_s = BitString::from_index(best, static_cast<int>(reg1.size()));
  }

  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace rbv::proto
