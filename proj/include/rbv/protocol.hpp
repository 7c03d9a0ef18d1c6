#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rbv/bitstring.hpp"
#include "rbv/circuit.hpp"
#include "rbv/qhe.hpp"
#include "rbv/statevector.hpp"

namespace rbv::proto {

// The four classical messages, in their only legal order.
enum class MessageKind { SETUP, ENCRYPTED_INPUT, EVAL_RESULT, DECRYPT_REPORT };

const char* to_string(MessageKind k);

// Bodies are canonical JSON. Quantum states never ride the classical wire;
// they move through the StateStore and only their handles are announced.
struct ProtocolMessage {
  MessageKind kind{};
  std::string body;
};

// Classical wire. Sending anything out of the fixed order raises ProtocolError;
// the full log stays available for inspection.
class MessageChannel {
 public:
  void send(ProtocolMessage msg);
  const std::vector<ProtocolMessage>& log() const { return log_; }

 private:
  std::vector<ProtocolMessage> log_;
};

// Stand-in for the quantum channel: deposits hand back a handle, withdrawals
// consume the slot, reuse of a spent handle raises ProtocolError.
class StateStore {
 public:
  int put(Statevector state);
  Statevector take(int handle);

 private:
  std::vector<std::optional<Statevector>> slots_;
};

// FNV-1a over the key width, the a row, then the b row. Lets the decrypt
// report commit to the final key without revealing a single bit of it.
std::uint64_t key_digest(const qhe::PauliKey& key);

// Holds only announced public data: the circuit and the evaluation mode.
// No key bits, no pad, no measurement outcomes; the interface checks in the
// test suite rely on this staying true.
class ServerSession {
 public:
  void on_setup(const ProtocolMessage& msg);
  // Runs the homomorphic evaluation and answers with the output-state handle
  // plus the sanitized transcript (every event outcome null). The observer
  // models the interactive hand-off to the key holder during EAGER runs.
  ProtocolMessage on_encrypted_input(const ProtocolMessage& msg, StateStore& store,
                                     const qhe::EvalObserver& client_hooks);

  const Circuit& circuit() const;
  qhe::Mode mode() const { return mode_; }

 private:
  std::optional<Circuit> circuit_;
  qhe::Mode mode_ = qhe::Mode::eager;
};

class ClientSession {
 public:
  ClientSession(Statevector plaintext, std::uint64_t key_seed, std::uint64_t policy_seed);
  ClientSession(const ClientSession&) = delete;
  ClientSession& operator=(const ClientSession&) = delete;

  ProtocolMessage setup(const Circuit& circuit, qhe::Mode mode);
  ProtocolMessage encrypted_input(StateStore& store);
  // Closures reaching back into this session's private ledger; keep the
  // session alive and in place while the server evaluates. No-ops in
  // DEFERRED mode.
  qhe::EvalObserver interactive_hooks();
  ProtocolMessage decrypt_report(const ProtocolMessage& eval_result, StateStore& store);

  int m() const;
  double fidelity() const { return fidelity_; }
  const qhe::PauliKey& final_key() const;
  const Statevector& decrypted() const;
  const qhe::EvalTranscript& completed_transcript() const;

 private:
  Statevector plaintext_;
  std::uint64_t key_seed_ = 0;
  MeasurementPolicy policy_;
  std::optional<Circuit> circuit_;
  qhe::Mode mode_ = qhe::Mode::eager;
  qhe::PauliKey key_;
  std::optional<qhe::ClientLedger> ledger_;
  std::optional<qhe::EvalTranscript> completed_;
  std::optional<qhe::PauliKey> final_key_;
  std::optional<Statevector> decrypted_;
  double fidelity_ = 0.0;
  int stage_ = 0;
};

struct ProtocolRunReport {
  qhe::Mode mode = qhe::Mode::eager;
  int m = 0;
  double fidelity = 0.0;
  std::uint64_t reported_digest = 0;    // parsed back out of DECRYPT_REPORT
  std::uint64_t recomputed_digest = 0;  // from the client's final key directly
  std::optional<BitString> measured_s;  // register-1 readout when labels exist
  qhe::EvalTranscript completed;        // client-side transcript, outcomes filled
  std::vector<ProtocolMessage> wire;
  double wall_time_seconds = 0.0;

  // Canonical JSON; wall time is excluded by default so two runs with the
  // same seeds compare byte-for-byte.
  std::string to_json(bool include_wall_time = false) const;
};

// Full four-message exchange over a fresh channel and store. When the circuit
// carries register labels, the decrypted state is read out on register 1
// (deterministically, or NondeterministicOutcome).
ProtocolRunReport run_qhe_protocol(const Circuit& circuit, const Statevector& plaintext,
                                   qhe::Mode mode, std::uint64_t key_seed,
                                   std::uint64_t policy_seed);

}  // namespace rbv::proto
