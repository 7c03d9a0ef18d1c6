#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rbv/circuit.hpp"
#include "rbv/statevector.hpp"

namespace rbv::qhe {

// Per-qubit quantum one-time-pad key. Encryption applies Z^b then X^a to each
// qubit; decryption is the same map (the composition is the identity up to a
// global phase (-1)^(a.b)).
struct PauliKey {
  std::vector<std::uint8_t> a;
  std::vector<std::uint8_t> b;

  int size() const { return static_cast<int>(a.size()); }
  bool operator==(const PauliKey&) const = default;
};

PauliKey keygen(int n, std::mt19937_64& rng);
PauliKey keygen(int n, std::uint64_t seed);

Statevector qotp_encrypt(Statevector state, const PauliKey& key);
Statevector qotp_decrypt(Statevector state, const PauliKey& key);

// Key-update rules for the supported Clifford gates, each validated against the
// commutation identity  g . X^a Z^b == X^a' Z^b' . g  (up to global phase):
//   X, Z         (a, b) unchanged
//   H            (a, b) -> (b, a)
//   S, Sdg       (a, b) -> (a, a xor b)
//   CNOT(c, t)   (a_c, b_c), (a_t, b_t) -> (a_c, b_c xor b_t), (a_t xor a_c, b_t)
//   SWAP         keys exchange
// Throws std::invalid_argument for anything else (Toffoli/MCX must be
// decomposed first; negated-control CNOTs likewise).
PauliKey update_key_clifford(PauliKey key, const Gate& g);

// EAGER performs each teleportation measurement immediately after the swap,
// keeping the backend narrow; DEFERRED retains the pair for ordered
// measurement during decryption. The two agree branch-for-branch.
enum class Mode { eager, deferred };

const char* to_string(Mode m);

struct TeleportEvent {
  int event_id = 0;
  int data_qubit = 0;
  GateKind gate = GateKind::T;  // T or Tdg
  std::optional<std::pair<int, int>> outcome;  // (r_a, r_b); empty until measured
  // Backend indices of the pair at provision time. Evaluation-time bookkeeping
  // only: not serialized, since pairs always stack above the data register in
  // event order.
  int qubit_c = -1;
  int qubit_s = -1;

  bool operator==(const TeleportEvent&) const = default;
};

struct KeyUpdateStep {
  GateKind rule = GateKind::X;
  std::vector<int> qubits;
  std::optional<int> event_id;  // set iff rule is T/Tdg

  bool operator==(const KeyUpdateStep&) const = default;
};

// One entry per evaluated gate, in order. Events hold outcomes only after the
// key holder's measurements: immediately in EAGER mode, during decryption in
// DEFERRED mode. The server-side record always leaves them empty.
struct EvalTranscript {
  Mode mode = Mode::eager;
  std::vector<KeyUpdateStep> steps;
  std::vector<TeleportEvent> events;

  int m() const { return static_cast<int>(events.size()); }
  bool operator==(const EvalTranscript&) const = default;
};

// One T/Tdg teleportation on `backend`: appends a fresh |Phi00> pair (c, s),
// applies the gate to the data qubit, swaps it onto s, and in EAGER mode
// performs the S^a-rotated Bell measurement on (s, c), removes both qubits and
// returns the updated key bits. In DEFERRED mode the key bits return unchanged
// and the event stays unfilled.
std::pair<std::pair<int, int>, TeleportEvent> teleport_t_gate(Statevector& backend, int data_qubit,
                                                              GateKind gate, int a, int b, Mode mode,
                                                              MeasurementPolicy& policy,
                                                              int event_id);

// Client-side key ledger. Holds the evolving pad and, in EAGER mode, performs
// the teleportation measurements (they need the current a bit). Outcomes stay
// inside the ledger; the server-side evaluation record never sees them.
class ClientLedger {
 public:
  ClientLedger(PauliKey initial, MeasurementPolicy& policy);

  void on_clifford(const Gate& g);
  void eager_measure(Statevector& backend, const TeleportEvent& shell);

  const PauliKey& key() const { return key_; }
  const std::vector<std::pair<int, int>>& outcomes() const { return outcomes_; }

 private:
  PauliKey key_;
  MeasurementPolicy* policy_;
  std::vector<std::pair<int, int>> outcomes_;
};

// Hooks through which the evaluation loop hands control to the key holder.
// `on_teleport` must measure and remove the pair in EAGER mode.
struct EvalObserver {
  std::function<void(const Gate&)> on_clifford;
  std::function<void(Statevector&, const TeleportEvent&)> on_teleport;
};

struct ServerEvalParts {
  Statevector state;
  EvalTranscript server_transcript;  // events carry no outcomes
};

// The server's side of evaluation: applies Clifford gates, provisions pairs and
// performs gate+swap for T/Tdg, records steps/events, and defers measurement to
// the observer. It touches no key material. Circuits must be Clifford+T
// (decompose Toffoli/MCX first).
ServerEvalParts evaluate_server(const Circuit& circuit, Statevector encrypted, Mode mode,
                                const EvalObserver& observer);

struct EvalResult {
  Statevector state;
  EvalTranscript transcript;   // outcomes filled in EAGER mode
  PauliKey eager_final_key;    // meaningful in EAGER mode only
};

EvalResult evaluate(const Circuit& circuit, const Statevector& encrypted, const PauliKey& initial_key,
                    Mode mode, MeasurementPolicy& policy);

struct DecryptResult {
  Statevector plaintext;
  PauliKey final_key;
  EvalTranscript completed;  // transcript with every event outcome filled
};

// Replays the transcript in order: Clifford rules update the key, T/Tdg steps
// consume recorded outcomes (EAGER) or perform the rotated Bell measurement
// with the current intermediate a bit (DEFERRED, in ascending event order),
// then strips the pad with the final key. Optional `snapshots` receives the
// key after every step.
DecryptResult decrypt(const Statevector& output, const EvalTranscript& transcript,
                      const PauliKey& initial_key, MeasurementPolicy& policy,
                      std::vector<PauliKey>* snapshots = nullptr);

struct SchemeReport {
  EvalTranscript transcript;
  double fidelity = 0.0;        // vs direct evaluation of the circuit
  int m = 0;                    // pairs provisioned at setup (= T/Tdg count)
  int client_measurements = 0;  // Bell measurements performed by the key holder
  PauliKey final_key;
  Statevector decrypted;
  std::vector<PauliKey> key_snapshots;
};

// The five protocol stages in one call: setup (count pairs), key generation,
// encryption, evaluation, decryption; fidelity is measured against applying
// `circuit` to `plaintext` directly.
SchemeReport run_scheme(const Circuit& circuit, const Statevector& plaintext, Mode mode,
                        std::uint64_t key_seed, MeasurementPolicy& policy);
SchemeReport run_scheme(const Circuit& circuit, const Statevector& plaintext, Mode mode,
                        std::uint64_t seed);

std::string serialize(const EvalTranscript& t);
EvalTranscript transcript_from_json(const std::string& text);

}  // namespace rbv::qhe
