#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rbv/bitstring.hpp"
#include "rbv/circuit.hpp"

namespace rbv {

// Hidden-string search where f_s(x) = s.x mod 2, queried through the standard
// bit-flip oracle on an ancilla.
struct NonrecursiveInstance {
  int n = 0;
  BitString s;
};

// Two-level variant: f(x1, x2) = s_{x1} . x2 with an outer function g applied
// to the recovered inner strings, g(s_{x1}) = s . x1. Tables are indexed by the
// big-endian integer value of x1 (resp. v).
struct RecursiveInstance {
  int n = 0;
  BitString s;
  std::vector<BitString> s_map;  // 2^n entries, each of width n
  std::vector<int> g_table;      // 2^n entries in {0, 1}
};

struct InstanceDiagnostics {
  bool ok = false;
  // x1 values where g(s_map[x1]) != s . x1
  std::vector<std::uint64_t> inconsistent_x1;
  bool g_attains_zero = false;
  bool g_attains_one = false;
  bool g_balanced = false;
};

// Structural problems (wrong table sizes, width mismatches) throw
// std::invalid_argument; semantic findings are reported in the diagnostics.
// ok requires consistency plus g attaining both values.
InstanceDiagnostics validate_instance(const RecursiveInstance& inst);

// True iff g_table[v] == s . v for every v.
bool g_matches_linear_s(const RecursiveInstance& inst);

// Qubit layout for the recursive circuits (width 2n+2):
//   0 .. n-1     register 1
//   n .. 2n-1    register 2
//   2n           ancilla 1 (inner-oracle target)
//   2n+1         ancilla 2 (g-oracle target)
// Nonrecursive circuits use width n+1 with the ancilla at index n.

// CNOT from each qubit i with s_i = 1 into the ancilla at index n.
Circuit oracle_nonrecursive(const BitString& s);
Circuit build_nonrecursive_circuit(const NonrecursiveInstance& inst);

// Table-driven oracle for f: for each x1 and each set bit j of s_map[x1], an
// MCX whose register-1 controls pattern-match x1 (negated where the bit is 0)
// plus a positive control on register-2 qubit j, targeting ancilla 1.
Circuit oracle_general_k2(const RecursiveInstance& inst);

// Oracle for g on register 2 into ancilla 2. When g is exactly v -> s.v it
// reduces to one CNOT per set bit of s; otherwise one pattern-matched MCX per
// v with g(v) = 1.
Circuit oracle_g(const RecursiveInstance& inst);

// Full circuit: ancilla preparation into |->, H everywhere, inner oracle,
// H on register 2, g oracle, H on register 2, inner oracle, H on register 1.
// The one-argument form uses oracle_general_k2; the two-argument form splices
// in a caller-supplied inner-oracle block of the same width.
Circuit build_recursive_circuit(const RecursiveInstance& inst);
Circuit build_recursive_circuit(const RecursiveInstance& inst, const Circuit& inner_oracle);

struct SolveResult {
  BitString s;
  double probability = 0.0;
};

// Simulates from |0...0> and reads register 1, which must be deterministic:
// the top branch needs probability >= 1 - 1e-9, else NondeterministicOutcome.
SolveResult solve(const Circuit& circuit);

std::string serialize(const RecursiveInstance& inst);
RecursiveInstance instance_from_json(const std::string& text);

}  // namespace rbv
