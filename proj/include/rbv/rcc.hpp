#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rbv/bv.hpp"

namespace rbv::rcc {

// Families of recursive instances whose inner oracle needs only Toffoli gates
// (at most n per application) and whose g-oracle reduces to CNOTs. Each
// variant fixes the inner-string table from s alone:
//   LEMMA1  s_{x1} = x1 AND s             one Toffoli per set bit of s
//   LEMMA2  s_{x1} = x1 AND s_sup         s_sup strictly covers s; |s_sup| Toffolis
//   LEMMA3  s_{x1} = unit(s1_position) when s.x1 = 1, else 0...0;
//           every Toffoli shares one register-2 control
//   LEMMA4  s_{x1} = s AND NOT x1         |s| even; register-1 controls negated
// LEMMA1/LEMMA4 additionally admit a permutation of the register-2 control
// positions across the set bits of s.
enum class Variant { lemma1, lemma2, lemma3, lemma4 };

const char* to_string(Variant v);
std::optional<Variant> variant_from(const std::string& name);  // "LEMMA1" .. "LEMMA4"

struct RccSpec {
  Variant variant = Variant::lemma1;
  BitString s;
  std::optional<BitString> s_sup;                 // LEMMA2 only
  std::optional<int> s1_position;                 // LEMMA3 only; default lowest set bit of s
  std::optional<std::vector<int>> permutation;    // LEMMA1/LEMMA4 only

  bool operator==(const RccSpec&) const = default;
};

// Throws std::invalid_argument naming the violated precondition. The
// permutation, when present, must list exactly the set-bit positions of s:
// entry i is the destination position of the bit at the i-th (ascending) set
// position.
void validate_spec(const RccSpec& spec);

RecursiveInstance instance_from_spec(const RccSpec& spec);

// Inner-oracle block over the full 2n+2 layout; Toffolis are emitted in
// ascending register-1 control order.
Circuit synthesize_us(const RccSpec& spec);
// Complete solver circuit (build_recursive_circuit with the block above).
Circuit synthesize_full(const RccSpec& spec);

// All |s|! - 1 non-identity control permutations of a LEMMA1/LEMMA4 spec.
std::vector<RccSpec> enumerate_permutations(const RccSpec& spec);

// Recognizes whether a validated instance belongs to one of the four families
// (including permuted LEMMA1/LEMMA4); checked in declaration order, first
// match wins. Returns nullopt for instances outside all families.
std::optional<RccSpec> is_rcc(const RecursiveInstance& inst);

struct CostReport {
  int toffolis = 0;                          // per inner-oracle application
  long long t_gates = 0;                     // 14 * toffolis (two applications, 7 T each)
  long long mcx_general = 0;                 // 2^n pattern-matched MCX, two applications
  long long mcx_general_one_application = 0; // 2^(n-1) - 1 lower bound, one application
  long long t_gates_general_lower_bound = 0; // 7 * 2^n under the 7-T-per-MCX accounting
};

CostReport cost_report(const RccSpec& spec);
// Same general-construction figures for width n, with the full-weight family
// cost (n Toffolis) filled in as the structured-side comparison column.
CostReport cost_report_general(int n);

std::string serialize(const RccSpec& spec);
RccSpec spec_from_json(const std::string& text);

}  // namespace rbv::rcc
