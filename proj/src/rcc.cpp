#include "rbv/rcc.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <stdexcept>

#include "rbv/errors.hpp"

namespace rbv::rcc {

using nlohmann::json;

const char* to_string(Variant v) {
  switch (v) {
    case Variant::lemma1: return "LEMMA1";
    case Variant::lemma2: return "LEMMA2";
    case Variant::lemma3: return "LEMMA3";
    case Variant::lemma4: return "LEMMA4";
  }
  return "?";
}

std::optional<Variant> variant_from(const std::string& name) {
  if (name == "LEMMA1") return Variant::lemma1;
  if (name == "LEMMA2") return Variant::lemma2;
  if (name == "LEMMA3") return Variant::lemma3;
  if (name == "LEMMA4") return Variant::lemma4;
  return std::nullopt;
}

namespace {

// destination position for each set bit of s (identity when no permutation)
std::vector<int> destination_map(const RccSpec& spec) {
  const std::vector<int> ones = spec.s.one_positions();
  std::vector<int> dest(spec.s.size(), -1);
  for (std::size_t i = 0; i < ones.size(); ++i)
    dest[ones[i]] = spec.permutation ? (*spec.permutation)[i] : ones[i];
  return dest;
}

BitString permute_ones(const BitString& value, const std::vector<int>& ones,
                       const std::vector<int>& dest) {
  BitString out = value;
  for (int p : ones) out.set(dest[p], value.bit(p));
  return out;
}

int default_s1_position(const BitString& s) { return s.one_positions().front(); }

}  // namespace

void validate_spec(const RccSpec& spec) {
  const int n = spec.s.size();
  if (n < 1) throw std::invalid_argument("spec: s must be non-empty");
  if (!spec.s.any()) throw std::invalid_argument("spec: s must contain at least one 1");

  if (spec.s_sup && spec.variant != Variant::lemma2)
    throw std::invalid_argument("spec: s_sup is only valid for LEMMA2");
  if (spec.s1_position && spec.variant != Variant::lemma3)
    throw std::invalid_argument("spec: s1_position is only valid for LEMMA3");
  if (spec.permutation && spec.variant != Variant::lemma1 && spec.variant != Variant::lemma4)
    throw std::invalid_argument("spec: permutation is only valid for LEMMA1/LEMMA4");

  switch (spec.variant) {
    case Variant::lemma1:
      break;
    case Variant::lemma2: {
      if (!spec.s_sup) throw std::invalid_argument("spec: LEMMA2 requires s_sup");
      if (spec.s_sup->size() != n) throw std::invalid_argument("spec: s_sup has wrong width");
      if (spec.s_sup->bit_and(spec.s) != spec.s)
        throw std::invalid_argument("spec: s_sup must cover every set bit of s");
      if (spec.s_sup->hamming_weight() <= spec.s.hamming_weight())
        throw std::invalid_argument("spec: s_sup must have strictly larger weight than s");
      break;
    }
    case Variant::lemma3: {
      if (spec.s1_position) {
        const int p = *spec.s1_position;
        if (p < 0 || p >= n) throw std::invalid_argument("spec: s1_position out of range");
        if (!spec.s.bit(p)) throw std::invalid_argument("spec: s1_position must index a set bit of s");
      }
      break;
    }
    case Variant::lemma4:
      if (spec.s.hamming_weight() % 2 != 0)
        throw std::invalid_argument("spec: LEMMA4 requires even |s|");
      break;
  }

  if (spec.permutation) {
    std::vector<int> sorted = *spec.permutation;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != spec.s.one_positions())
      throw std::invalid_argument("spec: permutation must rearrange exactly the set positions of s");
  }
}

RecursiveInstance instance_from_spec(const RccSpec& spec) {
  validate_spec(spec);
  const int n = spec.s.size();
  const std::size_t count = std::size_t{1} << n;
  const std::vector<int> ones = spec.s.one_positions();
  const std::vector<int> dest = destination_map(spec);

  RecursiveInstance inst;
  inst.n = n;
  inst.s = spec.s;
  inst.s_map.resize(count);
  inst.g_table.resize(count);
  for (std::size_t v = 0; v < count; ++v)
    inst.g_table[v] = spec.s.dot(BitString::from_index(v, n));

  for (std::size_t i = 0; i < count; ++i) {
    const BitString x1 = BitString::from_index(i, n);
    BitString value(n);
    switch (spec.variant) {
      case Variant::lemma1:
        value = x1.bit_and(spec.s);
        break;
      case Variant::lemma2:
        value = x1.bit_and(*spec.s_sup);
        break;
      case Variant::lemma3: {
        const int p = spec.s1_position ? *spec.s1_position : default_s1_position(spec.s);
        if (spec.s.dot(x1)) value.set(p, 1);
        break;
      }
      case Variant::lemma4:
        value = spec.s.bit_and(x1.complement());
        break;
    }
    if (spec.permutation) value = permute_ones(value, ones, dest);
    inst.s_map[i] = value;
  }
  return inst;
}

Circuit synthesize_us(const RccSpec& spec) {
  validate_spec(spec);
  const int n = spec.s.size();
  Circuit c(2 * n + 2);
  const int anc = 2 * n;

  switch (spec.variant) {
    case Variant::lemma1: {
      const std::vector<int> dest = destination_map(spec);
      for (int p : spec.s.one_positions()) c.append(Gate::toffoli(p, n + dest[p], anc));
      break;
    }
    case Variant::lemma2: {
      for (int p : spec.s_sup->one_positions()) c.append(Gate::toffoli(p, n + p, anc));
      break;
    }
    case Variant::lemma3: {
      const int s1 = spec.s1_position ? *spec.s1_position : default_s1_position(spec.s);
      for (int p : spec.s.one_positions()) c.append(Gate::toffoli(p, n + s1, anc));
      break;
    }
    case Variant::lemma4: {
      const std::vector<int> dest = destination_map(spec);
      for (int p : spec.s.one_positions())
        c.append(Gate::toffoli_pol(p, 0, n + dest[p], 1, anc));
      break;
    }
  }
  return c;
}

Circuit synthesize_full(const RccSpec& spec) {
  return build_recursive_circuit(instance_from_spec(spec), synthesize_us(spec));
}

std::vector<RccSpec> enumerate_permutations(const RccSpec& spec) {
  validate_spec(spec);
  if (spec.variant != Variant::lemma1 && spec.variant != Variant::lemma4)
    throw std::invalid_argument("enumerate_permutations: only LEMMA1/LEMMA4 admit permutations");
  const std::vector<int> ones = spec.s.one_positions();
  std::vector<int> perm = ones;
  std::vector<RccSpec> out;
  while (std::next_permutation(perm.begin(), perm.end())) {
    RccSpec p = spec;
    p.permutation = perm;
    out.push_back(std::move(p));
  }
  // next_permutation cycles back to sorted order after visiting all |s|! - 1
  // non-identity rearrangements, so `out` is complete here.
  return out;
}

namespace {

// Reads the register-2 destination for each set bit p of s from the table
// entry probe(p); returns nullopt unless every destination is a distinct set
// position of s.
std::optional<std::vector<int>> read_destinations(
    const RecursiveInstance& inst, const std::vector<int>& ones,
    const std::function<std::size_t(int)>& probe) {
  std::vector<int> dest(inst.n, -1);
  std::vector<bool> used(inst.n, false);
  for (int p : ones) {
    const BitString& v = inst.s_map[probe(p)];
    if (v.hamming_weight() != 1) return std::nullopt;
    const int q = v.one_positions().front();
    if (!inst.s.bit(q) || used[q]) return std::nullopt;
    used[q] = true;
    dest[p] = q;
  }
  return dest;
}

}  // namespace

std::optional<RccSpec> is_rcc(const RecursiveInstance& inst) {
  const InstanceDiagnostics diag = validate_instance(inst);
  if (!diag.ok) return std::nullopt;
  if (!inst.s.any()) return std::nullopt;
  if (!g_matches_linear_s(inst)) return std::nullopt;

  const int n = inst.n;
  const std::size_t count = std::size_t{1} << n;
  const std::vector<int> ones = inst.s.one_positions();

  const auto check_all = [&](auto&& expected) {
    for (std::size_t i = 0; i < count; ++i)
      if (!(inst.s_map[i] == expected(BitString::from_index(i, n)))) return false;
    return true;
  };

  const auto finish_permuted = [&](Variant variant, const std::vector<int>& dest) {
    RccSpec spec;
    spec.variant = variant;
    spec.s = inst.s;
    bool identity = true;
    std::vector<int> perm;
    for (int p : ones) {
      perm.push_back(dest[p]);
      if (dest[p] != p) identity = false;
    }
    if (!identity) spec.permutation = std::move(perm);
    return spec;
  };

  // LEMMA1, possibly permuted: the unit vector at p probes the destination.
  {
    const auto probe = [&](int p) {
      BitString u(n);
      u.set(p, 1);
      return u.index();
    };
    if (auto dest = read_destinations(inst, ones, probe)) {
      const std::vector<int> ones_copy = ones;
      const auto expected = [&](const BitString& x1) {
        BitString base = x1.bit_and(inst.s);
        BitString out = base;
        for (std::size_t i = 0; i < ones_copy.size(); ++i)
          out.set((*dest)[ones_copy[i]], base.bit(ones_copy[i]));
        return out;
      };
      if (check_all(expected)) return finish_permuted(Variant::lemma1, *dest);
    }
  }

  // LEMMA2: the all-ones row exposes s_sup.
  {
    const BitString s_sup = inst.s_map[count - 1];
    if (s_sup.hamming_weight() > inst.s.hamming_weight() && s_sup.bit_and(inst.s) == inst.s) {
      const auto expected = [&](const BitString& x1) { return x1.bit_and(s_sup); };
      if (check_all(expected)) {
        RccSpec spec;
        spec.variant = Variant::lemma2;
        spec.s = inst.s;
        spec.s_sup = s_sup;
        return spec;
      }
    }
  }

  // LEMMA3: all rows with s.x1 = 1 share one unit value inside s's support.
  {
    BitString unit(n);
    unit.set(ones.front(), 1);
    const BitString probe = inst.s_map[unit.index()];  // s.unit = 1 here
    if (probe.hamming_weight() == 1 && inst.s.bit(probe.one_positions().front())) {
      const int pos = probe.one_positions().front();
      const auto expected = [&](const BitString& x1) {
        BitString v(n);
        if (inst.s.dot(x1)) v.set(pos, 1);
        return v;
      };
      if (check_all(expected)) {
        RccSpec spec;
        spec.variant = Variant::lemma3;
        spec.s = inst.s;
        spec.s1_position = pos;
        return spec;
      }
    }
  }

  // LEMMA4, possibly permuted: the complement of a unit vector probes it.
  if (inst.s.hamming_weight() % 2 == 0) {
    const auto probe = [&](int p) {
      BitString u(n);
      u.set(p, 1);
      return u.complement().index();
    };
    if (auto dest = read_destinations(inst, ones, probe)) {
      const std::vector<int> ones_copy = ones;
      const auto expected = [&](const BitString& x1) {
        BitString base = inst.s.bit_and(x1.complement());
        BitString out = base;
        for (std::size_t i = 0; i < ones_copy.size(); ++i)
          out.set((*dest)[ones_copy[i]], base.bit(ones_copy[i]));
        return out;
      };
      if (check_all(expected)) return finish_permuted(Variant::lemma4, *dest);
    }
  }

  return std::nullopt;
}

CostReport cost_report(const RccSpec& spec) {
  validate_spec(spec);
  CostReport r;
  r.toffolis = (spec.variant == Variant::lemma2) ? spec.s_sup->hamming_weight()
                                                 : spec.s.hamming_weight();
  r.t_gates = 14LL * r.toffolis;
  const int n = spec.s.size();
  r.mcx_general = 1LL << n;
  r.mcx_general_one_application = (1LL << (n - 1)) - 1;
  r.t_gates_general_lower_bound = 7LL << n;
  return r;
}

CostReport cost_report_general(int n) {
  if (n < 1) throw std::invalid_argument("cost_report_general: n must be >= 1");
  CostReport r;
  r.toffolis = n;
  r.t_gates = 14LL * n;
  r.mcx_general = 1LL << n;
  r.mcx_general_one_application = (1LL << (n - 1)) - 1;
  r.t_gates_general_lower_bound = 7LL << n;
  return r;
}

std::string serialize(const RccSpec& spec) {
  validate_spec(spec);
  json j;
  j["variant"] = to_string(spec.variant);
  j["s"] = spec.s.str();
  if (spec.s_sup) j["s_sup"] = spec.s_sup->str();
  if (spec.s1_position) j["s1_position"] = *spec.s1_position;
  if (spec.permutation) j["permutation"] = *spec.permutation;
  return j.dump(2) + "\n";
}

RccSpec spec_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("spec file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
    throw ParseError("spec file: missing string field \"variant\"");
  RccSpec spec;
  const auto v = variant_from(j["variant"].get<std::string>());
  if (!v) throw ParseError("spec file: unknown variant \"" + j["variant"].get<std::string>() + "\"");
  spec.variant = *v;
  if (!j.contains("s") || !j["s"].is_string())
    throw ParseError("spec file: missing string field \"s\"");
  spec.s = BitString::parse(j["s"].get<std::string>());
  if (j.contains("s_sup")) {
    if (!j["s_sup"].is_string()) throw ParseError("spec file: \"s_sup\" must be a string");
    spec.s_sup = BitString::parse(j["s_sup"].get<std::string>());
  }
  if (j.contains("s1_position")) {
    if (!j["s1_position"].is_number_integer())
      throw ParseError("spec file: \"s1_position\" must be an integer");
    spec.s1_position = j["s1_position"].get<int>();
  }
  if (j.contains("permutation")) {
    if (!j["permutation"].is_array())
      throw ParseError("spec file: \"permutation\" must be an array of positions");
    spec.permutation = j["permutation"].get<std::vector<int>>();
  }
  try {
    validate_spec(spec);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("spec file: ") + e.what());
  }
  return spec;
}

}  // namespace rbv::rcc
