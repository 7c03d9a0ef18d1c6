#include "rbv/verify.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "rbv/bv.hpp"
#include "rbv/circuit.hpp"
#include "rbv/qhe.hpp"
#include "rbv/rcc.hpp"
#include "rbv/statevector.hpp"

namespace rbv::verify {

namespace {

void check(SuiteResult& r, bool cond, const std::string& note) {
  ++r.checks;
  if (!cond) {
    ++r.failures;
    r.notes.push_back(note);
  }
}

Statevector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> amps(std::size_t{1} << n);
  double norm_sq = 0.0;
  for (cplx& a : amps) {
    a = {gauss(rng), gauss(rng)};
    norm_sq += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (cplx& a : amps) a *= scale;
  return Statevector::from_amplitudes(std::move(amps));
}

double max_abs_diff(const Statevector& x, const Statevector& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) worst = std::max(worst, std::abs(x.amp(i) - y.amp(i)));
  return worst;
}

std::string key_tag(const qhe::PauliKey& key) {
  std::string tag = "a=";
  for (const auto bit : key.a) tag += static_cast<char>('0' + bit);
  tag += " b=";
  for (const auto bit : key.b) tag += static_cast<char>('0' + bit);
  return tag;
}

SuiteResult suite_key_rules() {
  SuiteResult r{"key-rules", 0, 0, {}};
  std::mt19937_64 rng(0x6b657972756c6573ull);
  const auto commutes = [&rng](const Gate& g, const qhe::PauliKey& key, int width) {
    for (int trial = 0; trial < 3; ++trial) {
      const Statevector psi = random_state(width, rng);
      Statevector lhs = qhe::qotp_encrypt(psi, key);
      lhs.apply(g);
      Statevector rhs = psi;
      rhs.apply(g);
      rhs = qhe::qotp_encrypt(std::move(rhs), qhe::update_key_clifford(key, g));
      if (!equal_up_to_global_phase(lhs, rhs, 1e-10)) return false;
    }
    return true;
  };

  for (const Gate& g : {Gate::x(0), Gate::z(0), Gate::h(0), Gate::s(0), Gate::sdg(0)}) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const qhe::PauliKey key{{static_cast<std::uint8_t>(a)}, {static_cast<std::uint8_t>(b)}};
        check(r, commutes(g, key, 1),
              std::string(to_string(g.kind)) + " rule breaks for " + key_tag(key));
      }
  }
  for (const Gate& g : {Gate::cnot(0, 1), Gate::swap_gate(0, 1)}) {
    for (int mask = 0; mask < 16; ++mask) {
      const qhe::PauliKey key{
          {static_cast<std::uint8_t>(mask & 1), static_cast<std::uint8_t>((mask >> 1) & 1)},
          {static_cast<std::uint8_t>((mask >> 2) & 1), static_cast<std::uint8_t>((mask >> 3) & 1)}};
      check(r, commutes(g, key, 2),
            std::string(to_string(g.kind)) + " rule breaks for " + key_tag(key));
    }
  }
  return r;
}

SuiteResult suite_toffoli() {
  SuiteResult r{"toffoli-decomposition", 0, 0, {}};
  const Gate plain = Gate::toffoli(0, 1, 2);
  const std::vector<Gate> network = decompose_toffoli(plain);
  int t_like = 0;
  for (const Gate& g : network)
    if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++t_like;
  check(r, t_like == 7, "network uses " + std::to_string(t_like) + " T-like gates, wants 7");

  for (std::size_t basis = 0; basis < 8; ++basis) {
    std::vector<cplx> amps(8, 0.0);
    amps[basis] = 1.0;
    Statevector direct = Statevector::from_amplitudes(amps);
    Statevector via = direct;
    direct.apply(plain);
    for (const Gate& g : network) via.apply(g);
    check(r, max_abs_diff(direct, via) <= 1e-10,
          "basis input " + std::to_string(basis) + " disagrees");
  }

  std::mt19937_64 rng(0x746f66666f6c69ull);
  const Gate negated = Gate::toffoli_pol(0, 0, 1, 1, 2);
  const std::vector<Gate> negated_network = decompose_toffoli(negated);
  for (int trial = 0; trial < 3; ++trial) {
    Statevector direct = random_state(3, rng);
    Statevector via = direct;
    direct.apply(negated);
    for (const Gate& g : negated_network) via.apply(g);
    check(r, max_abs_diff(direct, via) <= 1e-10, "negated-control network disagrees");
  }
  return r;
}

SuiteResult suite_rotated_bell() {
  SuiteResult r{"rotated-bell", 0, 0, {}};
  for (int u = 0; u < 2; ++u)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Statevector st(2);
        st.apply(Gate::h(0));
        st.apply(Gate::cnot(0, 1));
        // Basis element (Sdg^u Z^b X^a on the first half): rightmost factor first.
        if (a) st.apply(Gate::x(0));
        if (b) st.apply(Gate::z(0));
        if (u) st.apply(Gate::sdg(0));

        Statevector probe = st;
        if (u) probe.apply(Gate::s(0));
        probe.apply(Gate::cnot(0, 1));
        probe.apply(Gate::h(0));
        const std::vector<double> probs = probe.branch_probabilities({0, 1});
        const std::size_t expected = static_cast<std::size_t>(b * 2 + a);
        bool sharp = std::abs(probs[expected] - 1.0) <= 1e-10;
        for (std::size_t i = 0; i < probs.size(); ++i)
          if (i != expected && probs[i] > 1e-10) sharp = false;
        check(r, sharp,
              "basis element u=" + std::to_string(u) + " a=" + std::to_string(a) +
                  " b=" + std::to_string(b) + " is not sharp");

        MeasurementPolicy pol = MeasurementPolicy::scripted({static_cast<int>(expected)});
        const auto [out, post] = measure_bell_rotated(st, 0, 1, u, pol);
        check(r, out.a == a && out.b == b,
              "outcome mapping wrong for u=" + std::to_string(u) + " a=" + std::to_string(a) +
                  " b=" + std::to_string(b));
      }
  return r;
}

SuiteResult suite_teleport() {
  SuiteResult r{"teleport-identities", 0, 0, {}};
  std::mt19937_64 rng(0x74656c65706f7274ull);
  for (const GateKind gate : {GateKind::T, GateKind::Tdg}) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int branch = 0; branch < 4; ++branch) {
          const Statevector psi = random_state(1, rng);
          const qhe::PauliKey key{{static_cast<std::uint8_t>(a)},
                                  {static_cast<std::uint8_t>(b)}};
          Statevector enc = qhe::qotp_encrypt(psi, key);
          MeasurementPolicy pol = MeasurementPolicy::scripted({branch});
          const auto [bits, ev] =
              qhe::teleport_t_gate(enc, 0, gate, a, b, qhe::Mode::eager, pol, 0);
          const qhe::PauliKey updated{{static_cast<std::uint8_t>(bits.first)},
                                      {static_cast<std::uint8_t>(bits.second)}};
          const Statevector dec = qhe::qotp_decrypt(std::move(enc), updated);
          Statevector want = psi;
          want.apply(gate == GateKind::T ? Gate::t(0) : Gate::tdg(0));
          check(r, equal_up_to_global_phase(dec, want, 1e-9),
                std::string(to_string(gate)) + " teleport breaks for " + key_tag(key) +
                    " branch=" + std::to_string(branch));
        }
  }
  return r;
}

SuiteResult suite_qotp_mixedness() {
  SuiteResult r{"qotp-mixedness", 0, 0, {}};
  std::mt19937_64 rng(0x6d697865646e6573ull);
  for (int n = 1; n <= 2; ++n) {
    const std::size_t dim = std::size_t{1} << n;
    std::vector<Statevector> plains;
    plains.push_back(Statevector(n));
    Statevector plus(n);
    for (int q = 0; q < n; ++q) plus.apply(Gate::h(q));
    plains.push_back(std::move(plus));
    plains.push_back(random_state(n, rng));

    int which = 0;
    for (const Statevector& plain : plains) {
      std::vector<std::vector<cplx>> rho(dim, std::vector<cplx>(dim, 0.0));
      const int key_count = 1 << (2 * n);
      for (int mask = 0; mask < key_count; ++mask) {
        qhe::PauliKey key;
        for (int q = 0; q < n; ++q) {
          key.a.push_back(static_cast<std::uint8_t>((mask >> (2 * q)) & 1));
          key.b.push_back(static_cast<std::uint8_t>((mask >> (2 * q + 1)) & 1));
        }
        const Statevector enc = qhe::qotp_encrypt(plain, key);
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            rho[i][j] += enc.amp(i) * std::conj(enc.amp(j));
      }
      double worst = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          const cplx want = (i == j) ? cplx{1.0 / static_cast<double>(dim), 0.0} : cplx{0.0, 0.0};
          worst = std::max(worst, std::abs(rho[i][j] / static_cast<double>(key_count) - want));
        }
      check(r, worst <= 1e-9,
            "key-averaged state is not maximally mixed at n=" + std::to_string(n) +
                " plaintext " + std::to_string(which) + " (off by " + std::to_string(worst) + ")");
      ++which;
    }
  }
  return r;
}

SuiteResult suite_nonrecursive_n8() {
  SuiteResult r{"nonrecursive-n8", 0, 0, {}};
  const int n = 8;
  for (std::uint64_t sv = 0; sv < (std::uint64_t{1} << n); ++sv) {
    const BitString s = BitString::from_index(sv, n);
    const SolveResult res = solve(build_nonrecursive_circuit({n, s}));
    check(r, res.s == s && res.probability >= 1.0 - 1e-9, "wrong readout for s=" + s.str());
  }
  return r;
}

std::vector<rcc::RccSpec> all_structured_specs(int n) {
  std::vector<rcc::RccSpec> specs;
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t sv = 1; sv < top; ++sv) {
    const BitString s = BitString::from_index(sv, n);
    rcc::RccSpec l1{rcc::Variant::lemma1, s, {}, {}, {}};
    specs.push_back(l1);
    for (rcc::RccSpec& p : rcc::enumerate_permutations(l1)) specs.push_back(std::move(p));
    for (std::uint64_t tv = 1; tv < top; ++tv) {
      if (tv == sv || (tv & sv) != sv) continue;
      specs.push_back({rcc::Variant::lemma2, s, BitString::from_index(tv, n), {}, {}});
    }
    for (const int pos : s.one_positions())
      specs.push_back({rcc::Variant::lemma3, s, {}, pos, {}});
    if (s.hamming_weight() % 2 == 0) {
      rcc::RccSpec l4{rcc::Variant::lemma4, s, {}, {}, {}};
      specs.push_back(l4);
      for (rcc::RccSpec& p : rcc::enumerate_permutations(l4)) specs.push_back(std::move(p));
    }
  }
  return specs;
}

bool same_instance(const RecursiveInstance& x, const RecursiveInstance& y) {
  return x.n == y.n && x.s == y.s && x.s_map == y.s_map && x.g_table == y.g_table;
}

SuiteResult suite_rcc_exhaustive(int n, const char* name) {
  SuiteResult r{name, 0, 0, {}};
  for (const rcc::RccSpec& spec : all_structured_specs(n)) {
    const std::string tag = std::string(to_string(spec.variant)) + " s=" + spec.s.str();
    bool valid = true;
    try {
      rcc::validate_spec(spec);
    } catch (const std::invalid_argument&) {
      valid = false;
    }
    check(r, valid, tag + " fails validation");
    if (!valid) continue;

    const RecursiveInstance inst = rcc::instance_from_spec(spec);
    check(r, validate_instance(inst).ok, tag + " produces an inconsistent instance");

    const SolveResult res = solve(rcc::synthesize_full(spec));
    check(r, res.s == spec.s && res.probability >= 1.0 - 1e-9, tag + " solves to " + res.s.str());

    const auto recognized = rcc::is_rcc(inst);
    check(r, recognized.has_value() && same_instance(rcc::instance_from_spec(*recognized), inst),
          tag + " is not recognized back");
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "key-rules",      "toffoli-decomposition", "rotated-bell",      "teleport-identities",
      "qotp-mixedness", "nonrecursive-n8",       "rcc-exhaustive-n2", "rcc-exhaustive-n3"};
  return names;
}

SuiteResult run_suite(const std::string& name) {
  if (name == "key-rules") return suite_key_rules();
  if (name == "toffoli-decomposition") return suite_toffoli();
  if (name == "rotated-bell") return suite_rotated_bell();
  if (name == "teleport-identities") return suite_teleport();
  if (name == "qotp-mixedness") return suite_qotp_mixedness();
  if (name == "nonrecursive-n8") return suite_nonrecursive_n8();
  if (name == "rcc-exhaustive-n2") return suite_rcc_exhaustive(2, "rcc-exhaustive-n2");
  if (name == "rcc-exhaustive-n3") return suite_rcc_exhaustive(3, "rcc-exhaustive-n3");
  throw std::invalid_argument("unknown verification suite \"" + name + "\"");
}

std::vector<SuiteResult> run_all() {
  std::vector<SuiteResult> results;
  for (const std::string& name : suite_names()) results.push_back(run_suite(name));
  return results;
}

}  // namespace rbv::verify
