#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbv/bv.hpp"
#include "rbv/circuit.hpp"
#include "rbv/errors.hpp"
#include "rbv/protocol.hpp"
#include "rbv/qhe.hpp"
#include "rbv/rcc.hpp"
#include "rbv/verify.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw rbv::ParseError("cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
  out << text;
}

std::string gate_line(const rbv::Gate& g) {
  std::string line = rbv::to_string(g.kind);
  if (g.kind == rbv::GateKind::SWAP) {
    line += " q" + std::to_string(g.controls[0]) + " q" + std::to_string(g.target);
    return line;
  }
  line += " q" + std::to_string(g.target);
  if (!g.controls.empty()) {
    line += " c[";
    for (std::size_t i = 0; i < g.controls.size(); ++i) {
      if (i) line += ",";
      line += std::to_string(g.controls[i]);
      line += g.polarity[i] ? '+' : '-';
    }
    line += "]";
  }
  return line;
}

struct CircuitInput {
  std::string circuit_path;
  std::string spec_path;
  std::string instance_path;
};

// Loads from whichever source option the user picked; spec and instance paths
// go through synthesis first.
rbv::Circuit load_circuit(const CircuitInput& in) {
  int sources = !in.circuit_path.empty() + !in.spec_path.empty() + !in.instance_path.empty();
  if (sources != 1)
    throw std::invalid_argument("pick exactly one of --circuit, --spec, --instance");
  if (!in.circuit_path.empty()) return rbv::deserialize_circuit(slurp(in.circuit_path));
  if (!in.spec_path.empty())
    return rbv::rcc::synthesize_full(rbv::rcc::spec_from_json(slurp(in.spec_path)));
  return rbv::build_recursive_circuit(rbv::instance_from_json(slurp(in.instance_path)));
}

int run_synthesize(const std::string& spec_path, const std::string& out_path, bool block_only,
                   bool listing) {
  const rbv::rcc::RccSpec spec = rbv::rcc::spec_from_json(slurp(spec_path));
  const rbv::Circuit circuit =
      block_only ? rbv::rcc::synthesize_us(spec) : rbv::rcc::synthesize_full(spec);
  const std::string text = rbv::serialize(circuit);
  if (!out_path.empty()) spill(out_path, text);
  if (listing) {
    std::cout << "# " << rbv::rcc::to_string(spec.variant) << " s=" << spec.s.str() << " width="
              << circuit.num_qubits() << " gates=" << circuit.size() << "\n";
    for (const rbv::Gate& g : circuit.gates()) std::cout << gate_line(g) << "\n";
  } else if (out_path.empty()) {
    std::cout << text;
  }
  return 0;
}

int run_simulate(const CircuitInput& in) {
  const rbv::Circuit circuit = load_circuit(in);
  const rbv::SolveResult res = rbv::solve(circuit);
  std::cout << "measured_s " << res.s.str() << "\n";
  std::cout << "probability " << std::setprecision(12) << res.probability << "\n";
  return 0;
}

int run_tcount(const CircuitInput& in, int compare_general) {
  const rbv::Circuit circuit = load_circuit(in);
  const rbv::TCountReport rep = rbv::t_count(circuit);
  json j;
  j["t_gates"] = rep.t_gates;
  j["toffolis_before_decomposition"] = rep.toffolis_before_decomposition;
  j["mcx_before_decomposition"] = rep.mcx_before_decomposition;
  j["cnots"] = rep.cnots;
  if (compare_general > 0) {
    const rbv::rcc::CostReport g = rbv::rcc::cost_report_general(compare_general);
    json c;
    c["n"] = compare_general;
    c["structured_toffolis"] = g.toffolis;
    c["structured_t_gates"] = g.t_gates;
    c["general_mcx"] = g.mcx_general;
    c["general_mcx_one_application"] = g.mcx_general_one_application;
    c["general_t_gates_lower_bound"] = g.t_gates_general_lower_bound;
    j["compare_general"] = std::move(c);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_qhe(const CircuitInput& in, const std::string& mode_name, std::uint64_t seed,
            const std::string& branches, const std::string& transcript_path,
            const std::string& report_path, bool wall_time) {
  const rbv::Circuit circuit = rbv::decompose_to_clifford_t(load_circuit(in));
  const rbv::qhe::Mode mode =
      (mode_name == "deferred") ? rbv::qhe::Mode::deferred : rbv::qhe::Mode::eager;
  rbv::Statevector plaintext(circuit.num_qubits());

  if (branches == "all") {
    if (!transcript_path.empty())
      throw std::invalid_argument("--transcript needs --branches sampled");
    int m = 0;
    for (const rbv::Gate& g : circuit.gates())
      if (g.kind == rbv::GateKind::T || g.kind == rbv::GateKind::Tdg) ++m;
    if (m > 6)
      throw std::invalid_argument("--branches all is capped at 6 teleportations, circuit has " +
                                  std::to_string(m));
    const std::uint64_t runs = std::uint64_t{1} << (2 * m);
    double fid_min = 1.0;
    double fid_max = 0.0;
    for (std::uint64_t combo = 0; combo < runs; ++combo) {
      std::vector<int> script(m);
      for (int i = 0; i < m; ++i) script[i] = static_cast<int>((combo >> (2 * i)) & 3);
      rbv::MeasurementPolicy policy = rbv::MeasurementPolicy::scripted(script);
      const rbv::qhe::SchemeReport rep =
          rbv::qhe::run_scheme(circuit, plaintext, mode, seed, policy);
      fid_min = std::min(fid_min, rep.fidelity);
      fid_max = std::max(fid_max, rep.fidelity);
    }
    json j;
    j["mode"] = rbv::qhe::to_string(mode);
    j["m"] = m;
    j["runs"] = runs;
    j["fidelity_min"] = fid_min;
    j["fidelity_max"] = fid_max;
    const std::string text = j.dump(2) + "\n";
    if (!report_path.empty()) spill(report_path, text);
    std::cout << "mode " << rbv::qhe::to_string(mode) << "\n"
              << "m " << m << "\n"
              << "runs " << runs << "\n"
              << "fidelity_min " << std::setprecision(12) << fid_min << "\n"
              << "fidelity_max " << std::setprecision(12) << fid_max << "\n";
    return 0;
  }

  const rbv::proto::ProtocolRunReport report =
      rbv::proto::run_qhe_protocol(circuit, plaintext, mode, seed, seed ^ 0x9e3779b97f4a7c15ull);
  if (!report_path.empty()) spill(report_path, report.to_json(wall_time));
  if (!transcript_path.empty()) spill(transcript_path, rbv::qhe::serialize(report.completed));
  std::cout << "mode " << rbv::qhe::to_string(report.mode) << "\n"
            << "m " << report.m << "\n"
            << "fidelity " << std::setprecision(12) << report.fidelity << "\n"
            << "digest_verified " << (report.reported_digest == report.recomputed_digest ? 1 : 0)
            << "\n";
  if (report.measured_s) std::cout << "measured_s " << report.measured_s->str() << "\n";
  return 0;
}

int run_verify(std::vector<std::string> suites, bool all, bool list) {
  if (list) {
    for (const std::string& name : rbv::verify::suite_names()) std::cout << name << "\n";
    return 0;
  }
  if (all || suites.empty()) suites = rbv::verify::suite_names();
  bool good = true;
  for (const std::string& name : suites) {
    const rbv::verify::SuiteResult res = rbv::verify::run_suite(name);
    std::cout << res.name << ": " << res.checks << " checks, " << res.failures << " failures\n";
    for (const std::string& note : res.notes) std::cout << "  " << note << "\n";
    good = good && res.ok();
  }
  return good ? 0 : 1;
}

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const rbv::NondeterministicOutcome& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rbv::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesis, simulation and verification for recursive hidden-string circuits "
               "with homomorphic evaluation"};
  app.require_subcommand(1);

  std::string spec_path, out_path;
  bool block_only = false, listing = false;
  CLI::App* synth = app.add_subcommand("synthesize", "Turn a family spec into a circuit file");
  synth->add_option("--spec", spec_path, "family spec JSON")->required();
  synth->add_option("--out", out_path, "write the circuit JSON here instead of stdout");
  synth->add_flag("--block-only", block_only, "emit just the inner-oracle block");
  synth->add_flag("--listing", listing, "print a one-gate-per-line listing");

  CircuitInput sim_in;
  CLI::App* sim = app.add_subcommand("simulate", "Solve a circuit and read register 1");
  sim->add_option("--circuit", sim_in.circuit_path, "circuit JSON");
  sim->add_option("--spec", sim_in.spec_path, "family spec JSON (synthesized first)");
  sim->add_option("--instance", sim_in.instance_path, "instance JSON (table-driven oracle)");

  CircuitInput tc_in;
  int compare_general = 0;
  CLI::App* tc = app.add_subcommand("tcount", "Count T gates and Toffoli/MCX usage");
  tc->add_option("--circuit", tc_in.circuit_path, "circuit JSON");
  tc->add_option("--spec", tc_in.spec_path, "family spec JSON (synthesized first)");
  tc->add_option("--compare-general", compare_general,
                 "add the table-driven construction figures for this width");

  CircuitInput qhe_in;
  std::string mode_name = "eager", branches = "sampled", transcript_path, report_path;
  std::uint64_t seed = 7;
  bool wall_time = false;
  CLI::App* qr = app.add_subcommand("qhe-run", "Evaluate a circuit under the encryption scheme");
  qr->add_option("--circuit", qhe_in.circuit_path, "circuit JSON (Toffolis are decomposed)");
  qr->add_option("--spec", qhe_in.spec_path, "family spec JSON (synthesized and decomposed)");
  qr->add_option("--mode", mode_name, "eager or deferred")
      ->check(CLI::IsMember({"eager", "deferred"}));
  qr->add_option("--seed", seed, "key and measurement seed");
  qr->add_option("--branches", branches, "sampled (one seeded run) or all (every script)")
      ->check(CLI::IsMember({"sampled", "all"}));
  qr->add_option("--transcript", transcript_path, "write the completed transcript JSON here");
  qr->add_option("--report", report_path, "write the run report JSON here");
  qr->add_flag("--wall-time", wall_time, "include wall time in the report");

  std::vector<std::string> suites;
  bool verify_all = false, verify_list = false;
  CLI::App* vf = app.add_subcommand("verify", "Run the built-in verification suites");
  vf->add_option("--suite", suites, "suite name (repeatable)");
  vf->add_flag("--all", verify_all, "run every suite");
  vf->add_flag("--list", verify_list, "list suite names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*synth) return guarded([&] { return run_synthesize(spec_path, out_path, block_only, listing); });
  if (*sim) return guarded([&] { return run_simulate(sim_in); });
  if (*tc) return guarded([&] { return run_tcount(tc_in, compare_general); });
  if (*qr) {
    return guarded(
        [&] { return run_qhe(qhe_in, mode_name, seed, branches, transcript_path, report_path,
                             wall_time); });
  }
  if (*vf) return guarded([&] { return run_verify(suites, verify_all, verify_list); });
  return 2;
}
