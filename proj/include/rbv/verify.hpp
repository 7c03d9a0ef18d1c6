#pragma once

#include <string>
#include <vector>

namespace rbv::verify {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> notes;  // one line per failure

  bool ok() const { return failures == 0; }
};

// Suites runnable from the command line:
//   key-rules              pad/gate commutation identities for every rule
//   toffoli-decomposition  Clifford+T network vs the plain gate
//   rotated-bell           rotated Bell basis probabilities and outcome mapping
//   teleport-identities    gate teleportation across all keys and branches
//   qotp-mixedness         key-averaged pad output is maximally mixed
//   nonrecursive-n8        width-8 hidden-string search, every s
//   rcc-exhaustive-n2      every structured family spec at n = 2, solved
//   rcc-exhaustive-n3      same at n = 3
const std::vector<std::string>& suite_names();

// Unknown names throw std::invalid_argument.
SuiteResult run_suite(const std::string& name);
std::vector<SuiteResult> run_all();

}  // namespace rbv::verify
