#pragma once

#include <stdexcept>

namespace rbv {

// A state would exceed the configured qubit cap (or another hard resource limit).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scripted measurement branch has (near-)zero probability, or the script ran dry.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; the message carries a locus (byte/line or JSON path).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A register measurement that is contractually deterministic turned out not to be.
class NondeterministicOutcome : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Message-order or transcript-consistency violation in the two-party flow.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rbv
