#include "rbv/random.hpp"

#include <string>

#include "rbv/errors.hpp"

namespace rbv {

namespace {
constexpr double kImpossible = 1e-12;
}

MeasurementPolicy MeasurementPolicy::seeded(std::uint64_t seed) {
  MeasurementPolicy p;
  p.scripted_ = false;
  p.rng_.seed(seed);
  return p;
}

MeasurementPolicy MeasurementPolicy::scripted(std::vector<int> branches) {
  MeasurementPolicy p;
  p.scripted_ = true;
  p.script_ = std::move(branches);
  return p;
}

int MeasurementPolicy::pick(const std::vector<double>& probs) {
  if (probs.empty()) throw BranchError("no branches to pick from");
  if (scripted_) {
    if (cursor_ >= script_.size()) throw BranchError("branch script exhausted");
    const int b = script_[cursor_++];
    if (b < 0 || static_cast<std::size_t>(b) >= probs.size())
      throw BranchError("scripted branch " + std::to_string(b) + " out of range");
    if (probs[b] < kImpossible)
      throw BranchError("scripted branch " + std::to_string(b) + " has probability " +
                        std::to_string(probs[b]));
    return b;
  }
  // 53-bit uniform draw, then a CDF walk. Hand-rolled so the stream does not
  // depend on the standard library's distribution internals.
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  double acc = 0.0;
  int last_live = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > kImpossible) last_live = static_cast<int>(i);
    acc += probs[i];
    if (u < acc && probs[i] > kImpossible) return static_cast<int>(i);
  }
  if (last_live < 0) throw BranchError("all branches have zero probability");
  return last_live;
}

}  // namespace rbv
