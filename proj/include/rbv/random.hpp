#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rbv {

// Source of measurement branch choices. Two flavors:
//   seeded   - Born-rule sampling from a fixed-seed mt19937_64
//   scripted - a pre-supplied list of branch indices, consumed in order; picking
//              a branch whose probability is (near) zero raises BranchError.
// Scripted mode is what makes exhaustive branch enumeration deterministic.
class MeasurementPolicy {
 public:
  static MeasurementPolicy seeded(std::uint64_t seed);
  static MeasurementPolicy scripted(std::vector<int> branches);

  // Returns a branch index into `probs` (assumed to sum to ~1).
  int pick(const std::vector<double>& probs);

  bool scripted_mode() const { return scripted_; }
  std::size_t consumed() const { return cursor_; }

 private:
  MeasurementPolicy() = default;
  bool scripted_ = false;
  std::mt19937_64 rng_{};
  std::vector<int> script_;
  std::size_t cursor_ = 0;
};

}  // namespace rbv
