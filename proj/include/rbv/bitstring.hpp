#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rbv {

// Fixed-width bit vector with big-endian text form: the leftmost character of
// "101" is bit 0. Bit 0 is also the most significant bit of the basis index,
// matching the qubit-ordering convention of the simulator.
class BitString {
 public:
  BitString() = default;
  explicit BitString(int n) : bits_(n, 0) {}

  static BitString parse(std::string_view text);  // throws ParseError on non-[01]
  static BitString from_index(std::uint64_t value, int n);

  int size() const { return static_cast<int>(bits_.size()); }
  int bit(int i) const { return bits_.at(i); }
  void set(int i, int v) { bits_.at(i) = v ? 1 : 0; }

  int hamming_weight() const;
  bool any() const { return hamming_weight() > 0; }
  std::vector<int> one_positions() const;

  int dot(const BitString& other) const;  // inner product mod 2
  BitString bit_and(const BitString& other) const;
  BitString complement() const;

  std::uint64_t index() const;  // bit 0 = most significant
  std::string str() const;

  bool operator==(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace rbv
