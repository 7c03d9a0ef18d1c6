#include "rbv/bitstring.hpp"

#include <stdexcept>

#include "rbv/errors.hpp"

namespace rbv {

BitString BitString::parse(std::string_view text) {
  BitString out(static_cast<int>(text.size()));
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '0') {
      out.bits_[i] = 0;
    } else if (text[i] == '1') {
      out.bits_[i] = 1;
    } else {
      throw ParseError("bit string \"" + std::string(text) + "\": invalid character at position " +
                       std::to_string(i));
    }
  }
  return out;
}

BitString BitString::from_index(std::uint64_t value, int n) {
  if (n < 0 || n > 63) throw std::invalid_argument("BitString width out of range");
  BitString out(n);
  for (int i = 0; i < n; ++i) out.bits_[i] = (value >> (n - 1 - i)) & 1u;
  return out;
}

int BitString::hamming_weight() const {
  int w = 0;
  for (auto b : bits_) w += b;
  return w;
}

std::vector<int> BitString::one_positions() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

int BitString::dot(const BitString& other) const {
  if (other.size() != size()) throw std::invalid_argument("BitString::dot: width mismatch");
  int acc = 0;
  for (int i = 0; i < size(); ++i) acc ^= bits_[i] & other.bits_[i];
  return acc;
}

BitString BitString::bit_and(const BitString& other) const {
  if (other.size() != size()) throw std::invalid_argument("BitString::bit_and: width mismatch");
  BitString out(size());
  for (int i = 0; i < size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

BitString BitString::complement() const {
  BitString out(size());
  for (int i = 0; i < size(); ++i) out.bits_[i] = bits_[i] ^ 1u;
  return out;
}

std::uint64_t BitString::index() const {
  std::uint64_t v = 0;
  for (int i = 0; i < size(); ++i) v = (v << 1) | bits_[i];
  return v;
}

std::string BitString::str() const {
  std::string s(size(), '0');
  for (int i = 0; i < size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

}  // namespace rbv
