// N-bit block of the cipher state. Bit 0 is the leftmost (most significant)
// position throughout the library, matching the block's written form, so
// bit j carries weight 2^(N-1-j) in the integer view.
#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbc_chaos {

class BlockState {
public:
  static constexpr int kMaxBits = 60;

  BlockState(int n_bits, std::uint64_t value) : n_(n_bits), value_(value) {
    if (n_bits < 1 || n_bits > kMaxBits)
      throw std::invalid_argument("block width must be in [1, " +
                                  std::to_string(kMaxBits) + "]");
    if (value >> n_bits)
      throw std::invalid_argument("block value does not fit in " +
                                  std::to_string(n_bits) + " bits");
  }

  static BlockState from_bits(const std::vector<bool>& bits) {
    std::uint64_t v = 0;
    for (bool b : bits) v = (v << 1) | (b ? 1u : 0u);
    return BlockState(static_cast<int>(bits.size()), v);
  }

  int size() const { return n_; }
  std::uint64_t value() const { return value_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << n_) - 1; }

  bool bit(int j) const {
    if (j < 0 || j >= n_) throw std::out_of_range("bit index out of range");
    return (value_ >> (n_ - 1 - j)) & 1u;
  }

  BlockState with_bit_flipped(int j) const {
    if (j < 0 || j >= n_) throw std::out_of_range("bit index out of range");
    return BlockState(n_, value_ ^ (std::uint64_t{1} << (n_ - 1 - j)));
  }

  std::vector<bool> bits() const {
    std::vector<bool> out(n_);
    for (int j = 0; j < n_; ++j) out[j] = bit(j);
    return out;
  }

  std::string to_string() const {
    std::string s(n_, '0');
    for (int j = 0; j < n_; ++j)
      if (bit(j)) s[j] = '1';
    return s;
  }

  friend bool operator==(const BlockState& a, const BlockState& b) {
    return a.n_ == b.n_ && a.value_ == b.value_;
  }
  friend bool operator!=(const BlockState& a, const BlockState& b) {
    return !(a == b);
  }

private:
  int n_;
  std::uint64_t value_;
};

// Bitwise complement on the block width; the default substitution function
// of the chaining construction.
inline BlockState bitwise_negation(const BlockState& x) {
  return BlockState(x.size(), ~x.value() & x.mask());
}

inline BlockState flip_bit(const BlockState& x, int j) {
  return x.with_bit_flipped(j);
}

inline int hamming_distance(const BlockState& a, const BlockState& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming distance needs equal block widths");
  return std::popcount(a.value() ^ b.value());
}

}  // namespace cbc_chaos
