#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ovcp {

/// Fixed-length bit string packed into 64-bit words, least significant bit
/// first. Bits past size() stay zero so word-wise AND/XOR popcounts need no
/// tail masking.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t len) : words_((len + 63) / 64, 0), len_(len) {}

  /// Parses a string over {0,1}; character k becomes bit k.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const { return len_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool bit(std::size_t k) const {
    assert(k < len_);
    return (words_[k >> 6] >> (k & 63)) & 1u;
  }

  void set_bit(std::size_t k, bool v) {
    assert(k < len_);
    const std::uint64_t mask = std::uint64_t{1} << (k & 63);
    if (v) {
      words_[k >> 6] |= mask;
    } else {
      words_[k >> 6] &= ~mask;
    }
  }

  std::size_t popcount() const;
  std::string to_string() const;

  bool operator==(const BitVector&) const = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t len_ = 0;
};

/// Number of shared 1-positions; both vectors must have equal length.
std::size_t inner_product(const BitVector& a, const BitVector& b);

std::size_t hamming_distance(const BitVector& a, const BitVector& b);

/// Vector of length lo.size() + hi.size() whose low bits are lo.
BitVector concat(const BitVector& lo, const BitVector& hi);

/// Flips every bit within the vector's length.
BitVector complement(const BitVector& v);

}  // namespace ovcp
