#include "ovcp/bitvector.hpp"

#include <bit>

#include "ovcp/errors.hpp"

namespace ovcp {

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t k = 0; k < bits.size(); ++k) {
    const char c = bits[k];
    if (c != '0' && c != '1') {
      throw FormatError("non-binary character '" + std::string(1, c) +
                        "' in bit string");
    }
    if (c == '1') v.set_bit(k, true);
  }
  return v;
}

std::size_t BitVector::popcount() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::string BitVector::to_string() const {
  std::string out(len_, '0');
  for (std::size_t k = 0; k < len_; ++k) {
    if (bit(k)) out[k] = '1';
  }
  return out;
}

std::size_t inner_product(const BitVector& a, const BitVector& b) {
  assert(a.size() == b.size());
  auto wa = a.words();
  auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < wa.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(wa[w] & wb[w]));
  }
  return total;
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  assert(a.size() == b.size());
  auto wa = a.words();
  auto wb = b.words();
  std::size_t total = 0;
  for (std::size_t w = 0; w < wa.size(); ++w) {
    total += static_cast<std::size_t>(std::popcount(wa[w] ^ wb[w]));
  }
  return total;
}

BitVector concat(const BitVector& lo, const BitVector& hi) {
  BitVector out(lo.size() + hi.size());
  for (std::size_t k = 0; k < lo.size(); ++k) out.set_bit(k, lo.bit(k));
  for (std::size_t k = 0; k < hi.size(); ++k) out.set_bit(lo.size() + k, hi.bit(k));
  return out;
}

BitVector complement(const BitVector& v) {
  BitVector out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out.set_bit(k, !v.bit(k));
  return out;
}

}  // namespace ovcp
