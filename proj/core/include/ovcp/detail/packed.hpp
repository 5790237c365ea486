#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ovcp/bitvector.hpp"

namespace ovcp::detail {

/// Row-contiguous copy of a vector set for tight popcount loops.
struct PackedRows {
  std::size_t count = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> data;

  const std::uint64_t* row(std::size_t r) const { return data.data() + r * words; }

  static PackedRows pack(std::span<const BitVector> rows) {
    PackedRows out;
    out.count = rows.size();
    out.words = rows.empty() ? 1 : rows.front().words().size();
    out.data.assign(out.count * out.words, 0);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      auto src = rows[r].words();
      std::copy(src.begin(), src.end(), out.data.begin() + r * out.words);
    }
    return out;
  }
};

inline std::size_t and_popcount(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) {
  std::size_t total = 0;
  for (std::size_t w = 0; w < words; ++w) {
    total += static_cast<std::size_t>(std::popcount(a[w] & b[w]));
  }
  return total;
}

}  // namespace ovcp::detail
