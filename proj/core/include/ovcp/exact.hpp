#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>

namespace ovcp {

/// Arbitrary-precision signed integer. All scoring arithmetic is exact; the
/// engine only drops to the __int128 fast path when a conservative bound
/// proves no intermediate can overflow it.
using BigInt = boost::multiprecision::cpp_int;

using Int128 = __int128;

inline constexpr Int128 kInt128Max =
    static_cast<Int128>((~static_cast<unsigned __int128>(0)) >> 1);

inline BigInt int128_max_big() { return BigInt(kInt128Max); }

inline bool fits_int128(const BigInt& v) {
  static const BigInt hi = int128_max_big();
  static const BigInt lo = -hi - 1;
  return v >= lo && v <= hi;
}

/// C(n, k) exactly.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// base^exp exactly (0^0 = 1).
BigInt pow_int(const BigInt& base, unsigned exp);

}  // namespace ovcp
