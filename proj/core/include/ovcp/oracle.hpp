#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "ovcp/exact.hpp"
#include "ovcp/instance.hpp"

namespace ovcp {

/// Exact Pr[Binomial(d, 1/2) <= T] as numerator / 2^d.
struct TailValue {
  BigInt numerator;
  BigInt denominator;

  double to_double() const;
};

/// T above d counts as T = d (full support).
TailValue binomial_tail(std::size_t d, std::size_t t);

/// tail >= n^(-1/root), decided exactly by cross-multiplication:
/// numerator^root * n >= denominator^root.
bool tail_at_least_inverse_root(const TailValue& tail, std::uint64_t n,
                                unsigned root);

/// Scans all n^2 pairs; returns the lexicographically first orthogonal
/// (i, j), or nothing.
std::optional<std::pair<std::size_t, std::size_t>> brute_force_ov(
    const Instance& inst, unsigned threads = 0);

struct CpAnswer {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t distance = 0;
};

/// Lexicographically first pair achieving the exact minimum Hamming distance.
CpAnswer brute_force_cp(const Instance& inst, unsigned threads = 0);

}  // namespace ovcp
