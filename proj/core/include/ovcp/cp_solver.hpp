#pragma once

#include <cstddef>
#include <vector>

#include "ovcp/instance.hpp"
#include "ovcp/solver_types.hpp"

namespace ovcp {

/// Padded views of length 2d with <xp[i], yp[j]> = Hamming(x[i], y[j]) and
/// every padded vector holding exactly d ones.
struct PaddedInstance {
  std::vector<BitVector> xp;
  std::vector<BitVector> yp;
  InstanceParams origin;
};

/// xp = x || ~x, yp = ~y || y.
PaddedInstance pad_transform(const Instance& inst);

struct CpThresholds {
  std::size_t t_star = 0;    // largest candidate distance
  std::size_t t_delta2 = 0;  // diagnostics window edge
  double delta = 0.0;        // (d/2 - t_star) / d
  double delta2 = 0.0;       // (d/2 - t_delta2) / d
};

/// t_star = min { T : Pr[Binomial(d,1/2) <= T] >= n^(-1/2) } and
/// t_delta2 the analogue for target n^(-1/100), both decided by exact
/// integer cross-multiplication. Requires n >= 2.
CpThresholds distance_threshold(std::size_t n, std::size_t d);

/// Closest-pair search: pad, score once with center d/2 (scale 2 makes the
/// center exact), walk candidate distances t = 0..t_star against thresholds
/// (d - 2t)^q, brute force flagged cells, and fall back to the full oracle
/// when no candidate pair exists. The returned distance is always the exact
/// minimum; the report records whether the fallback fired.
SolveReport solve_cp(const Instance& inst, const SolverConfig& config = {});

}  // namespace ovcp
