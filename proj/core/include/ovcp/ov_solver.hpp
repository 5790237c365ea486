#pragma once

#include <cstddef>
#include <utility>

#include "ovcp/instance.hpp"
#include "ovcp/solver_types.hpp"

namespace ovcp {

/// Density regime split at sqrt(1/c) and 3*sqrt(1/c), c = d / log2(n).
/// Boundaries are inclusive into Critical. Requires n >= 2.
Regime regime(std::size_t n, std::size_t d, double p);

/// Heuristic defaults (q, s) from n and c = d / log2(n):
///   q = nearest even integer to log2(n) / (50 log2(c)), at least 2;
///   s = round(n^(log2(log2(c)) / log2(c))) for c > 2, else 1.
/// Requires c > 1.
std::pair<unsigned, std::size_t> default_params(std::size_t n, std::size_t d);

/// Average-case orthogonal-pair search: regime dispatch, grouped scoring
/// against the threshold M^q, brute force over flagged cells. Whenever the
/// full pipeline runs, the verdict is exact, because an orthogonal pair in
/// group i forces A[i][j] >= M^q.
SolveReport solve_ov(const Instance& inst, const SolverConfig& config = {});

}  // namespace ovcp
