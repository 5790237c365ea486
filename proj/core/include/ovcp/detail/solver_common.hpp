#pragma once

#include <cstdint>
#include <vector>

#include "ovcp/detail/packed.hpp"
#include "ovcp/group_scores.hpp"
#include "ovcp/instance.hpp"
#include "ovcp/solver_types.hpp"

namespace ovcp::solver_detail {

struct ResolvedConfig {
  unsigned degree = 2;
  std::size_t group_size = 1;
  std::int64_t scale = 1;
  unsigned threads = 1;
};

/// Applies default_params to unset knobs and clamps s to n.
ResolvedConfig resolve(const Instance& inst, const SolverConfig& config,
                       std::int64_t default_scale);

/// Cells with score >= threshold, as ascending j lists per group row.
struct FlaggedCells {
  std::uint64_t count = 0;
  std::vector<std::vector<std::uint32_t>> per_group;
};

FlaggedCells scan_flagged(const detail::PackedRows& xs, const Grouping& grouping,
                          const detail::PackedRows& ys, const ScorePlan& plan,
                          std::size_t dimension, const BigInt& threshold,
                          const EvalOptions& options);

}  // namespace ovcp::solver_detail
