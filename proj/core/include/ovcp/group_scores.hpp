#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ovcp/bitvector.hpp"
#include "ovcp/exact.hpp"
#include "ovcp/score_plan.hpp"

namespace ovcp {

/// Partition of X into index ranges. Groups may have unequal sizes; an empty
/// range contributes an all-zero score row.
struct Grouping {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;  // [begin, end)

  /// ceil(n/s) contiguous groups of size s (last one may be short).
  static Grouping contiguous(std::size_t n, std::size_t s);

  std::size_t count() const { return ranges.size(); }
  std::size_t size_of(std::size_t g) const {
    return ranges[g].second - ranges[g].first;
  }
  std::size_t max_group_size() const;
};

enum class EvaluatorKind { kDirect, kMonomial };

std::string_view to_string(EvaluatorKind kind);
EvaluatorKind evaluator_from_string(std::string_view text);

struct EvalOptions {
  EvaluatorKind evaluator = EvaluatorKind::kDirect;
  unsigned threads = 0;  // 0 = hardware concurrency
  /// Monomial feature budget: monomial_group_scores throws CapacityError when
  /// subset_count(q, d) exceeds this.
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
};

/// Exact integer matrix A[i][j] = sum over x in group i of Q(<x, y_j>).
struct GroupScores {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> values;  // row-major
  ScorePlan plan;
  std::vector<std::size_t> group_sizes;

  const BigInt& at(std::size_t i, std::size_t j) const {
    return values[i * cols + j];
  }
};

/// Popcount evaluator: scores every (group, y) cell by direct summation of
/// table lookups Q(popcount(x AND y)).
GroupScores direct_group_scores(std::span<const BitVector> xs,
                                const Grouping& grouping,
                                std::span<const BitVector> ys,
                                const ScorePlan& plan, unsigned threads = 0);

/// Feature-map evaluator: builds left features L[i][S] = w_|S| * |{x in group
/// i : x_S = 1}| over all subsets |S| <= q and accumulates, per y, the columns
/// selected by the subsets of y's support. Bit-for-bit equal to the direct
/// evaluator.
GroupScores monomial_group_scores(std::span<const BitVector> xs,
                                  const Grouping& grouping,
                                  std::span<const BitVector> ys,
                                  const ScorePlan& plan,
                                  const EvalOptions& options = {});

/// Dispatch on options.evaluator.
GroupScores group_scores(std::span<const BitVector> xs, const Grouping& grouping,
                         std::span<const BitVector> ys, const ScorePlan& plan,
                         const EvalOptions& options = {});

}  // namespace ovcp
