#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ovcp/bitvector.hpp"
#include "ovcp/group_scores.hpp"

namespace ovcp {

enum class Regime { kSubsample, kCritical, kTrivialNo };

std::string_view to_string(Regime regime);

struct SolverConfig {
  std::optional<unsigned> degree;         // q; unset -> default_params heuristic
  std::optional<std::size_t> group_size;  // s; unset -> default_params heuristic
  std::int64_t scale = 0;                 // D; 0 -> 1000 for OV, 2 for CP
  EvaluatorKind evaluator = EvaluatorKind::kDirect;
  bool strict = true;   // run the full pipeline even in the trivially-no regime
  unsigned threads = 0; // 0 = hardware concurrency
  std::uint64_t max_subsets = std::uint64_t{1} << 22;
};

struct FoundPair {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t value = 0;  // inner product (OV) or Hamming distance (CP)
  BitVector x;            // certificate copies of the winning vectors
  BitVector y;
};

struct PlanSummary {
  unsigned degree = 0;
  std::int64_t center = 0;
  std::int64_t scale = 0;
  BigInt subset_count;
};

struct SolveReport {
  std::optional<FoundPair> found;
  Regime regime_used = Regime::kCritical;

  /// Cells at or above their brute-force threshold. For the closest pair
  /// pipeline: candidate cells actually brute forced.
  std::uint64_t n_failing_pairs = 0;
  std::uint64_t total_cells = 0;
  std::size_t groups = 0;

  /// OV: the subsample quick pass missed and the full pipeline ran.
  /// CP: no candidate produced a pair, so the full brute-force oracle ran.
  bool fallback_used = false;

  /// Score-matrix passes performed (the CP pipeline does exactly one).
  std::uint64_t score_evaluations = 0;

  double eval_ms = 0.0;
  double fallback_ms = 0.0;
  double total_ms = 0.0;

  PlanSummary plan;
  bool exact = true;  // all scoring is exact integer arithmetic

  // Effective parameters after defaults were applied.
  unsigned degree = 2;
  std::size_t group_size = 1;
  std::int64_t scale = 1;
  EvaluatorKind evaluator = EvaluatorKind::kDirect;
  bool strict = true;
  unsigned threads = 0;
};

}  // namespace ovcp
