#include "ovcp/group_scores.hpp"

#include <algorithm>

#include "ovcp/detail/score_engine.hpp"
#include "ovcp/errors.hpp"

namespace ovcp {

Grouping Grouping::contiguous(std::size_t n, std::size_t s) {
  if (s == 0) throw ParameterError("group size must be positive");
  Grouping grouping;
  for (std::size_t begin = 0; begin < n; begin += s) {
    const std::size_t end = std::min(n, begin + s);
    grouping.ranges.emplace_back(static_cast<std::uint32_t>(begin),
                                 static_cast<std::uint32_t>(end));
  }
  return grouping;
}

std::size_t Grouping::max_group_size() const {
  std::size_t most = 0;
  for (const auto& [begin, end] : ranges) {
    most = std::max<std::size_t>(most, end - begin);
  }
  return most;
}

std::string_view to_string(EvaluatorKind kind) {
  return kind == EvaluatorKind::kDirect ? "direct" : "monomial";
}

EvaluatorKind evaluator_from_string(std::string_view text) {
  if (text == "direct") return EvaluatorKind::kDirect;
  if (text == "monomial") return EvaluatorKind::kMonomial;
  throw ParameterError("unknown evaluator '" + std::string(text) +
                       "' (expected direct or monomial)");
}

namespace {

std::size_t common_dimension(std::span<const BitVector> xs,
                             std::span<const BitVector> ys) {
  std::size_t d = 0;
  if (!xs.empty()) {
    d = xs.front().size();
  } else if (!ys.empty()) {
    d = ys.front().size();
  }
  for (const auto& v : xs) {
    if (v.size() != d) throw ParameterError("vectors must share one dimension");
  }
  for (const auto& v : ys) {
    if (v.size() != d) throw ParameterError("vectors must share one dimension");
  }
  return d;
}

GroupScores materialize(std::span<const BitVector> xs, const Grouping& grouping,
                        std::span<const BitVector> ys, const ScorePlan& plan,
                        const EvalOptions& options) {
  GroupScores scores;
  scores.rows = grouping.count();
  scores.cols = ys.size();
  scores.values.assign(scores.rows * scores.cols, BigInt(0));
  scores.plan = plan;
  scores.group_sizes.reserve(grouping.count());
  for (std::size_t g = 0; g < grouping.count(); ++g) {
    scores.group_sizes.push_back(grouping.size_of(g));
  }

  const std::size_t d = common_dimension(xs, ys);
  const auto px = detail::PackedRows::pack(xs);
  const auto py = detail::PackedRows::pack(ys);
  detail::scan_scores(px, grouping, py, plan, d, options,
                      [&](std::size_t, detail::TileRange r, const auto* cells) {
                        const std::size_t tile_cols = r.j1 - r.j0;
                        for (std::size_t g = r.g0; g < r.g1; ++g) {
                          for (std::size_t j = r.j0; j < r.j1; ++j) {
                            scores.values[g * scores.cols + j] =
                                BigInt(cells[(g - r.g0) * tile_cols + (j - r.j0)]);
                          }
                        }
                      });
  return scores;
}

}  // namespace

GroupScores direct_group_scores(std::span<const BitVector> xs,
                                const Grouping& grouping,
                                std::span<const BitVector> ys,
                                const ScorePlan& plan, unsigned threads) {
  EvalOptions options;
  options.evaluator = EvaluatorKind::kDirect;
  options.threads = threads;
  return materialize(xs, grouping, ys, plan, options);
}

GroupScores monomial_group_scores(std::span<const BitVector> xs,
                                  const Grouping& grouping,
                                  std::span<const BitVector> ys,
                                  const ScorePlan& plan,
                                  const EvalOptions& options) {
  EvalOptions opts = options;
  opts.evaluator = EvaluatorKind::kMonomial;
  return materialize(xs, grouping, ys, plan, opts);
}

GroupScores group_scores(std::span<const BitVector> xs, const Grouping& grouping,
                         std::span<const BitVector> ys, const ScorePlan& plan,
                         const EvalOptions& options) {
  return materialize(xs, grouping, ys, plan, options);
}

}  // namespace ovcp
