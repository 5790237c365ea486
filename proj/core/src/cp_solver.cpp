#include "ovcp/cp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <type_traits>
#include <vector>

#include "ovcp/detail/packed.hpp"
#include "ovcp/detail/score_engine.hpp"
#include "ovcp/detail/solver_common.hpp"
#include "ovcp/errors.hpp"
#include "ovcp/oracle.hpp"

namespace ovcp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

PaddedInstance pad_transform(const Instance& inst) {
  if (inst.params.kind != ProblemKind::kClosestPair) {
    throw ParameterError("pad_transform needs a CP instance");
  }
  PaddedInstance padded;
  padded.origin = inst.params;
  padded.xp.reserve(inst.x.size());
  padded.yp.reserve(inst.y.size());
  for (const auto& u : inst.x) padded.xp.push_back(concat(u, complement(u)));
  for (const auto& v : inst.y) padded.yp.push_back(concat(complement(v), v));
  return padded;
}

CpThresholds distance_threshold(std::size_t n, std::size_t d) {
  if (n < 2) throw ParameterError("distance threshold needs n >= 2");
  CpThresholds out;
  bool got_star = false, got_delta2 = false;
  for (std::size_t t = 0; t <= d && !(got_star && got_delta2); ++t) {
    const TailValue tail = binomial_tail(d, t);
    if (!got_star && tail_at_least_inverse_root(tail, n, 2)) {
      out.t_star = t;
      got_star = true;
    }
    if (!got_delta2 && tail_at_least_inverse_root(tail, n, 100)) {
      out.t_delta2 = t;
      got_delta2 = true;
    }
  }
  const double dd = static_cast<double>(d);
  out.delta = (dd / 2.0 - static_cast<double>(out.t_star)) / dd;
  out.delta2 = (dd / 2.0 - static_cast<double>(out.t_delta2)) / dd;
  return out;
}

namespace {

struct Candidate {
  std::uint32_t group;
  std::uint32_t column;
  std::uint32_t first_t;  // smallest t whose threshold the cell meets
};

struct Witness {
  std::size_t x;
  std::size_t j;

  bool operator<(const Witness& other) const {
    return x != other.x ? x < other.x : j < other.j;
  }
};

/// One scoring pass; buckets candidate cells by the first t that flags them.
std::vector<std::vector<Candidate>> scan_candidates(
    const detail::PackedRows& xp, const Grouping& grouping,
    const detail::PackedRows& yp, const ScorePlan& plan,
    std::size_t padded_dimension, const std::vector<BigInt>& thresholds,
    const EvalOptions& options) {
  const std::size_t tiles = detail::scan_tile_count(
      grouping.count(), yp.count, options.evaluator);
  std::vector<std::vector<Candidate>> slots(tiles);

  BigInt lowest = thresholds.front();
  for (const auto& th : thresholds) lowest = min(lowest, th);

  detail::scan_scores(
      xp, grouping, yp, plan, padded_dimension, options,
      [&](std::size_t tile, detail::TileRange r, const auto* cells) {
        using V = std::remove_cv_t<std::remove_pointer_t<decltype(cells)>>;
        std::vector<V> bounds(thresholds.size());
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
          bounds[t] = detail::to_value<V>(thresholds[t]);
        }
        const V floor = detail::to_value<V>(lowest);
        auto& hits = slots[tile];
        const std::size_t tile_cols = r.j1 - r.j0;
        for (std::size_t g = r.g0; g < r.g1; ++g) {
          const V* row = cells + (g - r.g0) * tile_cols;
          for (std::size_t j = r.j0; j < r.j1; ++j) {
            const V& value = row[j - r.j0];
            if (value < floor) continue;
            for (std::size_t t = 0; t < bounds.size(); ++t) {
              if (value >= bounds[t]) {
                hits.push_back({static_cast<std::uint32_t>(g),
                                static_cast<std::uint32_t>(j),
                                static_cast<std::uint32_t>(t)});
                break;
              }
            }
          }
        }
      });

  std::vector<std::vector<Candidate>> buckets(thresholds.size());
  for (const auto& slot : slots) {
    for (const Candidate& c : slot) buckets[c.first_t].push_back(c);
  }
  return buckets;
}

}  // namespace

SolveReport solve_cp(const Instance& inst, const SolverConfig& config) {
  inst.params.validate();
  if (inst.params.kind != ProblemKind::kClosestPair) {
    throw ParameterError("solve_cp needs a CP instance");
  }

  const auto total_start = Clock::now();
  const std::size_t n = inst.params.n;
  const std::size_t d = inst.params.d;

  SolveReport report;
  report.regime_used = Regime::kCritical;
  report.strict = config.strict;
  report.evaluator = config.evaluator;

  if (n < 2) {
    // No distance threshold is defined; answer the single pair directly.
    const auto answer = brute_force_cp(inst, config.threads);
    report.found = FoundPair{answer.i, answer.j, answer.distance,
                             inst.x[answer.i], inst.y[answer.j]};
    report.fallback_used = true;
    report.threads = detail::resolve_threads(config.threads);
    report.total_ms = ms_since(total_start);
    return report;
  }

  const auto resolved = solver_detail::resolve(inst, config, kDefaultScaleCp);
  if ((resolved.scale * static_cast<std::int64_t>(d)) % 2 != 0) {
    throw ParameterError("closest pair scale must make scale*d even");
  }
  const ScorePlan plan = make_plan(BigInt(static_cast<std::uint64_t>(d)),
                                   BigInt(2), resolved.degree, resolved.scale);
  report.degree = resolved.degree;
  report.group_size = resolved.group_size;
  report.scale = resolved.scale;
  report.threads = resolved.threads;
  report.plan = PlanSummary{plan.degree, plan.center, plan.scale,
                            monomial_budget(plan.degree, 2 * d).subset_count};

  const CpThresholds limits = distance_threshold(n, d);

  // Thresholds (scale*(d/2 - t))^q for t = 0..t_star; a group holding a pair
  // at distance t always scores at least thresholds[t].
  std::vector<BigInt> thresholds(limits.t_star + 1);
  const std::int64_t half = resolved.scale * static_cast<std::int64_t>(d) / 2;
  for (std::size_t t = 0; t <= limits.t_star; ++t) {
    thresholds[t] = pow_int(
        BigInt(half - resolved.scale * static_cast<std::int64_t>(t)),
        plan.degree);
  }

  const PaddedInstance padded = pad_transform(inst);
  const Grouping grouping = Grouping::contiguous(n, resolved.group_size);
  const auto xp = detail::PackedRows::pack(padded.xp);
  const auto yp = detail::PackedRows::pack(padded.yp);
  const auto xs = detail::PackedRows::pack(inst.x);
  const auto ys = detail::PackedRows::pack(inst.y);

  EvalOptions options;
  options.evaluator = config.evaluator;
  options.threads = resolved.threads;
  options.max_subsets = config.max_subsets;

  const auto eval_start = Clock::now();
  const auto buckets = scan_candidates(xp, grouping, yp, plan, 2 * d,
                                       thresholds, options);
  report.eval_ms = ms_since(eval_start);
  report.score_evaluations = 1;
  report.groups = grouping.count();
  report.total_cells = static_cast<std::uint64_t>(grouping.count()) * n;

  // Walk candidate distances upward. Each activated cell is brute forced
  // once: its minimum distance and first witness are recorded, and the loop
  // stops at the first t some active cell attains. Any pair at distance t
  // forces its cell's score past thresholds[t], so no pair can be missed.
  const auto fallback_start = Clock::now();
  std::vector<std::optional<Witness>> best_at(d + 1);
  for (std::size_t t = 0; t <= limits.t_star && !report.found; ++t) {
    for (const Candidate& cell : buckets[t]) {
      ++report.n_failing_pairs;
      const auto [begin, end] = grouping.ranges[cell.group];
      const std::uint64_t* yrow = ys.row(cell.column);
      std::size_t cell_min = d + 1;
      std::size_t cell_x = begin;
      for (std::size_t x = begin; x < end; ++x) {
        const std::uint64_t* xrow = xs.row(x);
        std::size_t dist = 0;
        for (std::size_t w = 0; w < xs.words; ++w) {
          dist += static_cast<std::size_t>(std::popcount(xrow[w] ^ yrow[w]));
        }
        if (dist < cell_min) {
          cell_min = dist;
          cell_x = x;
        }
      }
      if (cell_min <= d) {
        Witness candidate{cell_x, cell.column};
        auto& slot = best_at[cell_min];
        if (!slot || candidate < *slot) slot = candidate;
      }
    }
    if (best_at[t]) {
      report.found =
          FoundPair{best_at[t]->x, best_at[t]->j, t, inst.x[best_at[t]->x],
                    inst.y[best_at[t]->j]};
    }
  }

  if (!report.found) {
    // No candidate pair within t_star: certify the answer by full scan.
    report.fallback_used = true;
    const auto answer = brute_force_cp(inst, resolved.threads);
    report.found = FoundPair{answer.i, answer.j, answer.distance,
                             inst.x[answer.i], inst.y[answer.j]};
  }
  report.fallback_ms = ms_since(fallback_start);
  report.total_ms = ms_since(total_start);
  return report;
}

}  // namespace ovcp
