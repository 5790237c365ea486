#include "ovcp/ov_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <type_traits>
#include <vector>

#include "ovcp/detail/packed.hpp"
#include "ovcp/detail/score_engine.hpp"
#include "ovcp/detail/solver_common.hpp"
#include "ovcp/errors.hpp"
#include "ovcp/rng.hpp"

namespace ovcp {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kSubsample:
      return "subsample";
    case Regime::kCritical:
      return "critical";
    case Regime::kTrivialNo:
      return "trivial-no";
  }
  return "?";
}

Regime regime(std::size_t n, std::size_t d, double p) {
  if (n < 2) throw ParameterError("regime dispatch needs n >= 2");
  const double c = static_cast<double>(d) / std::log2(static_cast<double>(n));
  const double low = std::sqrt(1.0 / c);
  if (p < low) return Regime::kSubsample;
  if (p > 3.0 * low) return Regime::kTrivialNo;
  return Regime::kCritical;
}

std::pair<unsigned, std::size_t> default_params(std::size_t n, std::size_t d) {
  if (n < 2) throw ParameterError("default parameters need n >= 2");
  const double log_n = std::log2(static_cast<double>(n));
  const double c = static_cast<double>(d) / log_n;
  if (c <= 1.0) {
    throw ParameterError("default parameters need c = d/log2(n) > 1");
  }
  const double q_formula = log_n / (50.0 * std::log2(c));
  const unsigned q = 2u * static_cast<unsigned>(std::max<long long>(
                              1, std::llround(q_formula / 2.0)));
  std::size_t s = 1;
  if (c > 2.0) {
    const double exponent = std::log2(std::log2(c)) / std::log2(c);
    s = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(std::pow(static_cast<double>(n), exponent))));
  }
  s = std::min(s, n);
  return {q, s};
}

namespace solver_detail {

ResolvedConfig resolve(const Instance& inst, const SolverConfig& config,
                       std::int64_t default_scale) {
  ResolvedConfig r;
  if (config.degree && config.group_size) {
    r.degree = *config.degree;
    r.group_size = *config.group_size;
  } else {
    const auto [q, s] = default_params(inst.params.n, inst.params.d);
    r.degree = config.degree.value_or(q);
    r.group_size = config.group_size.value_or(s);
  }
  if (r.group_size == 0) throw ParameterError("group size must be positive");
  r.group_size = std::min(r.group_size, inst.params.n);
  r.scale = config.scale == 0 ? default_scale : config.scale;
  r.threads = detail::resolve_threads(config.threads);
  return r;
}

FlaggedCells scan_flagged(const detail::PackedRows& xs, const Grouping& grouping,
                          const detail::PackedRows& ys, const ScorePlan& plan,
                          std::size_t dimension, const BigInt& threshold,
                          const EvalOptions& options) {
  const std::size_t rows = grouping.count();
  const std::size_t cols = ys.count;
  const std::size_t tiles =
      detail::scan_tile_count(rows, cols, options.evaluator);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> slots(tiles);
  detail::scan_scores(
      xs, grouping, ys, plan, dimension, options,
      [&](std::size_t tile, detail::TileRange r, const auto* cells) {
        using V = std::remove_cv_t<std::remove_pointer_t<decltype(cells)>>;
        const V bound = detail::to_value<V>(threshold);
        auto& hits = slots[tile];
        const std::size_t tile_cols = r.j1 - r.j0;
        for (std::size_t g = r.g0; g < r.g1; ++g) {
          const V* row = cells + (g - r.g0) * tile_cols;
          for (std::size_t j = r.j0; j < r.j1; ++j) {
            if (row[j - r.j0] >= bound) {
              hits.emplace_back(static_cast<std::uint32_t>(g),
                                static_cast<std::uint32_t>(j));
            }
          }
        }
      });

  FlaggedCells result;
  result.per_group.resize(rows);
  for (const auto& slot : slots) {
    for (const auto& [g, j] : slot) {
      result.per_group[g].push_back(j);
      ++result.count;
    }
  }
  return result;
}

}  // namespace solver_detail

namespace {

/// Full grouped-scoring pipeline; the verdict is exact. Fills everything in
/// `report` except regime_used and timing totals.
void run_critical_ov(const Instance& inst, const ScorePlan& plan,
                     const solver_detail::ResolvedConfig& resolved,
                     const SolverConfig& config, SolveReport& report) {
  const std::size_t n = inst.params.n;
  const Grouping grouping = Grouping::contiguous(n, resolved.group_size);
  const auto xs = detail::PackedRows::pack(inst.x);
  const auto ys = detail::PackedRows::pack(inst.y);

  EvalOptions options;
  options.evaluator = config.evaluator;
  options.threads = resolved.threads;
  options.max_subsets = config.max_subsets;

  const auto eval_start = Clock::now();
  const BigInt threshold = plan.center_power();
  const auto flagged = solver_detail::scan_flagged(
      xs, grouping, ys, plan, inst.params.d, threshold, options);
  report.eval_ms += ms_since(eval_start);
  report.score_evaluations += 1;

  report.groups = grouping.count();
  report.total_cells = static_cast<std::uint64_t>(grouping.count()) * n;
  report.n_failing_pairs = flagged.count;

  // Brute force flagged cells in (group, within-group, j) lexicographic
  // order; the first orthogonal hit is the answer.
  const auto fallback_start = Clock::now();
  for (std::size_t g = 0; g < grouping.count() && !report.found; ++g) {
    const auto& columns = flagged.per_group[g];
    if (columns.empty()) continue;
    const auto [begin, end] = grouping.ranges[g];
    for (std::size_t x = begin; x < end && !report.found; ++x) {
      const std::uint64_t* xrow = xs.row(x);
      for (std::uint32_t j : columns) {
        if (detail::and_popcount(xrow, ys.row(j), xs.words) == 0) {
          report.found = FoundPair{x, j, 0, inst.x[x], inst.y[j]};
          break;
        }
      }
    }
  }
  report.fallback_ms += ms_since(fallback_start);
}

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::uint64_t seed,
                                        std::uint64_t stream) {
  std::vector<std::size_t> indices(n);
  std::iota(indices.begin(), indices.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t pick =
        i + static_cast<std::size_t>(rng::draw(seed, stream, i, 0) % (n - i));
    std::swap(indices[i], indices[pick]);
  }
  indices.resize(k);
  std::sort(indices.begin(), indices.end());
  return indices;
}

}  // namespace

SolveReport solve_ov(const Instance& inst, const SolverConfig& config) {
  inst.params.validate();
  if (inst.params.kind != ProblemKind::kOrthogonalVectors) {
    throw ParameterError("solve_ov needs an OV instance");
  }

  const auto total_start = Clock::now();
  const auto resolved = solver_detail::resolve(inst, config, kDefaultScaleOv);
  const ScorePlan plan =
      make_plan_ov(inst.params.p, inst.params.d, resolved.degree, resolved.scale);

  SolveReport report;
  report.degree = resolved.degree;
  report.group_size = resolved.group_size;
  report.scale = resolved.scale;
  report.evaluator = config.evaluator;
  report.strict = config.strict;
  report.threads = resolved.threads;
  report.plan = PlanSummary{
      plan.degree, plan.center, plan.scale,
      monomial_budget(plan.degree, inst.params.d).subset_count};

  report.regime_used =
      inst.params.n >= 2
          ? regime(inst.params.n, inst.params.d, inst.params.p)
          : Regime::kCritical;

  switch (report.regime_used) {
    case Regime::kTrivialNo:
      if (!config.strict) break;  // report no pair without scanning
      run_critical_ov(inst, plan, resolved, config, report);
      break;
    case Regime::kSubsample: {
      const std::size_t n = inst.params.n;
      const auto k = std::min<std::size_t>(
          n, static_cast<std::size_t>(
                 std::ceil(std::pow(static_cast<double>(n), 0.55))));
      const auto xi =
          sample_indices(n, k, inst.params.seed, rng::kSubsampleX);
      const auto yi =
          sample_indices(n, k, inst.params.seed, rng::kSubsampleY);
      const auto fallback_start = Clock::now();
      for (std::size_t a = 0; a < xi.size() && !report.found; ++a) {
        for (std::size_t b = 0; b < yi.size(); ++b) {
          if (inner_product(inst.x[xi[a]], inst.y[yi[b]]) == 0) {
            report.found = FoundPair{xi[a], yi[b], 0, inst.x[xi[a]],
                                     inst.y[yi[b]]};
            break;
          }
        }
      }
      report.fallback_ms += ms_since(fallback_start);
      if (!report.found) {
        // The sample missed: run the exact pipeline on the full instance.
        report.fallback_used = true;
        run_critical_ov(inst, plan, resolved, config, report);
      }
      break;
    }
    case Regime::kCritical:
      run_critical_ov(inst, plan, resolved, config, report);
      break;
  }

  report.total_ms = ms_since(total_start);
  return report;
}

}  // namespace ovcp
