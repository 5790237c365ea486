#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ovcp/detail/packed.hpp"
#include "ovcp/detail/parallel.hpp"
#include "ovcp/errors.hpp"
#include "ovcp/exact.hpp"
#include "ovcp/group_scores.hpp"
#include "ovcp/score_plan.hpp"

namespace ovcp::detail {

struct TileRange {
  std::size_t g0, g1;  // group rows [g0, g1)
  std::size_t j0, j1;  // y columns [j0, j1)
};

template <class V>
inline V to_value(const BigInt& b) {
  return b.template convert_to<V>();
}
template <>
inline BigInt to_value<BigInt>(const BigInt& b) {
  return b;
}

/// max |Q(z)| over integer z in [0, zmax].
inline BigInt max_abs_q(const ScorePlan& plan, std::size_t zmax) {
  BigInt at_zero = abs(BigInt(plan.center));
  BigInt at_top = abs(BigInt(plan.scale) * static_cast<std::int64_t>(zmax) -
                      plan.center);
  return pow_int(max(at_zero, at_top), plan.degree);
}

/// Conservative bound for the direct evaluator: |A| <= group_size * max|Q|.
inline BigInt direct_value_bound(const ScorePlan& plan, std::size_t zmax,
                                 std::size_t max_group) {
  return max_abs_q(plan, zmax) * static_cast<std::uint64_t>(max_group);
}

/// Conservative bound for any partial sum in the monomial evaluator:
/// group_size * sum_{m<=q} C(d, m) * |w_m|.
inline BigInt monomial_value_bound(const ScorePlan& plan, std::size_t d,
                                   std::size_t max_group) {
  BigInt sum = 0;
  for (unsigned m = 0; m < plan.weights.size(); ++m) {
    sum += binomial(d, m) * abs(plan.weights[m]);
  }
  return sum * static_cast<std::uint64_t>(max_group);
}

inline constexpr std::size_t kDirectGroupBlock = 16;
inline constexpr std::size_t kDirectColBlock = 2048;
inline constexpr std::size_t kMonomialColBlock = 256;

/// Number of tiles a scan will emit; lets consumers presize per-tile slots.
inline std::size_t scan_tile_count(std::size_t rows, std::size_t cols,
                                   EvaluatorKind evaluator) {
  if (rows == 0 || cols == 0) return 0;
  if (evaluator == EvaluatorKind::kDirect) {
    const std::size_t gblocks =
        (rows + kDirectGroupBlock - 1) / kDirectGroupBlock;
    const std::size_t jblocks = (cols + kDirectColBlock - 1) / kDirectColBlock;
    return gblocks * jblocks;
  }
  return (cols + kMonomialColBlock - 1) / kMonomialColBlock;
}

/// Direct popcount scan. Calls fn(tile_index, range, values) for every tile
/// of the (groups x ys) matrix; `values` is row-major over the tile. Tiles
/// are disjoint and tile indices are row-major, so writing per-tile results
/// into slots indexed by tile_index keeps output schedule-independent.
template <class V, class TileFn>
void direct_scan(const PackedRows& xs, const Grouping& grouping,
                 const PackedRows& ys, const ScorePlan& plan,
                 std::size_t dimension, unsigned threads, TileFn&& fn) {
  const std::size_t rows = grouping.count();
  const std::size_t cols = ys.count;
  if (rows == 0 || cols == 0) return;

  std::vector<V> table(dimension + 1);
  for (std::size_t z = 0; z <= dimension; ++z) {
    table[z] = to_value<V>(evaluate_q(plan, static_cast<std::int64_t>(z)));
  }

  const std::size_t words = ys.words;
  const std::size_t gblocks = (rows + kDirectGroupBlock - 1) / kDirectGroupBlock;
  const std::size_t jblocks = (cols + kDirectColBlock - 1) / kDirectColBlock;

  run_tasks(gblocks * jblocks, threads, [&](std::size_t tile) {
    const std::size_t gb = tile / jblocks;
    const std::size_t jb = tile % jblocks;
    TileRange r{gb * kDirectGroupBlock,
                std::min(rows, (gb + 1) * kDirectGroupBlock),
                jb * kDirectColBlock,
                std::min(cols, (jb + 1) * kDirectColBlock)};
    const std::size_t tile_cols = r.j1 - r.j0;
    std::vector<V> cells((r.g1 - r.g0) * tile_cols);
    for (std::size_t g = r.g0; g < r.g1; ++g) {
      const auto [begin, end] = grouping.ranges[g];
      V* out = cells.data() + (g - r.g0) * tile_cols;
      for (std::size_t j = r.j0; j < r.j1; ++j) {
        const std::uint64_t* yrow = ys.row(j);
        V acc{0};
        for (std::size_t x = begin; x < end; ++x) {
          acc += table[and_popcount(xs.row(x), yrow, words)];
        }
        out[j - r.j0] = std::move(acc);
      }
    }
    fn(tile, r, static_cast<const V*>(cells.data()));
  });
}

/// Appends to `out` the feature-column index of every subset of `support`
/// with size <= q. Columns are ordered by subset size, then colexicographic.
/// binom must hold C(i, m) for i <= d, m <= q.
class SubsetIndexer {
 public:
  SubsetIndexer(std::size_t d, unsigned q);

  std::size_t feature_count() const { return offsets_.back(); }

  void collect(const std::vector<std::uint32_t>& support,
               std::vector<std::uint64_t>& out) const;

  /// Subset size that a feature column index refers to.
  unsigned size_of_column(std::uint64_t column) const;

 private:
  std::size_t d_;
  unsigned q_;
  std::vector<std::uint64_t> offsets_;            // offsets_[m] = first column of size-m subsets
  std::vector<std::vector<std::uint64_t>> binom_;  // binom_[i][m] = C(i, m)
};

inline SubsetIndexer::SubsetIndexer(std::size_t d, unsigned q) : d_(d), q_(q) {
  binom_.assign(d + 1, std::vector<std::uint64_t>(q + 2, 0));
  for (std::size_t i = 0; i <= d; ++i) {
    binom_[i][0] = 1;
    for (unsigned m = 1; m <= q + 1; ++m) {
      binom_[i][m] = (i == 0) ? 0 : binom_[i - 1][m - 1] + binom_[i - 1][m];
    }
  }
  offsets_.assign(q + 2, 0);
  for (unsigned m = 0; m <= q; ++m) {
    offsets_[m + 1] = offsets_[m] + binom_[d][m];
  }
}

inline void SubsetIndexer::collect(const std::vector<std::uint32_t>& support,
                                   std::vector<std::uint64_t>& out) const {
  out.clear();
  out.push_back(0);  // the empty subset
  // Depth-first over combinations of `support`; rank accumulates the
  // colexicographic rank sum C(s_1, 1) + C(s_2, 2) + ...
  struct Frame {
    std::size_t next;
    unsigned depth;
    std::uint64_t rank;
  };
  std::vector<Frame> stack;
  for (std::size_t k = 0; k < support.size(); ++k) {
    stack.push_back({k, 1, binom_[support[k]][1]});
  }
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    out.push_back(offsets_[f.depth] + f.rank);
    if (f.depth == q_) continue;
    for (std::size_t k = f.next + 1; k < support.size(); ++k) {
      stack.push_back(
          {k, f.depth + 1, f.rank + binom_[support[k]][f.depth + 1]});
    }
  }
}

inline unsigned SubsetIndexer::size_of_column(std::uint64_t column) const {
  unsigned m = 0;
  while (offsets_[m + 1] <= column) ++m;
  return m;
}

inline std::vector<std::uint32_t> support_positions(const PackedRows& rows,
                                                    std::size_t r) {
  std::vector<std::uint32_t> out;
  const std::uint64_t* row = rows.row(r);
  for (std::size_t w = 0; w < rows.words; ++w) {
    std::uint64_t bits = row[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(
          w * 64 + static_cast<std::size_t>(std::countr_zero(bits))));
      bits &= bits - 1;
    }
  }
  return out;
}

/// Feature-map scan. Produces the same tiles as direct_scan (with all group
/// rows per tile) via exact integer feature accumulation.
template <class V, class TileFn>
void monomial_scan(const PackedRows& xs, const Grouping& grouping,
                   const PackedRows& ys, const ScorePlan& plan,
                   std::size_t dimension, const EvalOptions& options,
                   TileFn&& fn) {
  const std::size_t rows = grouping.count();
  const std::size_t cols = ys.count;
  if (rows == 0 || cols == 0) return;

  const MonomialBudget budget = monomial_budget(plan.degree, dimension);
  if (budget.subset_count > options.max_subsets) {
    throw CapacityError(
        "monomial evaluator over budget: degree " +
        std::to_string(budget.degree) + ", dimension " +
        std::to_string(budget.dimension) + " needs " +
        budget.subset_count.str() + " feature columns (paper bound " +
        budget.paper_bound.str() + "), budget is " +
        std::to_string(options.max_subsets));
  }

  const SubsetIndexer indexer(dimension, plan.degree);
  const std::size_t features = indexer.feature_count();

  std::vector<V> weight_by_size(plan.weights.size());
  for (std::size_t m = 0; m < plan.weights.size(); ++m) {
    weight_by_size[m] = to_value<V>(plan.weights[m]);
  }

  // Left features, feature-major: left[s * rows + i] = w_|S(s)| * count.
  std::vector<V> left(features * rows, V{0});
  {
    std::vector<std::uint64_t> columns;
    for (std::size_t g = 0; g < rows; ++g) {
      const auto [begin, end] = grouping.ranges[g];
      for (std::size_t x = begin; x < end; ++x) {
        indexer.collect(support_positions(xs, x), columns);
        for (std::uint64_t col : columns) {
          left[col * rows + g] += weight_by_size[indexer.size_of_column(col)];
        }
      }
    }
  }

  const std::size_t jblocks = (cols + kMonomialColBlock - 1) / kMonomialColBlock;
  run_tasks(jblocks, options.threads, [&](std::size_t tile) {
    TileRange r{0, rows, tile * kMonomialColBlock,
                std::min(cols, (tile + 1) * kMonomialColBlock)};
    const std::size_t tile_cols = r.j1 - r.j0;
    std::vector<V> cells(rows * tile_cols, V{0});
    std::vector<V> acc(rows);
    std::vector<std::uint64_t> columns;
    for (std::size_t j = r.j0; j < r.j1; ++j) {
      std::fill(acc.begin(), acc.end(), V{0});
      indexer.collect(support_positions(ys, j), columns);
      for (std::uint64_t col : columns) {
        const V* src = left.data() + col * rows;
        for (std::size_t g = 0; g < rows; ++g) acc[g] += src[g];
      }
      for (std::size_t g = 0; g < rows; ++g) {
        cells[g * tile_cols + (j - r.j0)] = acc[g];
      }
    }
    fn(tile, r, static_cast<const V*>(cells.data()));
  });
}

/// Evaluator- and width-dispatching scan. fn must accept both const Int128*
/// and const BigInt* tiles (use a generic lambda). The 128-bit fast path is
/// taken only when a conservative bound proves every intermediate fits, so
/// results are exact on either path.
template <class TileFn>
void scan_scores(const PackedRows& xs, const Grouping& grouping,
                 const PackedRows& ys, const ScorePlan& plan,
                 std::size_t dimension, const EvalOptions& options,
                 TileFn&& fn) {
  const std::size_t max_group = grouping.max_group_size();
  if (options.evaluator == EvaluatorKind::kDirect) {
    if (fits_int128(direct_value_bound(plan, dimension, max_group))) {
      direct_scan<Int128>(xs, grouping, ys, plan, dimension, options.threads, fn);
    } else {
      direct_scan<BigInt>(xs, grouping, ys, plan, dimension, options.threads, fn);
    }
  } else {
    if (fits_int128(monomial_value_bound(plan, dimension, max_group))) {
      monomial_scan<Int128>(xs, grouping, ys, plan, dimension, options, fn);
    } else {
      monomial_scan<BigInt>(xs, grouping, ys, plan, dimension, options, fn);
    }
  }
}

}  // namespace ovcp::detail
