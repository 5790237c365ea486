#include "ovcp/oracle.hpp"

#include <atomic>
#include <algorithm>
#include <vector>

#include "ovcp/detail/packed.hpp"
#include "ovcp/detail/parallel.hpp"
#include "ovcp/errors.hpp"

namespace ovcp {

double TailValue::to_double() const {
  return numerator.convert_to<double>() / denominator.convert_to<double>();
}

TailValue binomial_tail(std::size_t d, std::size_t t) {
  t = std::min(t, d);
  TailValue tail;
  tail.numerator = 0;
  BigInt coefficient = 1;  // C(d, 0)
  for (std::size_t k = 0; k <= t; ++k) {
    tail.numerator += coefficient;
    coefficient *= (d - k);
    coefficient /= (k + 1);
  }
  tail.denominator = BigInt(1) << d;
  return tail;
}

bool tail_at_least_inverse_root(const TailValue& tail, std::uint64_t n,
                                unsigned root) {
  return pow_int(tail.numerator, root) * n >= pow_int(tail.denominator, root);
}

namespace {

constexpr std::size_t kRowChunk = 64;

/// Lexicographically first pair (i, j) with predicate(popcount(x_i AND y_j))
/// true, using a shared upper bound on i to prune chunks once a hit exists.
template <class Pred>
std::optional<std::pair<std::size_t, std::size_t>> first_pair_scan(
    const detail::PackedRows& xs, const detail::PackedRows& ys,
    unsigned threads, Pred&& predicate) {
  const std::size_t n_rows = xs.count;
  const std::size_t chunks = (n_rows + kRowChunk - 1) / kRowChunk;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> best(chunks);
  std::atomic<std::size_t> row_bound{n_rows};

  detail::run_tasks(chunks, threads, [&](std::size_t chunk) {
    const std::size_t row_begin = chunk * kRowChunk;
    if (row_begin >= row_bound.load(std::memory_order_relaxed)) return;
    const std::size_t row_end = std::min(n_rows, row_begin + kRowChunk);
    for (std::size_t i = row_begin; i < row_end; ++i) {
      if (i >= row_bound.load(std::memory_order_relaxed)) return;
      const std::uint64_t* xrow = xs.row(i);
      for (std::size_t j = 0; j < ys.count; ++j) {
        if (predicate(detail::and_popcount(xrow, ys.row(j), xs.words))) {
          best[chunk] = {i, j};
          std::size_t seen = row_bound.load(std::memory_order_relaxed);
          while (seen > i &&
                 !row_bound.compare_exchange_weak(seen, i,
                                                  std::memory_order_relaxed)) {
          }
          return;
        }
      }
    }
  });

  for (const auto& hit : best) {
    if (hit) return hit;  // chunk order is row order, so the first hit is lex-first
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<std::size_t, std::size_t>> brute_force_ov(
    const Instance& inst, unsigned threads) {
  const auto xs = detail::PackedRows::pack(inst.x);
  const auto ys = detail::PackedRows::pack(inst.y);
  return first_pair_scan(xs, ys, threads,
                         [](std::size_t shared) { return shared == 0; });
}

CpAnswer brute_force_cp(const Instance& inst, unsigned threads) {
  if (inst.x.empty() || inst.y.empty()) {
    throw ParameterError("closest pair needs at least one vector per side");
  }
  const auto xs = detail::PackedRows::pack(inst.x);
  const auto ys = detail::PackedRows::pack(inst.y);
  const std::size_t n_rows = xs.count;
  const std::size_t chunks = (n_rows + kRowChunk - 1) / kRowChunk;

  struct ChunkBest {
    std::size_t distance;
    std::size_t i;
    std::size_t j;
  };
  std::vector<ChunkBest> best(
      chunks, ChunkBest{inst.params.d + 1, n_rows, ys.count});

  detail::run_tasks(chunks, threads, [&](std::size_t chunk) {
    const std::size_t row_begin = chunk * kRowChunk;
    const std::size_t row_end = std::min(n_rows, row_begin + kRowChunk);
    ChunkBest local = best[chunk];
    for (std::size_t i = row_begin; i < row_end; ++i) {
      const std::uint64_t* xrow = xs.row(i);
      for (std::size_t j = 0; j < ys.count; ++j) {
        std::size_t dist = 0;
        const std::uint64_t* yrow = ys.row(j);
        for (std::size_t w = 0; w < xs.words; ++w) {
          dist += static_cast<std::size_t>(std::popcount(xrow[w] ^ yrow[w]));
        }
        if (dist < local.distance) {
          local = {dist, i, j};
          if (dist == 0) break;
        }
      }
      if (local.distance == 0) break;
    }
    best[chunk] = local;
  });

  ChunkBest overall = best[0];
  for (const auto& candidate : best) {
    if (candidate.distance < overall.distance) overall = candidate;
  }
  return CpAnswer{overall.i, overall.j, overall.distance};
}

}  // namespace ovcp
