#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ovcp/instance.hpp"
#include "ovcp/solver_types.hpp"

namespace ovcp {

/// Concentration events for one sampled (group, y) cell:
///   E1: |y|_1 within p*d +- 0.1 c^(1/4) log2(n);
///   E2: every <x, y> in the group within the central window (mu +- 0.2
///       log2(n) for OV; [t_delta2, d - t_delta2] for CP);
///   E3: per-value counts n_alpha obey log2(n) * (1 + s * n^(-eps*alpha^2))
///       over the checked alpha band, alpha = (v - mu) / log2(n).
struct EventReport {
  std::size_t group_index = 0;
  std::size_t y_index = 0;
  bool e1_holds = true;
  bool e2_holds = true;
  bool e3_holds = true;
  std::map<std::int64_t, std::size_t> n_alpha;  // inner-product value -> count
  double epsilon = 0.0;
  std::vector<double> bound_violations;  // alpha values where the E3 bound failed
};

struct DiagnosticsConfig {
  unsigned degree = 2;
  std::size_t group_size = 1;
  std::size_t samples = 100;
  std::optional<double> epsilon;  // default 1/10000 for OV, 1/2 for CP
  std::int64_t scale = 0;         // 0 -> kind default
  unsigned threads = 0;
};

std::vector<EventReport> measure_events(const Instance& inst,
                                        const DiagnosticsConfig& config);

/// Aggregate view plus the reference bounds the frequencies are compared to.
struct EventSummary {
  std::size_t samples = 0;
  std::size_t e1_violations = 0;
  std::size_t e2_violations = 0;
  std::size_t e3_violations = 0;
  double freq_not_e1 = 0.0;
  double freq_not_e2 = 0.0;
  double freq_not_e3 = 0.0;
  double chernoff_e1 = 0.0;  // 2 exp(-delta^2 mu / 3) at the E1 parameters
  double bound_e2 = 0.0;     // s * n^(-0.01)
};

EventSummary summarize_events(const Instance& inst,
                              const DiagnosticsConfig& config,
                              const std::vector<EventReport>& reports);

/// Pr[|X - mu| >= delta * mu] <= 2 exp(-delta^2 mu / 3).
double chernoff_bound(double delta, double mu);

struct FailingPairRate {
  std::uint64_t failing = 0;
  std::uint64_t total = 0;

  double value() const {
    return total == 0 ? 0.0
                      : static_cast<double>(failing) / static_cast<double>(total);
  }
};

/// Fraction of (group, y) cells with A >= M^q, from one full score pass.
FailingPairRate failing_pair_rate(const Instance& inst,
                                  const DiagnosticsConfig& config);

}  // namespace ovcp
