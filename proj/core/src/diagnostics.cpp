#include "ovcp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ovcp/cp_solver.hpp"
#include "ovcp/detail/packed.hpp"
#include "ovcp/detail/solver_common.hpp"
#include "ovcp/errors.hpp"
#include "ovcp/rng.hpp"

namespace ovcp {

double chernoff_bound(double delta, double mu) {
  return 2.0 * std::exp(-delta * delta * mu / 3.0);
}

namespace {

struct EventWindows {
  double e1_low, e1_high;    // bounds on |y|_1
  double e2_low, e2_high;    // bounds on the inner-product value v
  double e3_band_low, e3_band_high;  // |v - mu| band checked by E3
  double mu;
  double log_n;
  double epsilon;
};

EventWindows make_windows(const InstanceParams& params, double epsilon_override,
                          bool has_epsilon) {
  const double n = static_cast<double>(params.n);
  const double d = static_cast<double>(params.d);
  const double log_n = std::log2(n);
  const double c = d / log_n;
  const double c_quarter = std::pow(c, 0.25);

  EventWindows w{};
  w.log_n = log_n;
  if (params.kind == ProblemKind::kOrthogonalVectors) {
    w.mu = static_cast<double>(static_cast<long double>(params.p) *
                               static_cast<long double>(params.p) * d);
    w.epsilon = has_epsilon ? epsilon_override : 1.0 / 10000.0;
    const double slack = 0.2 * log_n;
    w.e2_low = w.mu - slack;
    w.e2_high = w.mu + slack;
    // The proof checks the band 1/c^(1/4) <= |alpha| <= 0.2; empty at small c.
    w.e3_band_low = log_n / c_quarter;
    w.e3_band_high = 0.2 * log_n;
  } else {
    w.mu = d / 2.0;
    w.epsilon = has_epsilon ? epsilon_override : 0.5;
    const CpThresholds limits = distance_threshold(params.n, params.d);
    w.e2_low = static_cast<double>(limits.t_delta2);
    w.e2_high = d - static_cast<double>(limits.t_delta2);
    w.e3_band_low = 0.0;
    w.e3_band_high = w.mu - static_cast<double>(limits.t_delta2);
  }
  const double e1_slack = 0.1 * c_quarter * log_n;
  const double e1_mu = params.p * d;
  w.e1_low = e1_mu - e1_slack;
  w.e1_high = e1_mu + e1_slack;
  return w;
}

}  // namespace

std::vector<EventReport> measure_events(const Instance& inst,
                                        const DiagnosticsConfig& config) {
  inst.params.validate();
  if (config.samples == 0) throw ParameterError("samples must be positive");
  if (inst.params.n < 2) throw ParameterError("event diagnostics need n >= 2");
  const std::size_t group_size = std::min(
      std::max<std::size_t>(1, config.group_size), inst.params.n);

  const bool is_cp = inst.params.kind == ProblemKind::kClosestPair;
  const EventWindows windows =
      make_windows(inst.params, config.epsilon.value_or(0.0),
                   config.epsilon.has_value());

  const Grouping grouping = Grouping::contiguous(inst.params.n, group_size);
  const auto xs = detail::PackedRows::pack(inst.x);
  const auto ys = detail::PackedRows::pack(inst.y);

  std::vector<EventReport> reports;
  reports.reserve(config.samples);
  for (std::size_t k = 0; k < config.samples; ++k) {
    const std::size_t g = static_cast<std::size_t>(
        rng::draw(inst.params.seed, rng::kEventSample, k, 0) % grouping.count());
    const std::size_t j = static_cast<std::size_t>(
        rng::draw(inst.params.seed, rng::kEventSample, k, 1) % inst.params.n);

    EventReport report;
    report.group_index = g;
    report.y_index = j;
    report.epsilon = windows.epsilon;

    const double y_ones = static_cast<double>(inst.y[j].popcount());
    report.e1_holds = y_ones >= windows.e1_low && y_ones <= windows.e1_high;

    const auto [begin, end] = grouping.ranges[g];
    const std::uint64_t* yrow = ys.row(j);
    for (std::size_t x = begin; x < end; ++x) {
      const std::uint64_t* xrow = xs.row(x);
      std::size_t v = 0;
      if (is_cp) {
        for (std::size_t w = 0; w < xs.words; ++w) {
          v += static_cast<std::size_t>(std::popcount(xrow[w] ^ yrow[w]));
        }
      } else {
        v = detail::and_popcount(xrow, yrow, xs.words);
      }
      ++report.n_alpha[static_cast<std::int64_t>(v)];
      const double value = static_cast<double>(v);
      if (value < windows.e2_low || value > windows.e2_high) {
        report.e2_holds = false;
      }
    }

    for (const auto& [v, count] : report.n_alpha) {
      const double offset =
          std::abs(static_cast<double>(v) - windows.mu);
      if (offset < windows.e3_band_low || offset > windows.e3_band_high) {
        continue;
      }
      const double alpha = (static_cast<double>(v) - windows.mu) / windows.log_n;
      const double bound =
          windows.log_n *
          (1.0 + static_cast<double>(group_size) *
                     std::pow(static_cast<double>(inst.params.n),
                              -windows.epsilon * alpha * alpha));
      if (static_cast<double>(count) > bound) {
        report.e3_holds = false;
        report.bound_violations.push_back(alpha);
      }
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

EventSummary summarize_events(const Instance& inst,
                              const DiagnosticsConfig& config,
                              const std::vector<EventReport>& reports) {
  EventSummary summary;
  summary.samples = reports.size();
  for (const auto& r : reports) {
    summary.e1_violations += r.e1_holds ? 0 : 1;
    summary.e2_violations += r.e2_holds ? 0 : 1;
    summary.e3_violations += r.e3_holds ? 0 : 1;
  }
  if (!reports.empty()) {
    const double k = static_cast<double>(reports.size());
    summary.freq_not_e1 = static_cast<double>(summary.e1_violations) / k;
    summary.freq_not_e2 = static_cast<double>(summary.e2_violations) / k;
    summary.freq_not_e3 = static_cast<double>(summary.e3_violations) / k;
  }

  const double n = static_cast<double>(inst.params.n);
  const double d = static_cast<double>(inst.params.d);
  const double log_n = std::log2(n);
  const double c = d / log_n;
  const double mu = inst.params.p * d;
  const double delta = 0.1 * std::pow(c, 0.25) * log_n / mu;
  summary.chernoff_e1 = chernoff_bound(delta, mu);
  const std::size_t s =
      std::min(std::max<std::size_t>(1, config.group_size), inst.params.n);
  summary.bound_e2 = static_cast<double>(s) * std::pow(n, -0.01);
  return summary;
}

FailingPairRate failing_pair_rate(const Instance& inst,
                                  const DiagnosticsConfig& config) {
  inst.params.validate();
  const std::size_t n = inst.params.n;
  const std::size_t group_size =
      std::min(std::max<std::size_t>(1, config.group_size), n);
  const Grouping grouping = Grouping::contiguous(n, group_size);

  EvalOptions options;
  options.threads = config.threads;

  ScorePlan plan;
  detail::PackedRows px, py;
  std::size_t dimension = inst.params.d;
  if (inst.params.kind == ProblemKind::kOrthogonalVectors) {
    plan = make_plan_ov(inst.params.p, inst.params.d, config.degree,
                        config.scale == 0 ? kDefaultScaleOv : config.scale);
    px = detail::PackedRows::pack(inst.x);
    py = detail::PackedRows::pack(inst.y);
  } else {
    if (config.scale != 0 && config.scale != kDefaultScaleCp) {
      throw ParameterError("closest pair diagnostics use scale 2");
    }
    plan = make_plan_cp(inst.params.d, config.degree);
    const PaddedInstance padded = pad_transform(inst);
    px = detail::PackedRows::pack(padded.xp);
    py = detail::PackedRows::pack(padded.yp);
    dimension = 2 * inst.params.d;
  }

  const auto flagged = solver_detail::scan_flagged(
      px, grouping, py, plan, dimension, plan.center_power(), options);

  FailingPairRate rate;
  rate.failing = flagged.count;
  rate.total = static_cast<std::uint64_t>(grouping.count()) * n;
  return rate;
}

}  // namespace ovcp
