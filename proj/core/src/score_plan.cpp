#include "ovcp/score_plan.hpp"

#include <cmath>

#include "ovcp/errors.hpp"

namespace ovcp {

BigInt ScorePlan::center_power() const { return pow_int(center, degree); }

BigInt surjection_count(unsigned t, unsigned m) {
  if (m > t) return 0;
  // Inclusion-exclusion: sum_{i=0}^{m} (-1)^i C(m,i) (m-i)^t.
  BigInt total = 0;
  for (unsigned i = 0; i <= m; ++i) {
    BigInt term = binomial(m, i) * pow_int(m - i, t);
    if (i & 1u) {
      total -= term;
    } else {
      total += term;
    }
  }
  return total;
}

std::vector<BigInt> monomial_weights(unsigned q, std::int64_t center,
                                     std::int64_t scale) {
  std::vector<BigInt> weights(q + 1);
  for (unsigned m = 0; m <= q; ++m) {
    BigInt w = 0;
    for (unsigned t = m; t <= q; ++t) {
      BigInt term = binomial(q, t) * pow_int(scale, t) *
                    pow_int(BigInt(-center), q - t) * surjection_count(t, m);
      w += term;
    }
    weights[m] = w;
  }
  return weights;
}

ScorePlan make_plan(const BigInt& mu_num, const BigInt& mu_den, unsigned q,
                    std::int64_t scale) {
  if (q < 2 || q % 2 != 0) {
    throw ParameterError("degree q must be even and >= 2, got " +
                         std::to_string(q));
  }
  if (mu_den <= 0) throw ParameterError("mu denominator must be positive");
  if (mu_num < 0) throw ParameterError("center mu must be nonnegative");
  if (scale <= 0) throw ParameterError("scale must be positive");

  // Half-away-from-zero rounding of scale * mu (nonnegative here).
  BigInt numerator = BigInt(scale) * mu_num;
  BigInt center_big = (2 * numerator + mu_den) / (2 * mu_den);

  ScorePlan plan;
  plan.degree = q;
  plan.center = center_big.convert_to<std::int64_t>();
  plan.scale = scale;
  plan.weights = monomial_weights(q, plan.center, plan.scale);
  return plan;
}

ScorePlan make_plan_ov(double p, std::size_t d, unsigned q,
                       std::int64_t scale) {
  if (!(p > 0.0) || !(p < 1.0)) {
    throw ParameterError("p must lie strictly inside (0,1)");
  }
  // Exact dyadic decomposition p = m53 * 2^(exp-53), m53 a 53-bit integer,
  // so mu = p^2 d = m53^2 d / 2^(106-2*exp) with no rounding before the
  // final center rounding.
  int exp = 0;
  const double mant = std::frexp(p, &exp);
  const auto m53 = static_cast<std::int64_t>(std::ldexp(mant, 53));
  const int den_bits = 106 - 2 * exp;
  BigInt mu_num = BigInt(m53) * m53 * static_cast<std::uint64_t>(d);
  BigInt mu_den = BigInt(1) << den_bits;
  return make_plan(mu_num, mu_den, q, scale);
}

ScorePlan make_plan_cp(std::size_t d, unsigned q) {
  return make_plan(BigInt(static_cast<std::uint64_t>(d)), BigInt(2), q,
                   kDefaultScaleCp);
}

BigInt evaluate_q(const ScorePlan& plan, std::int64_t z) {
  return pow_int(BigInt(plan.scale) * z - plan.center, plan.degree);
}

MonomialBudget monomial_budget(unsigned q, std::size_t d) {
  MonomialBudget budget;
  budget.degree = q;
  budget.dimension = d;
  budget.subset_count = 0;
  budget.paper_bound = 0;
  for (unsigned m = 0; m <= q; ++m) {
    budget.subset_count += binomial(d, m);
    budget.paper_bound += binomial(2 * d, m);
  }
  return budget;
}

}  // namespace ovcp
