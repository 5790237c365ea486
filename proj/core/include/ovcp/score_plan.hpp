#pragma once

#include <cstdint>
#include <vector>

#include "ovcp/exact.hpp"

namespace ovcp {

inline constexpr std::int64_t kDefaultScaleOv = 1000;
inline constexpr std::int64_t kDefaultScaleCp = 2;

/// Integer score polynomial Q(z) = (scale*z - center)^q, together with the
/// subset weights that express it multilinearly over Boolean inputs:
///
///   (scale*<x,y> - center)^q = sum over S subset of [d], |S| <= q, of
///                              weights[|S|] * x_S * y_S,
///
/// where x_S is the product of the coordinates of x indexed by S. Only
/// "diagonal" monomials x_S * y_S occur, because <x,y> couples coordinate k
/// of x exclusively with coordinate k of y.
struct ScorePlan {
  unsigned degree = 2;          // q; even, so Q(z) >= 0 everywhere
  std::int64_t center = 0;      // M = round(scale * mu), mu the expected inner product
  std::int64_t scale = 1;       // D
  std::vector<BigInt> weights;  // w_0 .. w_q

  /// M^q: the score any orthogonal pair contributes, hence the detection
  /// threshold.
  BigInt center_power() const;
};

/// Number of maps from a t-element set onto an m-element set,
/// m! * Stirling2(t, m). Zero when m > t; one when t = m = 0.
BigInt surjection_count(unsigned t, unsigned m);

/// w_m = sum_{t=m}^{q} C(q,t) * scale^t * (-center)^{q-t} * surjection_count(t, m).
std::vector<BigInt> monomial_weights(unsigned q, std::int64_t center,
                                     std::int64_t scale);

/// Builds the plan for target center mu = mu_num / mu_den. The integer center
/// is M = round(scale * mu) with half-away-from-zero rounding. Throws
/// ParameterError unless q is even and >= 2.
ScorePlan make_plan(const BigInt& mu_num, const BigInt& mu_den, unsigned q,
                    std::int64_t scale);

/// mu = p^2 * d, with p decomposed exactly into a dyadic rational.
ScorePlan make_plan_ov(double p, std::size_t d, unsigned q,
                       std::int64_t scale = kDefaultScaleOv);

/// mu = d / 2 with scale 2, so the center M = d is exact.
ScorePlan make_plan_cp(std::size_t d, unsigned q);

/// (scale * z - center)^q, exactly.
BigInt evaluate_q(const ScorePlan& plan, std::int64_t z);

struct MonomialBudget {
  unsigned degree = 0;
  std::size_t dimension = 0;
  BigInt subset_count;  // sum_{m<=q} C(d, m): diagonal monomials materialized
  BigInt paper_bound;   // sum_{l<=q} C(2d, l): general multilinear bound
};

MonomialBudget monomial_budget(unsigned q, std::size_t d);

}  // namespace ovcp
