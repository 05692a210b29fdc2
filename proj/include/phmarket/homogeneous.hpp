#pragma once

#include "phmarket/market.hpp"
#include "phmarket/sharing_cost.hpp"
#include "phmarket/solution.hpp"

namespace phmarket {

/// Probability that a uniform posted price p attracts at least one
/// hotspot: 1 - exp(-lambda pi d^2 * accept_prob(p)). Single-type markets
/// only.
double success_prob_hom(double p, const MarketParams& params);

/// Expected traveler outlay at posted price p: pays p on success, the
/// roaming fee otherwise.
double expected_cost_hom(double p, const MarketParams& params);

/// First derivative of the transition-band expected cost. Defined on the
/// band [p_lo, p_hi] only; throws std::domain_error outside it.
double ec_hom_derivative(double p, const MarketParams& params);

/// Optimal posted price for i.i.d. hotspots: bisection on the first-order
/// condition when the band objective is convex (B + mu <= Q), otherwise a
/// grid search with local refinement. The price is clamped to
/// [reservation, roaming fee].
PricingSolution optimal_price_hom(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol = {});

} // namespace phmarket
