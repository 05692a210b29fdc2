#pragma once

#include <vector>

#include "phmarket/market.hpp"
#include "phmarket/solution.hpp"

namespace phmarket {

/// Per-type threshold prices T_k = eps + beta_k (B + mu_k - Q_k -
/// 2 sqrt(2) sigma_k). Type k starts accepting once the posted price
/// clears T_k.
struct TypeThresholds {
    std::vector<double> t;
};

/// Thresholds for an ordered market; rejects inputs whose band terms are
/// not nondecreasing, naming the offending pair.
TypeThresholds type_thresholds(const MarketParams& params);

/// Probability that at least one hotspot of any type accepts price p
/// (superposition of the per-type thinned processes). Reduces to
/// success_prob_hom when K = 1.
double success_prob_het(double p, const MarketParams& params);

double expected_cost_het(double p, const MarketParams& params);

/// Price minimizing the expected cost when only the first k types are in
/// play: bisection on the stationarity condition when every such type
/// keeps mean usage within quota, otherwise grid search. Result clamped
/// to [reservation, roaming fee].
double segment_optimum(std::size_t k, const MarketParams& params,
                       const numerics::ToleranceConfig& tol = {});

/// Case analysis over the threshold ladder, cross-checked against every
/// segment optimum; disagreements with the case candidate are surfaced in
/// the diagnostics rather than silently returned.
PricingSolution optimal_price_het(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol = {});

} // namespace phmarket
