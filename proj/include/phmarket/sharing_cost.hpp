#pragma once

#include "phmarket/market.hpp"

namespace phmarket {

/// Price band over which a hotspot's acceptance probability transitions
/// from ~0 to ~1: p_lo = eps + (beta(B+mu-Q-2*sqrt(2)*sigma))^+,
/// p_hi = eps + min(beta*B, beta(B+mu-Q+2*sqrt(2)*sigma)).
struct PriceThresholds {
    double p_lo;
    double p_hi;
};

/// Incremental overage charge a hotspot with realized monthly usage x
/// incurs by giving up demand_gb of quota. Piecewise linear, range
/// [0, beta*B].
double sharing_cost(double usage_gb, const TariffPlan& plan, double demand_gb);

/// CDF of the sharing cost at c in [0, beta*B]; has an atom at beta*B.
double cost_cdf(double c, const TariffPlan& plan, const UsageModel& usage,
                double demand_gb);

/// Probability that a hotspot accepts price p: 0 below the reservation
/// utility, the exact erfc transition on [eps, eps+beta*B], and 1 above.
double accept_prob(double p, const TariffPlan& plan, const UsageModel& usage,
                   double demand_gb, double reservation_usd);

/// The transition-band form of the acceptance probability without the
/// piecewise clamping; used by the first-order conditions.
double accept_prob_unclamped(double p, const TariffPlan& plan,
                             const UsageModel& usage, double demand_gb,
                             double reservation_usd);

/// d/dp of accept_prob_unclamped.
double accept_prob_density(double p, const TariffPlan& plan,
                           const UsageModel& usage, double demand_gb,
                           double reservation_usd);

PriceThresholds price_thresholds(const TariffPlan& plan, const UsageModel& usage,
                                 double demand_gb, double reservation_usd);

} // namespace phmarket
