#pragma once

#include "phmarket/market.hpp"

namespace phmarket {

/// Complete-information payment against exactly n hotspots: reservation
/// utility plus the expected minimum sharing cost (an order statistic),
/// eps + int_0^{beta B} (1 - Phi(c/beta + Q - B))^n dc. Strictly
/// decreasing in n.
double expected_price_given_n(int n, const TariffPlan& plan, const UsageModel& usage,
                              double demand_gb, double reservation_usd);

/// Social-optimum expected cost under complete information for a
/// single-type market; the lower bound every posted-price scheme is
/// measured against.
double benchmark_expected_cost(const MarketParams& params);

} // namespace phmarket
