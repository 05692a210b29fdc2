#pragma once

#include <tuple>

#include "phmarket/market.hpp"
#include "phmarket/solution.hpp"

namespace phmarket {

/// Service-probability estimates when travelers overlap: the truncated
/// double-series value, the supply-rich and demand-rich upper bounds, and
/// their minimum (the surrogate the approximate pricing problem uses).
struct ServeProbBounds {
    double exact;
    double ub1;
    double ub2;
    double combined;
    double truncation_error;
};

struct ExactServeProb {
    double value;
    double truncation_error;
};

/// Probability that the tagged traveler is matched to a willing hotspot,
/// evaluated by truncating the Poisson mixtures at tail mass < 1e-12.
ExactServeProb serve_prob_exact(double p, const MarketParams& params,
                                const numerics::ToleranceConfig& tol = {});

ServeProbBounds serve_prob_bounds(double p, const MarketParams& params);

/// Surrogate expected cost combined*p + (1-combined)*C0 for p in
/// [reservation, roaming fee].
double approx_expected_cost_mul(double p, const MarketParams& params);

/// Price at which the acceptance probability equals `target`, via the
/// closed-form band inverse. target must lie in (0, 1).
double omega_inverse(double target, const MarketParams& params);

/// Stationary price of the demand-rich-regime objective; independent of
/// the traveler density. Falls back to the reservation utility when the
/// objective is increasing throughout, and to a grid search if several
/// sign changes are detected.
double high_density_root(const MarketParams& params,
                         const numerics::ToleranceConfig& tol = {});

/// Three-regime optimal price against overlapping travelers, keyed by how
/// the traveler density compares with the density of willing hotspots.
PricingSolution optimal_price_mul(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol = {});

enum class SubPhUsageSplit {
    Deterministic,     // usage splits evenly: mean/q, std/q
    IndependentParts,  // q independent components: mean/q, std/sqrt(q)
};

/// Decompose a hotspot able to serve q travelers into q sub-hotspots with
/// an equally partitioned plan (Q/q, P0/q, beta) and q-fold density.
std::tuple<TariffPlan, UsageModel, double> split_plan_subphs(
    const TariffPlan& plan, const UsageModel& usage, double density, int q,
    SubPhUsageSplit split = SubPhUsageSplit::Deterministic);

} // namespace phmarket
