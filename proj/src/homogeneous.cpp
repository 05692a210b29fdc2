#include "phmarket/homogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace phmarket {

namespace {

// Derivative of the transition-band expected cost, the form whose root
// the first-order condition solves.
double ec_band_deriv(double p, const MarketParams& params) {
    const PhType& t = params.ph_types.front();
    const double om = accept_prob_unclamped(p, t.plan, t.usage, params.demand_gb,
                                            params.reservation_usd);
    const double dens = accept_prob_density(p, t.plan, t.usage, params.demand_gb,
                                            params.reservation_usd);
    const double mean_n = params.mean_count(0);
    return 1.0 - std::exp(-mean_n * om) *
                     (1.0 + mean_n * (params.roaming_fee_usd - p) * dens);
}

} // namespace

double success_prob_hom(double p, const MarketParams& params) {
    params.validate();
    const PhType& t = params.single_type();
    const double om = accept_prob(p, t.plan, t.usage, params.demand_gb,
                                  params.reservation_usd);
    return 1.0 - std::exp(-params.mean_count(0) * om);
}

double expected_cost_hom(double p, const MarketParams& params) {
    const double prob = success_prob_hom(p, params);
    return params.roaming_fee_usd + (p - params.roaming_fee_usd) * prob;
}

double ec_hom_derivative(double p, const MarketParams& params) {
    params.validate();
    const PhType& t = params.single_type();
    const PriceThresholds th = price_thresholds(t.plan, t.usage, params.demand_gb,
                                                params.reservation_usd);
    if (!(p >= th.p_lo && p <= th.p_hi))
        throw std::domain_error("ec_hom_derivative: price outside the transition band");
    return ec_band_deriv(p, params);
}

PricingSolution optimal_price_hom(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    const PhType& t = params.single_type();
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;
    const double cap = t.plan.overage_rate_usd_per_gb * params.demand_gb;

    PricingSolution sol;
    sol.diagnostics.quota_below_demand = t.plan.quota_gb < params.demand_gb;
    sol.diagnostics.convex = params.demand_gb + t.usage.mean_gb <= t.plan.quota_gb;

    const PriceThresholds th = price_thresholds(t.plan, t.usage, params.demand_gb, eps);
    const double seg_lo = th.p_lo;
    const double seg_hi = std::min(th.p_hi, c0);

    double foc_price = eps;
    if (sol.diagnostics.convex && seg_lo < seg_hi) {
        const double d_lo = ec_band_deriv(seg_lo, params);
        const double d_hi = ec_band_deriv(seg_hi, params);
        if (d_lo >= 0.0) {
            foc_price = seg_lo;
        } else if (d_hi <= 0.0) {
            foc_price = seg_hi;
        } else {
            foc_price = numerics::find_root_bisect(
                [&](double p) { return ec_band_deriv(p, params); }, seg_lo, seg_hi, tol,
                &sol.diagnostics.iterations);
            sol.diagnostics.residual = std::abs(ec_band_deriv(foc_price, params));
        }
    } else {
        const auto sm = numerics::minimize_scalar(
            [&](double p) { return expected_cost_hom(p, params); }, eps, c0, tol);
        foc_price = sm.x;
        sol.diagnostics.iterations = tol.grid_points;
        sol.diagnostics.used_grid_fallback = true;
    }
    if (foc_price > c0) {
        foc_price = c0;
        sol.diagnostics.upper_clip_bound = true;
    }
    foc_price = std::max(foc_price, eps);

    // Candidate sweep (ascending): the reservation utility, the
    // first-order candidate, the point just past full acceptance (the
    // cost CDF has an atom at beta*B, so costs drop discontinuously
    // there), and the roaming fee. Ties go to the cheapest price.
    std::vector<double> candidates{eps, foc_price, c0};
    if (eps + cap < c0)
        candidates.push_back(eps + cap + 1e-9);
    std::sort(candidates.begin(), candidates.end());
    double best_p = candidates.front();
    double best_cost = std::numeric_limits<double>::infinity();
    for (double p : candidates) {
        const double cost = expected_cost_hom(p, params);
        if (cost < best_cost - tol.abs_tol) {
            best_cost = cost;
            best_p = p;
        }
    }

    sol.price = best_p;
    sol.expected_cost = expected_cost_hom(best_p, params);
    sol.success_prob = success_prob_hom(best_p, params);
    if (c0 - sol.expected_cost < 1e-9)
        sol.regime = Regime::RoamingOnly;
    else if (best_p <= eps + 1e-12)
        sol.regime = Regime::BoundaryEpsilon;
    else
        sol.regime = Regime::InteriorRoot;
    return sol;
}

} // namespace phmarket
