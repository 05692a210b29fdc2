#include "phmarket/heterogeneous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phmarket/sharing_cost.hpp"

namespace phmarket {

namespace {

double band_term(const PhType& t, double demand_gb) {
    return t.plan.overage_rate_usd_per_gb *
           (demand_gb + t.usage.mean_gb - t.plan.quota_gb -
            2.0 * std::sqrt(2.0) * t.usage.std_gb);
}

// Sum over the first k types of the mean count of accepting hotspots.
double thinned_mean(double p, const MarketParams& params, std::size_t k) {
    double h = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const PhType& t = params.ph_types[j];
        h += params.mean_count(j) *
             accept_prob(p, t.plan, t.usage, params.demand_gb, params.reservation_usd);
    }
    return h;
}

double segment_cost(double p, const MarketParams& params, std::size_t k) {
    const double c0 = params.roaming_fee_usd;
    return c0 + (p - c0) * (1.0 - std::exp(-thinned_mean(p, params, k)));
}

// Stationarity condition of the segment objective. Saturated types
// (p past eps + beta_j B) contribute a constant acceptance and no
// density term.
double segment_deriv(double p, const MarketParams& params, std::size_t k) {
    const double eps = params.reservation_usd;
    double h = 0.0;
    double dens = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const PhType& t = params.ph_types[j];
        const double mean_n = params.mean_count(j);
        h += mean_n * accept_prob(p, t.plan, t.usage, params.demand_gb, eps);
        if (p <= eps + t.plan.overage_rate_usd_per_gb * params.demand_gb)
            dens += mean_n * accept_prob_density(p, t.plan, t.usage, params.demand_gb, eps);
    }
    return 1.0 - std::exp(-h) * (1.0 + (params.roaming_fee_usd - p) * dens);
}

} // namespace

TypeThresholds type_thresholds(const MarketParams& params) {
    params.validate();
    TypeThresholds th;
    th.t.reserve(params.num_types());
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < params.num_types(); ++k) {
        const double band = band_term(params.ph_types[k], params.demand_gb);
        if (band < prev - 1e-12)
            throw InvalidMarketError(
                "type_thresholds: acceptance bands out of order between types " +
                std::to_string(k) + " and " + std::to_string(k + 1) +
                " (1-based); sort types by band term");
        prev = band;
        th.t.push_back(params.reservation_usd + band);
    }
    return th;
}

double success_prob_het(double p, const MarketParams& params) {
    params.validate();
    return 1.0 - std::exp(-thinned_mean(p, params, params.num_types()));
}

double expected_cost_het(double p, const MarketParams& params) {
    const double c0 = params.roaming_fee_usd;
    return c0 + (p - c0) * success_prob_het(p, params);
}

double segment_optimum(std::size_t k, const MarketParams& params,
                       const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    if (k < 1 || k > params.num_types())
        throw std::domain_error("segment_optimum: type index out of range");
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;

    bool convex = true;
    for (std::size_t j = 0; j < k; ++j)
        convex = convex && params.demand_gb + params.ph_types[j].usage.mean_gb <=
                               params.ph_types[j].plan.quota_gb;

    double price;
    if (convex) {
        const double d_lo = segment_deriv(eps, params, k);
        const double d_hi = segment_deriv(c0, params, k);
        if (d_lo >= 0.0)
            price = eps;
        else if (d_hi <= 0.0)
            price = c0;
        else
            price = numerics::find_root_bisect(
                [&](double p) { return segment_deriv(p, params, k); }, eps, c0, tol);
    } else {
        price = numerics::minimize_scalar(
                    [&](double p) { return segment_cost(p, params, k); }, eps, c0, tol)
                    .x;
    }
    return std::clamp(price, eps, c0);
}

PricingSolution optimal_price_het(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    const TypeThresholds th = type_thresholds(params);
    const std::size_t K = params.num_types();
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;

    PricingSolution sol;
    for (const auto& t : params.ph_types)
        sol.diagnostics.quota_below_demand |= t.plan.quota_gb < params.demand_gb;
    sol.diagnostics.convex = true;
    for (const auto& t : params.ph_types)
        sol.diagnostics.convex =
            sol.diagnostics.convex && params.demand_gb + t.usage.mean_gb <= t.plan.quota_gb;

    // Case candidate from the threshold ladder.
    double case_price;
    int case_segment = 0;
    if (c0 <= th.t.front()) {
        case_price = c0;  // no type is attracted below its threshold
    } else {
        std::size_t k = 1;
        while (k < K && th.t[k] <= c0)
            ++k;
        case_segment = static_cast<int>(k);
        case_price = segment_optimum(k, params, tol);
    }
    const double case_cost = expected_cost_het(case_price, params);

    // Global cross-check: every segment optimum plus the saturation
    // points, evaluated on the full K-type objective.
    std::vector<double> candidates{eps, c0, case_price};
    for (std::size_t k = 1; k <= K; ++k)
        candidates.push_back(segment_optimum(k, params, tol));
    for (const auto& t : params.ph_types) {
        const double sat = eps + t.plan.overage_rate_usd_per_gb * params.demand_gb + 1e-9;
        if (sat < c0)
            candidates.push_back(sat);
    }
    std::sort(candidates.begin(), candidates.end());
    double best_p = candidates.front();
    double best_cost = std::numeric_limits<double>::infinity();
    for (double p : candidates) {
        const double cost = expected_cost_het(p, params);
        if (cost < best_cost - tol.abs_tol) {
            best_cost = cost;
            best_p = p;
        }
    }

    if (best_cost < case_cost - 1e-9) {
        sol.diagnostics.case_analysis_overridden = true;
        sol.price = best_p;
    } else {
        sol.price = case_price;
    }
    sol.expected_cost = expected_cost_het(sol.price, params);
    sol.success_prob = success_prob_het(sol.price, params);
    sol.segment = case_segment;
    if (c0 - sol.expected_cost < 1e-9) {
        sol.regime = Regime::RoamingOnly;
        sol.segment = 0;
    } else {
        sol.regime = Regime::Segment;
        if (sol.segment == 0)
            sol.segment = 1;
    }
    return sol;
}

} // namespace phmarket
