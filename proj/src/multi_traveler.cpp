#include "phmarket/multi_traveler.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "phmarket/homogeneous.hpp"
#include "phmarket/sharing_cost.hpp"

namespace phmarket {

namespace {

// Poisson pmf table up to the 1e-12 tail truncation; returns the mass
// actually covered.
double poisson_table(double mean, std::vector<double>& pmf) {
    const int nmax = poisson_truncation(mean);
    pmf.assign(static_cast<std::size_t>(nmax) + 1, 0.0);
    double mass = 0.0;
    if (mean == 0.0) {
        pmf[0] = 1.0;
        return 1.0;
    }
    double term = std::exp(-mean);
    for (int n = 0; n <= nmax; ++n) {
        pmf[static_cast<std::size_t>(n)] = term;
        mass += term;
        term *= mean / (n + 1);
    }
    return mass;
}

} // namespace

ExactServeProb serve_prob_exact(double p, const MarketParams& params,
                                const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    const PhType& t = params.single_type();
    const double om = accept_prob(p, t.plan, t.usage, params.demand_gb,
                                  params.reservation_usd);
    const double mean_n = params.mean_count(0);
    const double mean_m = params.traveler_density_per_m2 * params.sharing_area_m2();

    if (mean_n == 0.0 || om <= 0.0)
        return {0.0, 0.0};

    std::vector<double> poi_n, poi_m;
    const double mass_n = poisson_table(mean_n, poi_n);
    const double mass_m = poisson_table(mean_m, poi_m);
    const int nmax = static_cast<int>(poi_n.size()) - 1;
    const int mmax = static_cast<int>(poi_m.size()) - 1;

    // Binomial pmf of willing hotspots for each possible count N.
    std::vector<double> lg(static_cast<std::size_t>(nmax) + 2);
    for (std::size_t i = 0; i < lg.size(); ++i)
        lg[i] = std::lgamma(static_cast<double>(i) + 1.0);
    std::vector<std::vector<double>> binom(static_cast<std::size_t>(nmax) + 1);
    for (int n = 0; n <= nmax; ++n) {
        auto& row = binom[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n) + 1, 0.0);
        if (om >= 1.0) {
            row[static_cast<std::size_t>(n)] = 1.0;
            continue;
        }
        const double lo = std::log(om);
        const double l1 = std::log1p(-om);
        for (int ny = 0; ny <= n; ++ny)
            row[static_cast<std::size_t>(ny)] =
                std::exp(lg[static_cast<std::size_t>(n)] - lg[static_cast<std::size_t>(ny)] -
                         lg[static_cast<std::size_t>(n - ny)] + ny * lo + (n - ny) * l1);
    }

    double total = 0.0;
    for (int m = 0; m <= mmax; ++m) {
        const double inv = 1.0 / (m + 1);
        double cond = 0.0;
        for (int n = 1; n <= nmax; ++n) {
            const auto& row = binom[static_cast<std::size_t>(n)];
            double s = 0.0;
            for (int ny = 1; ny <= n; ++ny)
                s += std::min(1.0, ny * inv) * row[static_cast<std::size_t>(ny)];
            cond += poi_n[static_cast<std::size_t>(n)] * s;
        }
        total += poi_m[static_cast<std::size_t>(m)] * cond;
    }
    const double trunc = std::max(0.0, 1.0 - mass_n) + std::max(0.0, 1.0 - mass_m);
    return {total, trunc};
}

ServeProbBounds serve_prob_bounds(double p, const MarketParams& params) {
    params.validate();
    const PhType& t = params.single_type();
    const double om = accept_prob(p, t.plan, t.usage, params.demand_gb,
                                  params.reservation_usd);
    const double lambda = t.density_per_m2;
    const double lambda_t = params.traveler_density_per_m2;
    const double area = params.sharing_area_m2();

    ServeProbBounds b{};
    b.ub1 = 1.0 - std::exp(-lambda * om * area);
    // lambda_t -> 0 limit of lambda om (1 - exp(-lambda_t area)) / lambda_t.
    const double raw_ub2 = lambda_t > 0.0
                               ? lambda * om * (1.0 - std::exp(-lambda_t * area)) / lambda_t
                               : lambda * om * area;
    b.ub2 = std::min(1.0, raw_ub2);
    b.combined = std::min(b.ub1, b.ub2);
    const ExactServeProb ex = serve_prob_exact(p, params);
    b.exact = ex.value;
    b.truncation_error = ex.truncation_error;
    return b;
}

double approx_expected_cost_mul(double p, const MarketParams& params) {
    params.validate();
    if (!(p >= params.reservation_usd && p <= params.roaming_fee_usd))
        throw std::domain_error("approx_expected_cost_mul: price outside [reservation, roaming fee]");
    const double prob = serve_prob_bounds(p, params).combined;
    return prob * p + (1.0 - prob) * params.roaming_fee_usd;
}

double omega_inverse(double target, const MarketParams& params) {
    params.validate();
    if (!(target > 0.0 && target < 1.0))
        throw std::domain_error("omega_inverse: target must lie in (0, 1)");
    const PhType& t = params.single_type();
    const double beta = t.plan.overage_rate_usd_per_gb;
    const double z = numerics::erfc_inverse(2.0 * (1.0 - target));
    return params.reservation_usd -
           beta * (t.plan.quota_gb - params.demand_gb - t.usage.mean_gb) +
           std::sqrt(2.0) * t.usage.std_gb * beta * z;
}

namespace {

// Stationarity expression of the demand-rich objective; the traveler
// density enters only as a positive prefactor and cancels.
double high_density_expr(double p, const MarketParams& params) {
    const PhType& t = params.ph_types.front();
    const double om = accept_prob_unclamped(p, t.plan, t.usage, params.demand_gb,
                                            params.reservation_usd);
    const double dens = accept_prob_density(p, t.plan, t.usage, params.demand_gb,
                                            params.reservation_usd);
    return om + (p - params.roaming_fee_usd) * dens;
}

struct HighDensityResult {
    double price;
    bool multiple_roots;
};

HighDensityResult high_density_solve(const MarketParams& params,
                                     const numerics::ToleranceConfig& tol) {
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;
    if (eps == c0)
        return {eps, false};

    // Scan for sign changes; fall back to a grid search if the stationary
    // point is not unique.
    const int scan = 257;
    int sign_changes = 0;
    double bracket_lo = eps, bracket_hi = c0;
    double prev = high_density_expr(eps, params);
    for (int i = 1; i < scan; ++i) {
        const double p = eps + (c0 - eps) * i / (scan - 1);
        const double cur = high_density_expr(p, params);
        if (prev < 0.0 && cur >= 0.0) {
            if (sign_changes == 0) {
                bracket_lo = eps + (c0 - eps) * (i - 1) / (scan - 1);
                bracket_hi = p;
            }
            ++sign_changes;
        }
        prev = cur;
    }
    if (sign_changes == 0)
        return {high_density_expr(eps, params) >= 0.0 ? eps : c0, false};
    if (sign_changes == 1)
        return {numerics::find_root_bisect(
                    [&](double p) { return high_density_expr(p, params); }, bracket_lo,
                    bracket_hi, tol),
                false};
    // Multiple candidates: minimize (p - C0) * omega(p) directly, which is
    // the lambda_t-free core of the objective.
    const PhType& t = params.ph_types.front();
    return {numerics::minimize_scalar(
                [&](double p) {
                    return (p - c0) * accept_prob_unclamped(p, t.plan, t.usage,
                                                            params.demand_gb, eps);
                },
                eps, c0, tol)
                .x,
            true};
}

} // namespace

double high_density_root(const MarketParams& params,
                         const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    params.single_type();
    return high_density_solve(params, tol).price;
}

PricingSolution optimal_price_mul(const MarketParams& params,
                                  const numerics::ToleranceConfig& tol) {
    params.validate();
    tol.validate();
    const PhType& t = params.single_type();
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;
    const double lambda = t.density_per_m2;
    const double lambda_t = params.traveler_density_per_m2;

    const PricingSolution hom = optimal_price_hom(params, tol);
    const double om0 = accept_prob(hom.price, t.plan, t.usage, params.demand_gb, eps);

    PricingSolution sol;
    sol.diagnostics = hom.diagnostics;
    if (lambda_t <= lambda * om0) {
        sol.price = hom.price;
        sol.regime = Regime::LowTravelerDensity;
    } else if (lambda_t <= lambda) {
        // Raise the price until the willing-hotspot density matches the
        // traveler density. When even full acceptance at the roaming fee
        // cannot match it (the crossing price would exceed C0), the
        // demand-rich branch governs the whole feasible range and its
        // stationary price is the constrained optimum.
        const double target = lambda_t / lambda;
        double price = c0 + 1.0;
        if (target < 1.0)
            price = omega_inverse(target, params);
        if (price > c0) {
            const HighDensityResult hd = high_density_solve(params, tol);
            sol.diagnostics.multiple_roots_detected = hd.multiple_roots;
            sol.diagnostics.upper_clip_bound = true;
            price = hd.price;
        }
        sol.price = std::clamp(price, eps, c0);
        sol.regime = Regime::MediumTravelerDensity;
    } else {
        const HighDensityResult hd = high_density_solve(params, tol);
        sol.diagnostics.multiple_roots_detected = hd.multiple_roots;
        sol.price = std::clamp(hd.price, eps, c0);
        sol.regime = Regime::HighTravelerDensity;
    }
    sol.expected_cost = approx_expected_cost_mul(sol.price, params);
    sol.success_prob = serve_prob_bounds(sol.price, params).combined;
    return sol;
}

std::tuple<TariffPlan, UsageModel, double> split_plan_subphs(
    const TariffPlan& plan, const UsageModel& usage, double density, int q,
    SubPhUsageSplit split) {
    if (q < 1)
        throw std::domain_error("split_plan_subphs: q must be >= 1");
    const double qd = static_cast<double>(q);
    TariffPlan sub_plan{plan.quota_gb / qd, plan.lump_sum_usd / qd,
                        plan.overage_rate_usd_per_gb};
    const double std_scale = split == SubPhUsageSplit::Deterministic ? qd : std::sqrt(qd);
    UsageModel sub_usage{usage.mean_gb / qd, usage.std_gb / std_scale,
                         usage.est_noise_var_gb2 / (std_scale * std_scale)};
    return {sub_plan, sub_usage, density * qd};
}

} // namespace phmarket
