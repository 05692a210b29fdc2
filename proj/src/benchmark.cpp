#include "phmarket/benchmark.hpp"

#include <cmath>

#include "phmarket/numerics.hpp"

namespace phmarket {

namespace {
// The integrands are smooth and bounded by 1; a fixed absolute tolerance
// keeps the quadrature cheap and well inside every stated check.
numerics::ToleranceConfig quad_tol() {
    numerics::ToleranceConfig tol;
    tol.abs_tol = 1e-8;
    tol.rel_tol = 1e-10;
    return tol;
}
} // namespace

double expected_price_given_n(int n, const TariffPlan& plan, const UsageModel& usage,
                              double demand_gb, double reservation_usd) {
    if (n < 1)
        throw std::domain_error("expected_price_given_n: requires n >= 1 (empty market pays the roaming fee)");
    const double beta = plan.overage_rate_usd_per_gb;
    const double cap = beta * demand_gb;
    auto integrand = [&](double c) {
        const double phi = numerics::gaussian_cdf(c / beta + plan.quota_gb - demand_gb,
                                                  usage.mean_gb, usage.std_gb);
        return std::pow(1.0 - phi, static_cast<double>(n));
    };
    return reservation_usd + numerics::integrate(integrand, 0.0, cap, quad_tol());
}

double benchmark_expected_cost(const MarketParams& params) {
    params.validate();
    const PhType& t = params.single_type();
    const double beta = t.plan.overage_rate_usd_per_gb;
    const double cap = beta * params.demand_gb;
    const double mean_n = params.mean_count(0);
    const double eps = params.reservation_usd;
    const double c0 = params.roaming_fee_usd;

    auto integrand = [&](double x) {
        const double z = (x / beta + t.plan.quota_gb - params.demand_gb - t.usage.mean_gb) /
                         (std::sqrt(2.0) * t.usage.std_gb);
        return std::exp(mean_n * (numerics::erfc_accurate(z) - 2.0) / 2.0);
    };
    return eps + (c0 - eps - cap) * std::exp(-mean_n) +
           numerics::integrate(integrand, 0.0, cap, quad_tol());
}

} // namespace phmarket
