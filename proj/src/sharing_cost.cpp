#include "phmarket/sharing_cost.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phmarket {

double sharing_cost(double usage_gb, const TariffPlan& plan, double demand_gb) {
    if (!(usage_gb >= 0.0))
        throw std::domain_error("sharing_cost: usage must be nonnegative");
    if (!(demand_gb > 0.0))
        throw std::domain_error("sharing_cost: demand must be positive");
    const double q = plan.quota_gb;
    const double beta = plan.overage_rate_usd_per_gb;
    if (usage_gb <= q - demand_gb)
        return 0.0;
    if (usage_gb >= q)
        return beta * demand_gb;
    return beta * (usage_gb + demand_gb - q);
}

double cost_cdf(double c, const TariffPlan& plan, const UsageModel& usage,
                double demand_gb) {
    const double cap = plan.overage_rate_usd_per_gb * demand_gb;
    if (!(c >= 0.0) || !(c <= cap))
        throw std::domain_error("cost_cdf: cost outside [0, beta*B]");
    if (c == cap)
        return 1.0;
    const double t = c / plan.overage_rate_usd_per_gb + plan.quota_gb - demand_gb;
    return numerics::gaussian_cdf(t, usage.mean_gb, usage.std_gb);
}

double accept_prob_unclamped(double p, const TariffPlan& plan,
                             const UsageModel& usage, double demand_gb,
                             double reservation_usd) {
    const double beta = plan.overage_rate_usd_per_gb;
    const double z = (p - reservation_usd + beta * (plan.quota_gb - demand_gb - usage.mean_gb)) /
                     (std::sqrt(2.0) * usage.std_gb * beta);
    return 1.0 - 0.5 * numerics::erfc_accurate(z);
}

double accept_prob_density(double p, const TariffPlan& plan,
                           const UsageModel& usage, double demand_gb,
                           double reservation_usd) {
    const double beta = plan.overage_rate_usd_per_gb;
    const double z = (p - reservation_usd + beta * (plan.quota_gb - demand_gb - usage.mean_gb)) /
                     (std::sqrt(2.0) * usage.std_gb * beta);
    return std::exp(-z * z) / (std::sqrt(2.0 * std::numbers::pi) * usage.std_gb * beta);
}

double accept_prob(double p, const TariffPlan& plan, const UsageModel& usage,
                   double demand_gb, double reservation_usd) {
    if (!(p >= 0.0))
        throw std::domain_error("accept_prob: price must be nonnegative");
    if (p < reservation_usd)
        return 0.0;
    if (p > reservation_usd + plan.overage_rate_usd_per_gb * demand_gb)
        return 1.0;
    return std::clamp(accept_prob_unclamped(p, plan, usage, demand_gb, reservation_usd), 0.0, 1.0);
}

PriceThresholds price_thresholds(const TariffPlan& plan, const UsageModel& usage,
                                 double demand_gb, double reservation_usd) {
    const double beta = plan.overage_rate_usd_per_gb;
    const double band = demand_gb + usage.mean_gb - plan.quota_gb;
    const double spread = 2.0 * std::sqrt(2.0) * usage.std_gb;
    const double hi = reservation_usd + std::min(beta * demand_gb, beta * (band + spread));
    // A usage mean far above quota can push the nominal lower edge past
    // the beta*B cap; keep the pair ordered.
    const double lo = std::min(reservation_usd + std::max(0.0, beta * (band - spread)), hi);
    return {lo, hi};
}

} // namespace phmarket
