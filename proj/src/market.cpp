#include "phmarket/market.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace phmarket {

namespace {
constexpr double kPi = std::numbers::pi;
}

void TariffPlan::validate() const {
    if (!(quota_gb > 0.0))
        throw InvalidMarketError("TariffPlan: quota must be positive");
    if (!(overage_rate_usd_per_gb > 0.0))
        throw InvalidMarketError("TariffPlan: overage rate must be positive");
    if (!(lump_sum_usd >= 0.0))
        throw InvalidMarketError("TariffPlan: lump-sum fee must be nonnegative");
}

void UsageModel::validate() const {
    if (!(std_gb > 0.0))
        throw InvalidMarketError("UsageModel: std must be positive");
    if (!(mean_gb >= 0.0))
        throw InvalidMarketError("UsageModel: mean must be nonnegative");
}

void PhType::validate() const {
    plan.validate();
    usage.validate();
    if (!(density_per_m2 >= 0.0))
        throw InvalidMarketError("PhType: density must be nonnegative");
}

const PhType& MarketParams::single_type() const {
    if (ph_types.size() != 1)
        throw UnsupportedMarketError(
            "operation requires a single-type market, got K=" + std::to_string(ph_types.size()));
    return ph_types.front();
}

double MarketParams::sharing_area_m2() const {
    return kPi * radius_m * radius_m;
}

double MarketParams::mean_count(std::size_t k) const {
    return ph_types.at(k).density_per_m2 * sharing_area_m2();
}

void MarketParams::validate() const {
    if (ph_types.empty())
        throw InvalidMarketError("MarketParams: at least one hotspot type required");
    for (const auto& t : ph_types)
        t.validate();
    if (!(reservation_usd > 0.0))
        throw InvalidMarketError("MarketParams: reservation utility must be positive");
    if (!(reservation_usd <= roaming_fee_usd))
        throw InfeasibleMarketError("MarketParams: reservation utility exceeds roaming fee");
    if (!(demand_gb > 0.0))
        throw InvalidMarketError("MarketParams: demand must be positive");
    if (!(radius_m > 0.0))
        throw InvalidMarketError("MarketParams: radius must be positive");
    if (!(traveler_density_per_m2 >= 0.0))
        throw InvalidMarketError("MarketParams: traveler density must be nonnegative");
}

void GeometryParams::validate() const {
    if (!(pathloss_exp > 2.0))
        throw InvalidMarketError("GeometryParams: path-loss exponent must exceed 2");
    if (!(tx_power_w > 0.0) || !(pathloss_const > 0.0) || !(ref_dist_m > 0.0) ||
        !(noise_power_w > 0.0) || !(sinr_target > 0.0))
        throw InvalidMarketError("GeometryParams: physical quantities must be positive");
    if (!(density_per_m2 >= 0.0))
        throw InvalidMarketError("GeometryParams: density must be nonnegative");
}

double poisson_pmf(double mean, int n) {
    if (!(mean >= 0.0))
        throw std::domain_error("poisson_pmf: mean must be nonnegative");
    if (n < 0)
        throw std::domain_error("poisson_pmf: n must be nonnegative");
    if (mean == 0.0)
        return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mean) - mean - std::lgamma(static_cast<double>(n) + 1.0));
}

int poisson_truncation(double mean) {
    return static_cast<int>(std::ceil(mean + 20.0 * std::sqrt(mean) + 30.0));
}

double expected_ph_count(double density, double d) {
    if (!(density >= 0.0))
        throw std::domain_error("expected_ph_count: density must be nonnegative");
    if (!(d > 0.0))
        throw std::domain_error("expected_ph_count: radius must be positive");
    return density * kPi * d * d;
}

double mean_interference(const GeometryParams& geo, double d) {
    geo.validate();
    if (!(d > 0.0))
        throw std::domain_error("mean_interference: radius must be positive");
    const double a = geo.pathloss_exp;
    const double rx = geo.tx_power_w * geo.pathloss_const * std::pow(geo.ref_dist_m, a);
    return 2.0 * kPi * geo.density_per_m2 * rx * std::pow(d, 2.0 - a) / (a - 2.0);
}

double laplace_interference(const GeometryParams& geo, double d, double s) {
    geo.validate();
    if (!(s >= 0.0))
        throw std::domain_error("laplace_interference: s must be nonnegative");
    if (s == 0.0 || geo.density_per_m2 == 0.0)
        return 1.0;
    const double a = geo.pathloss_exp;
    const double rx = geo.tx_power_w * geo.pathloss_const * std::pow(geo.ref_dist_m, a);
    // (1 - exp(-s rx r^-a)) r  <=  s rx r^(1-a); truncate where that bound
    // drops below 1e-16.
    double upper = std::pow(s * rx / 1e-16, 1.0 / (a - 1.0));
    upper = std::max(upper, 2.0 * d);
    numerics::ToleranceConfig tol;
    tol.abs_tol = 1e-16;
    tol.rel_tol = 1e-10;
    auto integrand = [&](double r) { return -std::expm1(-s * rx * std::pow(r, -a)) * r; };
    // Integrate over octave-wide pieces; the integrand spans many orders
    // of magnitude and a single whole-range error estimate is useless.
    double integral = 0.0;
    for (double lo = d; lo < upper;) {
        const double hi = std::min(2.0 * lo, upper);
        integral += numerics::integrate(integrand, lo, hi, tol);
        lo = hi;
    }
    if (!std::isfinite(integral))
        throw NumericError("laplace_interference: divergent quadrature", d);
    return std::exp(-2.0 * kPi * geo.density_per_m2 * integral);
}

double ph_range(const GeometryParams& geo, const numerics::ToleranceConfig& tol) {
    geo.validate();
    tol.validate();
    const double a = geo.pathloss_exp;
    const double rx = geo.tx_power_w * geo.pathloss_const * std::pow(geo.ref_dist_m, a);
    auto target = [&](double d) {
        return std::pow(rx / (geo.sinr_target * (mean_interference(geo, d) + geo.noise_power_w)),
                        1.0 / a);
    };
    double d = std::pow(rx / (geo.sinr_target * geo.noise_power_w), 1.0 / a);
    if (geo.density_per_m2 == 0.0)
        return d;
    double prev = d;
    for (int i = 0; i < tol.max_iter; ++i) {
        const double next = 0.5 * (d + target(d));
        prev = d;
        d = next;
        if (std::abs(target(d) - d) <= 1e-10 * d)
            return d;
    }
    throw ConvergenceError("ph_range: fixed-point iteration did not converge", d, prev);
}

} // namespace phmarket
