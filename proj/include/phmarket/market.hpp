#pragma once

#include <cstddef>
#include <vector>

#include "phmarket/errors.hpp"
#include "phmarket/numerics.hpp"

namespace phmarket {

/// Two-part tariff (Q, P0, beta): monthly quota, lump-sum fee, overage rate.
struct TariffPlan {
    double quota_gb;
    double lump_sum_usd;
    double overage_rate_usd_per_gb;

    void validate() const;
};

/// Gaussian monthly-usage statistics of a hotspot population. The
/// estimation-noise variance is carried for documentation only; the cost
/// model already marginalizes it out.
struct UsageModel {
    double mean_gb;
    double std_gb;
    double est_noise_var_gb2 = 0.0;

    void validate() const;
};

/// One hotspot class: tariff plan, usage statistics and spatial density.
struct PhType {
    TariffPlan plan;
    UsageModel usage;
    double density_per_m2;

    void validate() const;
};

/// Everything a pricing query needs. Heterogeneous queries require the
/// types ordered by their acceptance-band terms (see heterogeneous.hpp).
struct MarketParams {
    std::vector<PhType> ph_types;
    double roaming_fee_usd;          // C0
    double demand_gb;                // B
    double reservation_usd;          // epsilon
    double radius_m;                 // d
    double traveler_density_per_m2 = 0.0;

    std::size_t num_types() const { return ph_types.size(); }
    /// Sole type of a single-type market; throws UnsupportedMarketError
    /// when the market is heterogeneous.
    const PhType& single_type() const;
    double sharing_area_m2() const;
    /// Mean hotspot count of type k inside the sharing disc.
    double mean_count(std::size_t k) const;

    void validate() const;
};

/// Radio parameters fixing the sharing radius. The path-loss constant and
/// receiver noise are named pathloss_const / noise_power_w to keep them
/// apart from the roaming fee C0 and the usage variance.
struct GeometryParams {
    double tx_power_w;
    double pathloss_const;           // dimensionless gain at ref_dist
    double ref_dist_m;
    double pathloss_exp;             // alpha > 2
    double noise_power_w;
    double sinr_target;              // gamma
    double density_per_m2;           // hotspot density

    void validate() const;
};

/// Poisson probability mass mean^n e^{-mean} / n!.
double poisson_pmf(double mean, int n);

/// Truncation index with Poisson tail mass below 1e-12.
int poisson_truncation(double mean);

/// Mean hotspot count density * pi * d^2.
double expected_ph_count(double density, double d);

/// Mean shot-noise interference from hotspots outside radius d
/// (Campbell's formula): 2 pi lambda P K0 r0^alpha d^(2-alpha) / (alpha-2).
double mean_interference(const GeometryParams& geo, double d);

/// Laplace transform of the interference at radius d, evaluated by
/// quadrature with the integrand truncated below 1e-16.
double laplace_interference(const GeometryParams& geo, double d, double s);

/// Sharing radius: fixed point of
/// d = (P K0 r0^alpha / (gamma (E[I_d] + noise)))^(1/alpha),
/// solved by damped iteration from the noise-limited radius.
double ph_range(const GeometryParams& geo,
                const numerics::ToleranceConfig& tol = {});

} // namespace phmarket
