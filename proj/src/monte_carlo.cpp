#include "phmarket/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "phmarket/sharing_cost.hpp"

namespace phmarket {

namespace rng {

std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Substream::Substream(std::uint64_t seed, std::uint64_t trial)
    : base_(mix(mix(seed) ^ (trial * 0xd1b54a32d192ed03ULL + 0x2545f4914f6cdd1dULL))) {}

std::uint64_t Substream::next_u64() {
    return mix(base_ + (++counter_) * 0x9e3779b97f4a7c15ULL);
}

double Substream::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double Substream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double Substream::gaussian(double mean, double sd) {
    return mean + sd * gaussian();
}

double Substream::gaussian_nonneg(double mean, double sd) {
    double x = gaussian(mean, sd);
    while (x < 0.0)
        x = gaussian(mean, sd);
    return x;
}

std::uint64_t Substream::poisson(double mean) {
    if (mean <= 0.0)
        return 0;
    if (mean > 500.0) {
        // Superposition keeps the draw exact where exp(-mean) underflows.
        const double half = mean / 2.0;
        return poisson(half) + poisson(mean - half);
    }
    const double u = uniform01();
    double term = std::exp(-mean);
    double cum = term;
    std::uint64_t k = 0;
    while (u > cum && k < 100000) {
        ++k;
        term *= mean / static_cast<double>(k);
        cum += term;
    }
    return k;
}

std::uint64_t Substream::uniform_below(std::uint64_t n) {
    if (n <= 1)
        return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit)
        v = next_u64();
    return v % n;
}

} // namespace rng

namespace {

// Blocked accumulation: per-block partial sums combined in a fixed order,
// so a parallel schedule over blocks would reproduce the serial result.
EstimateWithCI run_trials(long long n_trials, std::uint64_t seed,
                          const std::function<double(rng::Substream&)>& trial_cost) {
    if (n_trials < 1)
        throw std::domain_error("monte carlo: n_trials must be >= 1");
    constexpr long long kBlock = 1 << 16;
    std::vector<double> block_sum, block_sumsq;
    for (long long start = 0; start < n_trials; start += kBlock) {
        const long long end = std::min(n_trials, start + kBlock);
        double s = 0.0, s2 = 0.0;
        for (long long i = start; i < end; ++i) {
            rng::Substream sub(seed, static_cast<std::uint64_t>(i));
            const double c = trial_cost(sub);
            s += c;
            s2 += c * c;
        }
        block_sum.push_back(s);
        block_sumsq.push_back(s2);
    }
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t b = 0; b < block_sum.size(); ++b) {
        sum += block_sum[b];
        sumsq += block_sumsq[b];
    }
    const double n = static_cast<double>(n_trials);
    const double mean = sum / n;
    double var = 0.0;
    if (n_trials > 1)
        var = std::max(0.0, (sumsq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n), n_trials, seed};
}

} // namespace

EstimateWithCI mc_expected_cost_hom(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed) {
    params.validate();
    const PhType& t = params.single_type();
    const double mean_n = params.mean_count(0);
    const double eps = params.reservation_usd;
    return run_trials(n_trials, seed, [&](rng::Substream& sub) {
        const std::uint64_t n = sub.poisson(mean_n);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double x = sub.gaussian_nonneg(t.usage.mean_gb, t.usage.std_gb);
            if (p - sharing_cost(x, t.plan, params.demand_gb) >= eps)
                return p;
        }
        return params.roaming_fee_usd;
    });
}

EstimateWithCI mc_benchmark_cost(const MarketParams& params, long long n_trials,
                                 std::uint64_t seed) {
    params.validate();
    const PhType& t = params.single_type();
    const double mean_n = params.mean_count(0);
    return run_trials(n_trials, seed, [&](rng::Substream& sub) {
        const std::uint64_t n = sub.poisson(mean_n);
        if (n == 0)
            return params.roaming_fee_usd;
        double cmin = t.plan.overage_rate_usd_per_gb * params.demand_gb;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double x = sub.gaussian_nonneg(t.usage.mean_gb, t.usage.std_gb);
            cmin = std::min(cmin, sharing_cost(x, t.plan, params.demand_gb));
        }
        return params.reservation_usd + cmin;
    });
}

EstimateWithCI mc_expected_cost_het(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed) {
    params.validate();
    const double eps = params.reservation_usd;
    return run_trials(n_trials, seed, [&](rng::Substream& sub) {
        for (std::size_t k = 0; k < params.num_types(); ++k) {
            const PhType& t = params.ph_types[k];
            const std::uint64_t n = sub.poisson(params.mean_count(k));
            for (std::uint64_t i = 0; i < n; ++i) {
                const double x = sub.gaussian_nonneg(t.usage.mean_gb, t.usage.std_gb);
                if (p - sharing_cost(x, t.plan, params.demand_gb) >= eps)
                    return p;
            }
        }
        return params.roaming_fee_usd;
    });
}

EstimateWithCI mc_expected_cost_mul(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed) {
    params.validate();
    const PhType& t = params.single_type();
    const double mean_n = params.mean_count(0);
    const double mean_m = params.traveler_density_per_m2 * params.sharing_area_m2();
    const double eps = params.reservation_usd;
    return run_trials(n_trials, seed, [&](rng::Substream& sub) {
        const std::uint64_t n = sub.poisson(mean_n);
        std::uint64_t willing = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double x = sub.gaussian_nonneg(t.usage.mean_gb, t.usage.std_gb);
            if (p - sharing_cost(x, t.plan, params.demand_gb) >= eps)
                ++willing;
        }
        if (willing == 0)
            return params.roaming_fee_usd;
        const std::uint64_t m = sub.poisson(mean_m);
        const std::uint64_t rank = 1 + sub.uniform_below(m + 1);
        return rank <= willing ? p : params.roaming_fee_usd;
    });
}

} // namespace phmarket
