#pragma once

#include <cstdint>

#include "phmarket/market.hpp"

namespace phmarket {

namespace rng {

/// SplitMix64 finalizer; the core of the counter-based streams below.
std::uint64_t mix(std::uint64_t z);

/// Counter-based random stream for one trial: the state is a hash of
/// (seed, trial), successive outputs hash successive counters. Streams
/// for distinct trials never share state, so any parallel schedule
/// reproduces the serial results bit for bit.
class Substream {
public:
    Substream(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next_u64();
    /// Uniform draw strictly inside (0, 1).
    double uniform01();
    /// Standard normal via Box-Muller (second value cached).
    double gaussian();
    double gaussian(double mean, double sd);
    /// Normal draw with negatives resampled.
    double gaussian_nonneg(double mean, double sd);
    /// Poisson by CDF inversion; large means split by superposition.
    std::uint64_t poisson(double mean);
    /// Unbiased uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n);

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rng

/// Sample mean with its standard error. Same (seed, params, trials)
/// always reproduces the estimate bit for bit.
struct EstimateWithCI {
    double mean;
    double std_err;
    long long n_trials;
    std::uint64_t seed;
};

/// Simulate the posted-price interaction: Poisson hotspot count, Gaussian
/// usages, acceptance test, traveler pays p on success else the roaming
/// fee.
EstimateWithCI mc_expected_cost_hom(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed);

/// Simulate the complete-information payment: reservation utility plus
/// the cheapest hotspot's cost, roaming fee when the disc is empty.
EstimateWithCI mc_benchmark_cost(const MarketParams& params, long long n_trials,
                                 std::uint64_t seed);

/// Per-type Poisson draws and costs against a shared posted price.
EstimateWithCI mc_expected_cost_het(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed);

/// Overlapping travelers: the tagged traveler is served iff its uniform
/// rank among the M+1 travelers lands within the willing hotspots.
EstimateWithCI mc_expected_cost_mul(double p, const MarketParams& params,
                                    long long n_trials, std::uint64_t seed);

} // namespace phmarket
