#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phmarket/market.hpp"

namespace phmarket {

struct McSettings {
    long long n_trials = 100000;
    std::uint64_t seed = 1;
};

enum class ExperimentKind {
    CostVsDensity,
    PriceVsHour,
    CostVsDeltaMu,
    CostVsTravelerDensity,
    Custom,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// One parameter sweep: which experiment it is, the swept parameter and
/// its grid, the base market, and optional Monte Carlo confirmation.
struct SweepSpec {
    ExperimentKind experiment = ExperimentKind::Custom;
    std::string swept_param;
    std::vector<double> grid;
    MarketParams base;
    std::optional<McSettings> mc;

    void validate() const;
};

/// Parse a market description from JSON text. Field names carry explicit
/// units (quota_gb, overage_rate_usd_per_gb, ...); no unit inference. If
/// radius_m is omitted and a "geometry" object is present, the sharing
/// radius is derived from the radio parameters.
MarketParams market_from_json(const std::string& text);
GeometryParams geometry_from_json(const std::string& text);
SweepSpec sweep_from_json(const std::string& text);

std::string market_to_json(const MarketParams& params);

/// Read a whole file; throws ConfigError on I/O failure.
std::string read_file(const std::string& path);

} // namespace phmarket
