#pragma once

#include <string>
#include <vector>

#include "phmarket/config.hpp"
#include "phmarket/solution.hpp"

namespace phmarket {

/// Locale-free formatting with 9 significant digits; the CSV contract.
std::string format_g9(double v);

/// Run one sweep and return the CSV table. Columns, in order:
///   swept_value, analytic_price, analytic_expected_cost, benchmark_cost,
///   mc_mean, mc_std_err, regime
/// benchmark_cost is filled for single-type markets, mc columns when the
/// spec carries Monte Carlo settings; empty fields otherwise. Output is
/// byte-stable for a fixed spec. Grid points with an infeasible market
/// yield a row flagged "infeasible" and the sweep continues.
std::string run_sweep(const SweepSpec& spec);

/// Preset sweeps. Grids passed empty pick the documented defaults.
SweepSpec preset_cost_vs_density(double reservation_usd,
                                 std::vector<double> density_grid = {},
                                 std::optional<McSettings> mc = {});
SweepSpec preset_price_vs_hour(std::optional<McSettings> mc = {});
SweepSpec preset_cost_vs_delta_mu(double quota_gb,
                                  std::vector<double> delta_mu_grid = {},
                                  std::optional<McSettings> mc = {});
SweepSpec preset_cost_vs_traveler_density(std::vector<double> lambda_t_grid = {},
                                          std::optional<McSettings> mc = {});

struct ValidationRow {
    std::string quantity;
    double price;        // NaN for the price-free benchmark row
    double analytic;
    double mc_mean;
    double mc_std_err;
    double z;
    bool pass;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool all_pass = true;
    std::string text() const;
};

/// Test hook: shift one named analytic quantity to exercise the failure
/// path of the validation report.
struct ValidationOptions {
    std::string corrupt_quantity;
    double corrupt_delta = 0.0;
};

/// Compare every analytic cost function against its simulation at the
/// given prices; a row fails when the z-score leaves [-3, 3].
ValidationReport run_validation(const MarketParams& params,
                                const std::vector<double>& prices,
                                const McSettings& mc,
                                const ValidationOptions& opts = {});

} // namespace phmarket
