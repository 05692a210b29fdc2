#include "phmarket/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <sstream>

#include "phmarket/benchmark.hpp"
#include "phmarket/heterogeneous.hpp"
#include "phmarket/homogeneous.hpp"
#include "phmarket/monte_carlo.hpp"
#include "phmarket/multi_traveler.hpp"

namespace phmarket {

std::string format_g9(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

namespace {

// Per-hour hotspot density for the hour-of-day preset: night hours draw
// from [0.1, 0.5]e-3, day hours from [0.5, 2]e-3, fixed by the sweep seed.
double hour_density(int hour, std::uint64_t seed) {
    const bool day = hour >= 8 && hour <= 20;
    const double lo = day ? 0.5e-3 : 0.1e-3;
    const double hi = day ? 2.0e-3 : 0.5e-3;
    rng::Substream sub(seed, static_cast<std::uint64_t>(hour));
    return lo + sub.uniform01() * (hi - lo);
}

MarketParams apply_swept_param(const SweepSpec& spec, double value) {
    MarketParams p = spec.base;
    const std::string& name = spec.swept_param;
    if (name == "density_per_m2") {
        p.single_type();
        p.ph_types[0].density_per_m2 = value;
    } else if (name == "reservation_usd") {
        p.reservation_usd = value;
    } else if (name == "traveler_density_per_m2") {
        p.traveler_density_per_m2 = value;
    } else if (name == "quota_gb") {
        for (auto& t : p.ph_types)
            t.plan.quota_gb = value;
    } else if (name == "demand_gb") {
        p.demand_gb = value;
    } else if (name == "mean_usage_gb") {
        p.single_type();
        p.ph_types[0].usage.mean_gb = value;
    } else if (name == "delta_mu_gb") {
        if (p.num_types() != 2)
            throw ConfigError("delta_mu_gb sweep requires exactly two hotspot types");
        const double center =
            0.5 * (p.ph_types[0].usage.mean_gb + p.ph_types[1].usage.mean_gb);
        p.ph_types[0].usage.mean_gb = center - value / 2.0;
        p.ph_types[1].usage.mean_gb = center + value / 2.0;
    } else if (name == "hour_of_day") {
        p.single_type();
        const std::uint64_t seed = spec.mc ? spec.mc->seed : 1;
        p.ph_types[0].density_per_m2 = hour_density(static_cast<int>(value), seed);
    } else {
        throw ConfigError("unknown swept parameter '" + name + "'");
    }
    return p;
}

} // namespace

std::string run_sweep(const SweepSpec& spec) {
    spec.validate();
    std::string csv =
        "swept_value,analytic_price,analytic_expected_cost,benchmark_cost,mc_mean,mc_std_err,regime\n";
    for (std::size_t row = 0; row < spec.grid.size(); ++row) {
        const double value = spec.grid[row];
        csv += format_g9(value);
        try {
            const MarketParams p = apply_swept_param(spec, value);
            PricingSolution sol;
            enum { kHom, kHet, kMul } kind;
            if (p.num_types() >= 2) {
                sol = optimal_price_het(p);
                kind = kHet;
            } else if (p.traveler_density_per_m2 > 0.0) {
                sol = optimal_price_mul(p);
                kind = kMul;
            } else {
                sol = optimal_price_hom(p);
                kind = kHom;
            }
            csv += "," + format_g9(sol.price) + "," + format_g9(sol.expected_cost);
            csv += p.num_types() == 1 ? "," + format_g9(benchmark_expected_cost(p)) : ",";
            if (spec.mc) {
                const std::uint64_t row_seed = spec.mc->seed + row;
                EstimateWithCI est{};
                switch (kind) {
                case kHom: est = mc_expected_cost_hom(sol.price, p, spec.mc->n_trials, row_seed); break;
                case kHet: est = mc_expected_cost_het(sol.price, p, spec.mc->n_trials, row_seed); break;
                case kMul: est = mc_expected_cost_mul(sol.price, p, spec.mc->n_trials, row_seed); break;
                }
                csv += "," + format_g9(est.mean) + "," + format_g9(est.std_err);
            } else {
                csv += ",,";
            }
            csv += "," + sol.regime_label() + "\n";
        } catch (const InfeasibleMarketError&) {
            csv += ",,,,,,infeasible\n";
        }
    }
    return csv;
}

namespace {

MarketParams base_market(double quota, double mean_usage, double demand, double eps,
                         double density, double lambda_t = 0.0) {
    MarketParams p;
    p.ph_types.push_back({{quota, 17.0, 13.0}, {mean_usage, 0.1, 0.0}, density});
    p.roaming_fee_usd = 3.0;
    p.demand_gb = demand;
    p.reservation_usd = eps;
    p.radius_m = 30.0;
    p.traveler_density_per_m2 = lambda_t;
    return p;
}

} // namespace

SweepSpec preset_cost_vs_density(double reservation_usd, std::vector<double> density_grid,
                                 std::optional<McSettings> mc) {
    SweepSpec spec;
    spec.experiment = ExperimentKind::CostVsDensity;
    spec.swept_param = "density_per_m2";
    spec.grid = density_grid.empty()
                    ? std::vector<double>{1e-4, 2e-4, 3e-4, 5e-4, 7e-4, 1e-3, 1.5e-3, 2e-3, 2.5e-3, 3e-3}
                    : std::move(density_grid);
    spec.base = base_market(2.0, 1.7, 0.2, reservation_usd, 1e-3);
    spec.mc = mc;
    return spec;
}

SweepSpec preset_price_vs_hour(std::optional<McSettings> mc) {
    SweepSpec spec;
    spec.experiment = ExperimentKind::PriceVsHour;
    spec.swept_param = "hour_of_day";
    for (int h = 0; h < 24; ++h)
        spec.grid.push_back(h);
    spec.base = base_market(2.0, 1.7, 0.2, 0.5, 1e-3);
    spec.mc = mc;
    return spec;
}

SweepSpec preset_cost_vs_delta_mu(double quota_gb, std::vector<double> delta_mu_grid,
                                  std::optional<McSettings> mc) {
    SweepSpec spec;
    spec.experiment = ExperimentKind::CostVsDeltaMu;
    spec.swept_param = "delta_mu_gb";
    if (delta_mu_grid.empty())
        for (int i = 0; i <= 12; ++i)
            spec.grid.push_back(0.2 * i);
    else
        spec.grid = std::move(delta_mu_grid);
    spec.base = base_market(quota_gb, 1.7, 0.2, 0.2, 2.5e-4);
    spec.base.ph_types.push_back(spec.base.ph_types.front());
    spec.mc = mc;
    return spec;
}

SweepSpec preset_cost_vs_traveler_density(std::vector<double> lambda_t_grid,
                                          std::optional<McSettings> mc) {
    SweepSpec spec;
    spec.experiment = ExperimentKind::CostVsTravelerDensity;
    spec.swept_param = "traveler_density_per_m2";
    spec.grid = lambda_t_grid.empty()
                    ? std::vector<double>{1e-4, 2e-4, 3e-4, 5e-4, 7e-4, 9e-4, 1e-3, 1.2e-3, 1.5e-3, 2e-3}
                    : std::move(lambda_t_grid);
    spec.base = base_market(2.0, 1.8, 0.29, 0.5, 1e-3, 1e-4);
    spec.mc = mc;
    return spec;
}

namespace {

ValidationRow make_row(const std::string& quantity, double price, double analytic,
                       const EstimateWithCI& est) {
    ValidationRow row;
    row.quantity = quantity;
    row.price = price;
    row.analytic = analytic;
    row.mc_mean = est.mean;
    row.mc_std_err = est.std_err;
    const double diff = analytic - est.mean;
    if (est.std_err == 0.0)
        row.z = std::abs(diff) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        row.z = diff / est.std_err;
    row.pass = std::abs(row.z) <= 3.0;
    return row;
}

} // namespace

std::string ValidationReport::text() const {
    std::ostringstream out;
    out << std::left << std::setw(16) << "quantity" << std::right << std::setw(13) << "price"
        << std::setw(15) << "analytic" << std::setw(15) << "mc_mean" << std::setw(15)
        << "mc_se" << std::setw(9) << "z" << "  result\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(16) << r.quantity << std::right << std::setw(13)
            << (std::isnan(r.price) ? std::string("-") : format_g9(r.price));
        out << std::setw(15) << format_g9(r.analytic) << std::setw(15) << format_g9(r.mc_mean)
            << std::setw(15) << format_g9(r.mc_std_err);
        char zbuf[32];
        std::snprintf(zbuf, sizeof(zbuf), "%.2f", r.z);
        out << std::setw(9) << zbuf << "  " << (r.pass ? "PASS" : "FAIL") << "\n";
    }
    out << (all_pass ? "all comparisons passed\n" : "VALIDATION FAILED\n");
    return out.str();
}

ValidationReport run_validation(const MarketParams& params,
                                const std::vector<double>& prices, const McSettings& mc,
                                const ValidationOptions& opts) {
    params.validate();
    ValidationReport report;
    auto corrupt = [&](const std::string& name, double v) {
        return name == opts.corrupt_quantity ? v + opts.corrupt_delta : v;
    };
    std::uint64_t seed = mc.seed;

    if (params.num_types() == 1) {
        const double bench = corrupt("benchmark", benchmark_expected_cost(params));
        report.rows.push_back(make_row("benchmark", std::numeric_limits<double>::quiet_NaN(),
                                       bench, mc_benchmark_cost(params, mc.n_trials, seed++)));
    }
    for (double p : prices) {
        if (params.num_types() == 1) {
            report.rows.push_back(
                make_row("homogeneous", p, corrupt("homogeneous", expected_cost_hom(p, params)),
                         mc_expected_cost_hom(p, params, mc.n_trials, seed++)));
        }
        report.rows.push_back(
            make_row("heterogeneous", p, corrupt("heterogeneous", expected_cost_het(p, params)),
                     mc_expected_cost_het(p, params, mc.n_trials, seed++)));
        if (params.num_types() == 1) {
            const double exact = serve_prob_exact(p, params).value;
            const double cost = params.roaming_fee_usd +
                                (p - params.roaming_fee_usd) * exact;
            report.rows.push_back(
                make_row("multi-traveler", p, corrupt("multi-traveler", cost),
                         mc_expected_cost_mul(p, params, mc.n_trials, seed++)));
        }
    }
    for (const auto& r : report.rows)
        report.all_pass = report.all_pass && r.pass;
    return report;
}

} // namespace phmarket
