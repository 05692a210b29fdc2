// Command-line front end: pricing queries, simulation, parameter sweeps
// and analytic-vs-simulation validation over JSON market configs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phmarket/benchmark.hpp"
#include "phmarket/config.hpp"
#include "phmarket/experiment.hpp"
#include "phmarket/heterogeneous.hpp"
#include "phmarket/homogeneous.hpp"
#include "phmarket/monte_carlo.hpp"
#include "phmarket/multi_traveler.hpp"

using namespace phmarket;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot open output file: " + out_path);
    out << content;
}

std::string solution_json(const PricingSolution& sol) {
    nlohmann::json j;
    j["price_usd"] = sol.price;
    j["expected_cost_usd"] = sol.expected_cost;
    j["success_prob"] = sol.success_prob;
    j["regime"] = sol.regime_label();
    j["diagnostics"] = {
        {"convex", sol.diagnostics.convex},
        {"used_grid_fallback", sol.diagnostics.used_grid_fallback},
        {"upper_clip_bound", sol.diagnostics.upper_clip_bound},
        {"quota_below_demand", sol.diagnostics.quota_below_demand},
        {"case_analysis_overridden", sol.diagnostics.case_analysis_overridden},
        {"multiple_roots_detected", sol.diagnostics.multiple_roots_detected},
    };
    return j.dump(2) + "\n";
}

std::string estimate_json(const EstimateWithCI& est) {
    nlohmann::json j;
    j["mean_usd"] = est.mean;
    j["std_err_usd"] = est.std_err;
    j["n_trials"] = est.n_trials;
    j["seed"] = est.seed;
    return j.dump(2) + "\n";
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stod(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pricing engine and simulation oracle for personal-hotspot data-plan sharing"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    long long trials = 0;
    std::uint64_t seed = 1;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "market/spec JSON file");
        if (needs_config)
            opt->required();
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--seed", seed, "simulation seed");
        sub->add_option("--trials", trials, "simulation trial count");
        return sub;
    };

    auto* cmd_hom = add_common(app.add_subcommand("price-hom", "optimal price, single type"), true);
    auto* cmd_het =
        add_common(app.add_subcommand("price-het", "optimal price, multiple types"), true);
    auto* cmd_mul =
        add_common(app.add_subcommand("price-mul", "optimal price with overlapping travelers"), true);
    auto* cmd_bench =
        add_common(app.add_subcommand("benchmark", "complete-information expected cost"), true);

    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo cost estimate");
    add_common(cmd_sim, true);
    std::string model = "hom";
    double sim_price = 0.0;
    cmd_sim->add_option("--model", model, "hom | het | mul | benchmark")
        ->check(CLI::IsMember({"hom", "het", "mul", "benchmark"}));
    auto* price_opt = cmd_sim->add_option("--price", sim_price, "posted price (not for benchmark)");

    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(cmd_sweep, false);
    std::string preset;
    std::string epsilon_list = "0.2,0.5,1.0";
    double sweep_quota = 2.0;
    cmd_sweep->add_option("--preset", preset,
                          "cost-vs-density | price-vs-hour | cost-vs-delta-mu | "
                          "cost-vs-traveler-density");
    cmd_sweep->add_option("--epsilon-list", epsilon_list,
                          "reservation utilities for cost-vs-density (comma separated)");
    cmd_sweep->add_option("--quota", sweep_quota, "quota for cost-vs-delta-mu");

    auto* cmd_val = app.add_subcommand("validate", "analytic-vs-simulation report");
    add_common(cmd_val, true);
    std::string prices_csv;
    int num_prices = 5;
    cmd_val->add_option("--prices", prices_csv, "comma-separated price list");
    cmd_val->add_option("--num-prices", num_prices, "random price count when --prices absent");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_hom || *cmd_het || *cmd_mul || *cmd_bench) {
            const MarketParams params = market_from_json(read_file(config_path));
            std::string body;
            if (*cmd_hom)
                body = solution_json(optimal_price_hom(params));
            else if (*cmd_het)
                body = solution_json(optimal_price_het(params));
            else if (*cmd_mul)
                body = solution_json(optimal_price_mul(params));
            else
                body = nlohmann::json{{"expected_cost_usd", benchmark_expected_cost(params)}}
                           .dump(2) +
                       "\n";
            write_output(out_path, body);
            return kExitOk;
        }

        if (*cmd_sim) {
            const MarketParams params = market_from_json(read_file(config_path));
            const long long n = trials > 0 ? trials : 100000;
            if (model != "benchmark" && price_opt->count() == 0)
                throw ConfigError("simulate: --price is required for model '" + model + "'");
            EstimateWithCI est{};
            if (model == "hom")
                est = mc_expected_cost_hom(sim_price, params, n, seed);
            else if (model == "het")
                est = mc_expected_cost_het(sim_price, params, n, seed);
            else if (model == "mul")
                est = mc_expected_cost_mul(sim_price, params, n, seed);
            else
                est = mc_benchmark_cost(params, n, seed);
            write_output(out_path, estimate_json(est));
            return kExitOk;
        }

        if (*cmd_sweep) {
            std::optional<McSettings> mc;
            if (trials > 0)
                mc = McSettings{trials, seed};
            if (!preset.empty() && !config_path.empty())
                throw ConfigError("sweep: use either --preset or --config, not both");
            if (preset.empty() && config_path.empty())
                throw ConfigError("sweep: one of --preset or --config is required");

            if (!preset.empty()) {
                const ExperimentKind kind = experiment_kind_from_string(preset);
                if (kind == ExperimentKind::CostVsDensity) {
                    const std::vector<double> eps_values = parse_list(epsilon_list);
                    if (eps_values.empty())
                        throw ConfigError("sweep: --epsilon-list must not be empty");
                    std::string combined;
                    for (std::size_t i = 0; i < eps_values.size(); ++i) {
                        const std::string csv =
                            run_sweep(preset_cost_vs_density(eps_values[i], {}, mc));
                        if (eps_values.size() == 1) {
                            combined = csv;
                        } else if (out_path.empty() || out_path == "-") {
                            if (i > 0)
                                combined += "\n";
                            combined += csv;
                        } else {
                            write_output(out_path + ".eps" + format_g9(eps_values[i]) + ".csv",
                                         csv);
                        }
                    }
                    if (eps_values.size() == 1 || out_path.empty() || out_path == "-")
                        write_output(out_path, combined);
                    return kExitOk;
                }
                SweepSpec spec;
                if (kind == ExperimentKind::PriceVsHour)
                    spec = preset_price_vs_hour(mc);
                else if (kind == ExperimentKind::CostVsDeltaMu)
                    spec = preset_cost_vs_delta_mu(sweep_quota, {}, mc);
                else if (kind == ExperimentKind::CostVsTravelerDensity)
                    spec = preset_cost_vs_traveler_density({}, mc);
                else
                    throw ConfigError("sweep: preset 'custom' needs a --config spec");
                write_output(out_path, run_sweep(spec));
                return kExitOk;
            }

            SweepSpec spec = sweep_from_json(read_file(config_path));
            if (mc)
                spec.mc = mc;
            write_output(out_path, run_sweep(spec));
            return kExitOk;
        }

        if (*cmd_val) {
            const MarketParams params = market_from_json(read_file(config_path));
            std::vector<double> prices =
                prices_csv.empty() ? std::vector<double>{} : parse_list(prices_csv);
            if (prices.empty()) {
                rng::Substream sub(seed, 0xa11da7e5ULL);
                for (int i = 0; i < num_prices; ++i)
                    prices.push_back(params.reservation_usd +
                                     sub.uniform01() *
                                         (params.roaming_fee_usd - params.reservation_usd));
            }
            const McSettings mc{trials > 0 ? trials : 100000, seed};
            const ValidationReport report = run_validation(params, prices, mc);
            write_output(out_path, report.text());
            return report.all_pass ? kExitOk : kExitValidationFailure;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
