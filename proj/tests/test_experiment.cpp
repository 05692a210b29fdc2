#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "markets.hpp"
#include "phmarket/config.hpp"
#include "phmarket/experiment.hpp"
#include "phmarket/monte_carlo.hpp"

using namespace phmarket;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ','))
            fields.push_back(field);
        if (!line.empty() && line.back() == ',')
            fields.push_back("");
        rows.push_back(fields);
    }
    return rows;
}

const char* kMarketA = R"({
  "ph_types": [
    {"plan": {"quota_gb": 2.0, "lump_sum_usd": 17.0, "overage_rate_usd_per_gb": 13.0},
     "usage": {"mean_gb": 1.7, "std_gb": 0.1},
     "density_per_m2": 1e-3}
  ],
  "roaming_fee_usd": 3.0,
  "demand_gb": 0.2,
  "reservation_usd": 0.5,
  "radius_m": 30.0
})";

} // namespace

TEST_SUITE("experiment") {

TEST_CASE("market JSON round trip") {
    const MarketParams p = market_from_json(kMarketA);
    CHECK(p.num_types() == 1);
    CHECK(p.ph_types[0].plan.quota_gb == 2.0);
    CHECK(p.ph_types[0].usage.est_noise_var_gb2 == 0.0);
    CHECK(p.radius_m == 30.0);
    const MarketParams back = market_from_json(market_to_json(p));
    CHECK(back.ph_types[0].usage.mean_gb == p.ph_types[0].usage.mean_gb);
    CHECK(back.roaming_fee_usd == p.roaming_fee_usd);
}

TEST_CASE("config errors name the problem") {
    CHECK_THROWS_AS(market_from_json("{not json"), ConfigError);
    try {
        market_from_json(R"({"ph_types": [{"plan": {"quota_gb": 2, "lump_sum_usd": 17,
            "overage_rate_usd_per_gb": 13}, "usage": {"mean_gb": 1.7, "std_gb": 0.1},
            "density_per_m2": 1e-3}], "demand_gb": 0.2, "reservation_usd": 0.5,
            "radius_m": 30})");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("roaming_fee_usd") != std::string::npos);
    }
}

TEST_CASE("radius can be derived from radio geometry") {
    const std::string text = R"({
      "ph_types": [
        {"plan": {"quota_gb": 2.0, "lump_sum_usd": 17.0, "overage_rate_usd_per_gb": 13.0},
         "usage": {"mean_gb": 1.7, "std_gb": 0.1},
         "density_per_m2": 1e-3}
      ],
      "roaming_fee_usd": 3.0, "demand_gb": 0.2, "reservation_usd": 0.5,
      "geometry": {"tx_power_w": 1e-6, "pathloss_const": 1.0, "ref_dist_m": 1.0,
                   "pathloss_exp": 4.0, "noise_power_w": 1e-13, "sinr_target": 10.0,
                   "density_per_m2": 1e-3}
    })";
    const MarketParams p = market_from_json(text);
    const GeometryParams geo = geometry_from_json(R"({"tx_power_w": 1e-6,
        "pathloss_const": 1.0, "ref_dist_m": 1.0, "pathloss_exp": 4.0,
        "noise_power_w": 1e-13, "sinr_target": 10.0, "density_per_m2": 1e-3})");
    CHECK(p.radius_m == doctest::Approx(ph_range(geo)).epsilon(1e-12));
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec = preset_cost_vs_density(0.5);
    CHECK_NOTHROW(spec.validate());
    spec.grid = {1e-3, 1e-3};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    spec.grid = {};
    CHECK_THROWS_AS(spec.validate(), ConfigError);
    CHECK_THROWS_AS(experiment_kind_from_string("bogus"), ConfigError);
}

TEST_CASE("sweep JSON parsing") {
    const std::string text = std::string(R"({
      "experiment": "custom",
      "sweep": {"param": "density_per_m2", "grid": [1e-4, 1e-3]},
      "base": )") + kMarketA + R"(,
      "mc": {"n_trials": 1000, "seed": 3}
    })";
    const SweepSpec spec = sweep_from_json(text);
    CHECK(spec.experiment == ExperimentKind::Custom);
    CHECK(spec.swept_param == "density_per_m2");
    CHECK(spec.grid.size() == 2);
    REQUIRE(spec.mc.has_value());
    CHECK(spec.mc->n_trials == 1000);
    CHECK(spec.mc->seed == 3);
}

TEST_CASE("density sweep: costs fall with density, bounded below by the benchmark") {
    SweepSpec spec = preset_cost_vs_density(0.5);
    const auto rows = parse_csv(run_sweep(spec));
    REQUIRE(rows.size() == spec.grid.size() + 1);
    CHECK(rows[0] ==
          std::vector<std::string>{"swept_value", "analytic_price", "analytic_expected_cost",
                                   "benchmark_cost", "mc_mean", "mc_std_err", "regime"});
    double prev_cost = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double cost = std::stod(rows[i][2]);
        const double bench = std::stod(rows[i][3]);
        CHECK(bench <= cost + 1e-9);
        CHECK(cost <= prev_cost + 1e-9);
        prev_cost = cost;
    }
    // Dense markets drive the cost toward the reservation utility.
    CHECK(std::stod(rows.back()[2]) < 0.52);
}

TEST_CASE("sweep output is byte-stable") {
    SweepSpec spec = preset_cost_vs_density(0.5, {1e-4, 1e-3});
    spec.mc = McSettings{5000, 42};
    const std::string a = run_sweep(spec);
    const std::string b = run_sweep(spec);
    CHECK(a == b);
    CHECK(a.find(',') != std::string::npos);
    CHECK(a.find(';') == std::string::npos);
}

TEST_CASE("hour-of-day sweep: higher density means lower price") {
    const SweepSpec spec = preset_price_vs_hour();
    const auto rows = parse_csv(run_sweep(spec));
    REQUIRE(rows.size() == 25);
    // Recompute each hour's density the way the sweep does and check the
    // price ranking is inverse to the density ranking.
    std::vector<std::pair<double, double>> lam_price;
    for (int h = 0; h < 24; ++h) {
        const bool day = h >= 8 && h <= 20;
        rng::Substream sub(1, static_cast<std::uint64_t>(h));
        const double lo = day ? 0.5e-3 : 0.1e-3;
        const double hi = day ? 2.0e-3 : 0.5e-3;
        lam_price.emplace_back(lo + sub.uniform01() * (hi - lo),
                               std::stod(rows[static_cast<std::size_t>(h) + 1][1]));
    }
    std::sort(lam_price.begin(), lam_price.end());
    for (std::size_t i = 1; i < lam_price.size(); ++i)
        CHECK(lam_price[i].second <= lam_price[i - 1].second + 1e-9);
}

TEST_CASE("diversity sweep converges to the same cost for both quotas") {
    for (double q : {1.8, 2.0}) {
        const SweepSpec spec = preset_cost_vs_delta_mu(q);
        const auto rows = parse_csv(run_sweep(spec));
        CHECK(std::abs(std::stod(rows.back()[2]) - 1.58) <= 0.02);
        CHECK(rows.back()[3].empty());  // no benchmark column for two types
    }
}

TEST_CASE("traveler-density sweep walks through the three regimes") {
    const SweepSpec spec = preset_cost_vs_traveler_density();
    const auto rows = parse_csv(run_sweep(spec));
    REQUIRE(rows.size() == spec.grid.size() + 1);
    int last_stage = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double cost = std::stod(rows[i][2]);
        CHECK(cost > 0.5);
        CHECK(cost <= 3.0 + 1e-9);
        const std::string& regime = rows[i][6];
        const int stage = regime == "low-traveler-density"      ? 1
                          : regime == "medium-traveler-density" ? 2
                          : regime == "high-traveler-density"   ? 3
                                                                : 0;
        CHECK(stage >= last_stage);
        CHECK(stage > 0);
        last_stage = stage;
    }
    CHECK(last_stage == 3);
    // Crowding always costs: the last grid point beats the first.
    CHECK(std::stod(rows.back()[2]) > std::stod(rows[1][2]));
}

TEST_CASE("infeasible grid points are flagged and skipped") {
    SweepSpec spec;
    spec.swept_param = "reservation_usd";
    spec.grid = {0.5, 2.0, 4.0};  // 4.0 exceeds the roaming fee
    spec.base = testmarkets::market_a();
    const auto rows = parse_csv(run_sweep(spec));
    REQUIRE(rows.size() == 4);
    CHECK(rows[3].back() == "infeasible");
    CHECK(rows[1].back() != "infeasible");
}

TEST_CASE("validation report passes on an honest market") {
    const MarketParams a = testmarkets::market_a();
    const ValidationReport rep = run_validation(a, {0.5, 1.0, 2.0}, {20000, 9});
    CHECK(rep.all_pass);
    CHECK(rep.rows.size() == 1 + 3 * 3);
    CHECK(rep.text().find("FAIL") == std::string::npos);
}

TEST_CASE("validation flags a corrupted quantity by name") {
    const MarketParams a = testmarkets::market_a();
    ValidationOptions opts;
    opts.corrupt_quantity = "homogeneous";
    opts.corrupt_delta = 0.05;
    const ValidationReport rep = run_validation(a, {0.9}, {50000, 9}, opts);
    CHECK_FALSE(rep.all_pass);
    bool hom_failed = false;
    for (const auto& r : rep.rows)
        if (r.quantity == "homogeneous" && !r.pass)
            hom_failed = true;
    CHECK(hom_failed);
    CHECK(rep.text().find("FAIL") != std::string::npos);
}

TEST_CASE("validation handles exact zero-variance rows") {
    MarketParams empty = testmarkets::market_a();
    empty.ph_types[0].density_per_m2 = 0.0;
    const ValidationReport rep = run_validation(empty, {0.5, 1.5}, {2000, 9});
    CHECK(rep.all_pass);
    for (const auto& r : rep.rows)
        CHECK(r.z == 0.0);
}

TEST_CASE("numeric formatting is locale-free and 9 significant digits") {
    CHECK(format_g9(2.5) == "2.5");
    CHECK(format_g9(0.1078133111) == "0.107813311");
    CHECK(format_g9(1e-3) == "0.001");
    CHECK(format_g9(123456789012.0) == "1.23456789e+11");
}

} // TEST_SUITE
