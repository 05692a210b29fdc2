#include <doctest.h>

#include <cmath>

#include "markets.hpp"
#include "oracles.hpp"
#include "phmarket/benchmark.hpp"
#include "phmarket/homogeneous.hpp"
#include "phmarket/monte_carlo.hpp"

using namespace phmarket;

TEST_SUITE("homogeneous") {

TEST_CASE("success probability") {
    const MarketParams a = testmarkets::market_a();
    CHECK(success_prob_hom(0.4, a) == 0.0);
    CHECK(std::abs(success_prob_hom(0.5, a) - 0.90734) <= 1e-4);
    const double cap = 1.0 - std::exp(-a.mean_count(0));
    CHECK(std::abs(success_prob_hom(3.2, a) - cap) <= 1e-12);
    double prev = 0.0;
    for (double p = 0.0; p <= 3.5; p += 0.007) {
        const double v = success_prob_hom(p, a);
        CHECK(v >= prev - 1e-15);
        CHECK(v <= cap + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(success_prob_hom(0.5, testmarkets::two_type_market(2.0, 0.2)),
                    UnsupportedMarketError);
}

TEST_CASE("expected cost") {
    const MarketParams a = testmarkets::market_a();
    CHECK(expected_cost_hom(0.4, a) == 3.0);
    CHECK(std::abs(expected_cost_hom(0.5, a) - 0.7316) <= 5e-4);
    CHECK(std::abs(expected_cost_hom(0.5, a) - 0.73164355395282792) <= 1e-9);
    CHECK(expected_cost_hom(3.0, a) == 3.0);
}

TEST_CASE("first-order derivative pinned values") {
    const MarketParams a = testmarkets::market_a();
    const MarketParams b = testmarkets::market_b();
    CHECK(std::abs(ec_hom_derivative(0.5, a) - 0.7855) <= 1e-3);
    CHECK(std::abs(ec_hom_derivative(0.5, b) - (-0.4788)) <= 1e-3);
    CHECK_THROWS_AS(ec_hom_derivative(0.4, a), std::domain_error);
    CHECK_THROWS_AS(ec_hom_derivative(2.95, a), std::domain_error);
}

TEST_CASE("derivative matches central differences at 20 prices") {
    const MarketParams b = testmarkets::market_b();
    rng::Substream sub(99, 0);
    for (int i = 0; i < 20; ++i) {
        const double p = 0.51 + sub.uniform01() * (2.79 - 0.51);
        const double want = oracle::central_diff(
            [&](double q) { return expected_cost_hom(q, b); }, p, 1e-6);
        const double got = ec_hom_derivative(p, b);
        CHECK(std::abs(got - want) <= 1e-5 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("optimal price, boundary regime (market A)") {
    const PricingSolution sol = optimal_price_hom(testmarkets::market_a());
    CHECK(sol.price == 0.5);
    CHECK(std::abs(sol.expected_cost - 0.7316) <= 1e-3);
    CHECK(sol.regime == Regime::BoundaryEpsilon);
    CHECK(sol.regime_label() == "boundary-epsilon");
    CHECK(sol.diagnostics.convex);
}

TEST_CASE("optimal price, interior regime (market B)") {
    const MarketParams b = testmarkets::market_b();
    const PricingSolution sol = optimal_price_hom(b);
    CHECK(std::abs(sol.price - 1.16) <= 0.01);
    CHECK(std::abs(sol.expected_cost - 1.924) <= 5e-3);
    CHECK(sol.regime == Regime::InteriorRoot);
    // Grid oracle over 1e5 prices.
    const auto gm = oracle::grid_argmin(
        [&](double p) { return expected_cost_hom(p, b); }, 0.5, 3.0, 100000);
    CHECK(std::abs(sol.price - gm.first) <= 1e-3);
    CHECK(sol.expected_cost <= gm.second + 1e-9);
}

TEST_CASE("no hotspots means roaming") {
    MarketParams p = testmarkets::market_a();
    p.ph_types[0].density_per_m2 = 0.0;
    const PricingSolution sol = optimal_price_hom(p);
    CHECK(sol.expected_cost == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(sol.regime == Regime::RoamingOnly);
    CHECK(sol.success_prob == 0.0);
}

TEST_CASE("optimum beats a fine price grid (both markets)") {
    for (const MarketParams& p : {testmarkets::market_a(), testmarkets::market_b()}) {
        const PricingSolution sol = optimal_price_hom(p);
        const auto gm = oracle::grid_argmin(
            [&](double q) { return expected_cost_hom(q, p); }, p.reservation_usd,
            p.roaming_fee_usd, 10000);
        CHECK(sol.expected_cost <= gm.second + 1e-6);
        CHECK(sol.price >= p.reservation_usd);
        CHECK(sol.price <= p.roaming_fee_usd);
    }
}

TEST_CASE("band objective is convex when mean usage stays within quota") {
    const MarketParams a = testmarkets::market_a();
    const PhType& t = a.ph_types[0];
    auto ec_band = [&](double p) {
        const double om =
            accept_prob_unclamped(p, t.plan, t.usage, a.demand_gb, a.reservation_usd);
        return 3.0 + (p - 3.0) * (1.0 - std::exp(-a.mean_count(0) * om));
    };
    const PriceThresholds th = price_thresholds(t.plan, t.usage, a.demand_gb, a.reservation_usd);
    const int n = 1000;
    const double h = (th.p_hi - th.p_lo) / (n + 1);
    for (int i = 1; i <= n; ++i) {
        const double p = th.p_lo + h * i;
        const double second = ec_band(p - h) - 2.0 * ec_band(p) + ec_band(p + h);
        CHECK(second >= -1e-7);
    }
}

TEST_CASE("minimized cost is nondecreasing in the usage variance") {
    double prev = -1e300;
    for (double sigma : {0.05, 0.075, 0.1, 0.15, 0.2}) {
        MarketParams p = testmarkets::market_a();
        p.ph_types[0].usage.std_gb = sigma;
        const double cost = optimal_price_hom(p).expected_cost;
        CHECK(cost >= prev - 1e-9);
        prev = cost;
    }
}

TEST_CASE("comparative statics of the optimal price") {
    auto price_b = [](auto&& mutate) {
        MarketParams p = testmarkets::market_b();
        mutate(p);
        return optimal_price_hom(p).price;
    };
    double prev = 1e300;
    for (double lam : {5e-4, 1e-3, 2e-3, 4e-3}) {
        const double v = price_b([&](MarketParams& p) { p.ph_types[0].density_per_m2 = lam; });
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
    prev = 1e300;
    for (double q : {1.9, 2.0, 2.1, 2.2}) {
        const double v = price_b([&](MarketParams& p) { p.ph_types[0].plan.quota_gb = q; });
        CHECK(v <= prev + 1e-9);
        prev = v;
    }
    prev = -1e300;
    for (double eps : {0.3, 0.5, 0.7, 0.9}) {
        const double v = price_b([&](MarketParams& p) { p.reservation_usd = eps; });
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    prev = -1e300;
    for (double mu : {1.8, 1.9, 2.0, 2.1}) {
        const double v = price_b([&](MarketParams& p) { p.ph_types[0].usage.mean_gb = mu; });
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
    // In the boundary regime the price is pinned at the reservation
    // utility for any overage rate; the interior regime is not monotone
    // in beta.
    prev = -1e300;
    for (double beta : {10.0, 13.0, 16.0, 20.0}) {
        MarketParams p = testmarkets::market_a();
        p.ph_types[0].plan.overage_rate_usd_per_gb = beta;
        const double v = optimal_price_hom(p).price;
        CHECK(v >= prev - 1e-9);
        prev = v;
    }
}

TEST_CASE("dominates the complete-information bound, gap vanishing at high density") {
    MarketParams lo = testmarkets::market_a();
    MarketParams hi = testmarkets::market_a();
    hi.ph_types[0].density_per_m2 = 3e-3;
    const double gap_lo = optimal_price_hom(lo).expected_cost - benchmark_expected_cost(lo);
    const double gap_hi = optimal_price_hom(hi).expected_cost - benchmark_expected_cost(hi);
    CHECK(gap_lo >= -1e-9);
    CHECK(gap_hi >= -1e-9);
    CHECK(gap_hi < gap_lo);
    CHECK(gap_hi < 2e-3);
}

TEST_CASE("cost function agrees with simulation at random prices") {
    const MarketParams a = testmarkets::market_a();
    rng::Substream sub(1234, 1);
    for (int i = 0; i < 10; ++i) {
        const double p = 0.5 + sub.uniform01() * 2.5;
        const EstimateWithCI est = mc_expected_cost_hom(p, a, 150000, 100 + i);
        CHECK(std::abs(expected_cost_hom(p, a) - est.mean) <= 3.0 * est.std_err);
    }
}

} // TEST_SUITE

TEST_SUITE("homogeneous") {

TEST_CASE("solver invariants hold on randomized markets") {
    rng::Substream sub(2024, 0);
    for (int i = 0; i < 60; ++i) {
        MarketParams p;
        const double quota = 0.5 + sub.uniform01() * 3.0;
        const double mu = sub.uniform01() * 3.5;
        const double sigma = 0.02 + sub.uniform01() * 0.4;
        const double beta = 2.0 + sub.uniform01() * 20.0;
        p.ph_types.push_back({{quota, 17.0, beta}, {mu, sigma, 0.0}, sub.uniform01() * 3e-3});
        p.roaming_fee_usd = 1.0 + sub.uniform01() * 4.0;
        p.demand_gb = 0.05 + sub.uniform01() * 0.6;
        p.reservation_usd = p.roaming_fee_usd * (0.05 + 0.9 * sub.uniform01());
        p.radius_m = 10.0 + sub.uniform01() * 50.0;

        const PricingSolution sol = optimal_price_hom(p);
        CHECK(sol.price >= p.reservation_usd);
        CHECK(sol.price <= p.roaming_fee_usd);
        CHECK(sol.expected_cost <= p.roaming_fee_usd + 1e-9);
        CHECK(sol.success_prob >= 0.0);
        CHECK(sol.success_prob <= 1.0);
        const auto gm = oracle::grid_argmin(
            [&](double q) { return expected_cost_hom(q, p); }, p.reservation_usd,
            p.roaming_fee_usd, 4001);
        CHECK(sol.expected_cost <= gm.second + 1e-6);
    }
}

} // TEST_SUITE
