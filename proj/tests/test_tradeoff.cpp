#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irsa/errors.hpp"
#include "irsa/tradeoff.hpp"

using namespace irsa;

namespace {
const IrsaDistribution kExample1({0.0, 0.5102, 0.0, 0.4898});

ScenarioSpec boundary_class(int t_mpr) {
    ScenarioSpec spec;
    spec.log2_m = 100.0;
    spec.target_eps = 0.005;
    spec.phy_option = PhyOption::Option1;
    spec.t_mpr = t_mpr;
    spec.lambda1 = 0.0;
    return spec;
}

ScenarioSpec example1_scenario(int t_mpr) {
    ScenarioSpec spec = boundary_class(t_mpr);
    spec.dist = kExample1;
    return spec;
}
}  // namespace

TEST_CASE("redundancy sizing rule") {
    ScenarioSpec spec = boundary_class(2);
    CHECK(spec.effective_redundancy() == 11);  // ceil(log2(10/0.005))
    spec.target_eps = 0.05;
    CHECK(spec.effective_redundancy() == 8);
    spec.redundancy_r = 16;
    CHECK(spec.effective_redundancy() == 16);
}

TEST_CASE("default slot grid is geometric within [50, 5000]") {
    auto grid = default_n_grid();
    CHECK(grid.front() == 50);
    CHECK(grid.back() == 5000);
    for (size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] > grid[i - 1]);
        CHECK(static_cast<double>(grid[i]) / grid[i - 1] < 1.2);
    }
    auto divisors = divisor_n_grid(30000);
    for (int n : divisors) CHECK(30000 % n == 0);
    CHECK(!divisors.empty());
}

TEST_CASE("boundary Eb/N0 at unit spectrum efficiency, T = 2") {
    TradeoffPoint point = boundary_ebno(boundary_class(2), 1.0);
    CHECK(point.feasible);
    CHECK(point.ebno_db > 6.5);
    CHECK(point.ebno_db < 8.5);
    CHECK(point.eta_opt == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(point.n_opt >= 50);
}

TEST_CASE("boundary Eb/N0 decreases with the MPR capability") {
    double prev = 1e9;
    for (int t_mpr : {2, 3, 4}) {
        TradeoffPoint point = boundary_ebno(boundary_class(t_mpr), 1.0);
        CHECK(point.feasible);
        CHECK(point.ebno_db < prev);
        prev = point.ebno_db;
    }
}

TEST_CASE("achievable stays above the boundary and within a couple of dB") {
    ScenarioSpec spec = example1_scenario(2);
    TradeoffPoint achievable = achievable_ebno_asymptotic(spec, 1.0);
    TradeoffPoint boundary = boundary_ebno(boundary_class(2), 1.0);
    CHECK(achievable.feasible);
    CHECK(achievable.ebno_db >= boundary.ebno_db - 0.02);
    CHECK(achievable.ebno_db <= boundary.ebno_db + 2.0);
}

TEST_CASE("spectrum sweep is monotone and preserves infeasible points") {
    ScenarioSpec spec = example1_scenario(2);
    auto points = sweep_spectrum(spec, {0.25, 0.5, 1.0});
    REQUIRE(points.size() == 3);
    double prev = -100.0;
    for (const auto& p : points) {
        CHECK(p.feasible);
        CHECK(p.ebno_db >= prev - 1e-9);
        prev = p.ebno_db;
    }

    // option 2 cannot reach S = 0.95 at T = 2: rate limited by the mod-2 channel
    ScenarioSpec opt2 = boundary_class(2);
    opt2.phy_option = PhyOption::Option2;
    auto capped = sweep_spectrum(opt2, {0.95});
    REQUIRE(capped.size() == 1);
    CHECK_FALSE(capped[0].feasible);
}

TEST_CASE("low spectrum efficiency approaches the single-user regime") {
    ScenarioSpec spec = boundary_class(1);
    TradeoffPoint low = boundary_ebno(spec, 0.05);
    TradeoffPoint high = boundary_ebno(spec, 0.8);
    CHECK(low.feasible);
    CHECK(high.feasible);
    CHECK(low.ebno_db < high.ebno_db);
}

TEST_CASE("slotted aloha protocol is usable only at small spectrum efficiency") {
    ScenarioSpec sa = boundary_class(1);
    sa.dist = IrsaDistribution({1.0});
    TradeoffPoint small = achievable_ebno_asymptotic(sa, 0.05);
    CHECK(small.feasible);
    // IRSA boundary with T=1 beats SA once the load matters
    TradeoffPoint sa_mid = achievable_ebno_asymptotic(sa, 0.4);
    TradeoffPoint irsa_mid = boundary_ebno(boundary_class(1), 0.4);
    CHECK(sa_mid.ebno_db >= irsa_mid.ebno_db);
}

TEST_CASE("ka sweep at fixed frame length") {
    ScenarioSpec spec = boundary_class(2);
    spec.e_grid = {0.1, 0.5};
    auto points = sweep_ka(spec, {50, 100, 200}, 30000);
    REQUIRE(points.size() == 3);
    for (const auto& p : points) {
        CHECK(p.feasible);
        if (p.feasible) CHECK(30000 % p.n_opt == 0);
    }
    CHECK(points[0].x == 50.0);
}

TEST_CASE("infeasible scenarios throw with the error taxonomy") {
    ScenarioSpec spec = boundary_class(1);
    spec.ebno_hi_db = -1.0;
    spec.ebno_lo_db = -2.0;  // nothing decodes this low at S=1
    CHECK_THROWS_AS(boundary_ebno(spec, 1.0), InfeasibleError);
    ScenarioSpec no_dist = boundary_class(1);
    CHECK_THROWS_AS(achievable_ebno_asymptotic(no_dist, 0.5), ValidationError);
}
