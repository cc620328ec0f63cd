#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpcn/montecarlo.hpp"

using namespace wpcn;
using testsup::scenario_with_devices;

TEST_CASE("simulate_harvest") {
    SUBCASE("deterministic mode reproduces the analytic rate") {
        const Scenario s = scenario_with_devices({{3.0, 3.0}, {20.0, 5.0}, {12.0, 18.0}});
        const Placement p = make_placement({{6.0, 6.0}, {14.0, 14.0}}, {{12.0, 12.0}}, s);
        const Metrics m = evaluate(p, s);
        const HarvestSimResult sim =
            simulate_harvest(p, s, 64, 1, Fading::deterministic);
        for (std::size_t k = 0; k < s.devices.size(); ++k) {
            CHECK(sim.mean[k] == doctest::Approx(m.lambda[k]).epsilon(1e-13));
            CHECK(sim.std_err[k] <= 1e-18);
        }
    }
    SUBCASE("one EN at 10 m converges to the reference value") {
        const Scenario s = scenario_with_devices({{7.0, 12.0}});
        const Placement p = make_placement({{17.0, 12.0}}, {{7.0, 12.0}}, s);
        const HarvestSimResult sim = simulate_harvest(p, s, 1000000, 7);
        CHECK(sim.mean[0] == doctest::Approx(2.114e-6).epsilon(0.01));
        const Metrics m = evaluate(p, s);
        CHECK(std::abs(sim.mean[0] - m.lambda[0]) <= 3.0 * sim.std_err[0]);
    }
    SUBCASE("doubling P0 doubles the empirical mean sample-for-sample") {
        Scenario s = scenario_with_devices({{4.0, 4.0}, {19.0, 8.0}});
        const Placement p = make_placement({{10.0, 10.0}}, {{10.0, 10.0}}, s);
        const HarvestSimResult base = simulate_harvest(p, s, 5000, 3);
        s.channel = make_channel_params(2.0, s.channel.eta, s.channel.antenna_gain_dl,
                                        s.channel.carrier_freq_dl, s.channel.dl_exponent,
                                        s.channel.ul_exponent, s.channel.min_distance);
        const HarvestSimResult twice = simulate_harvest(p, s, 5000, 3);
        for (std::size_t k = 0; k < s.devices.size(); ++k)
            CHECK(twice.mean[k] == 2.0 * base.mean[k]);  // bitwise under a fixed seed
    }
    SUBCASE("reproducible per seed") {
        const Scenario s = scenario_with_devices({{4.0, 4.0}});
        const Placement p = make_placement({{10.0, 10.0}}, {{10.0, 10.0}}, s);
        const HarvestSimResult a = simulate_harvest(p, s, 2000, 11);
        const HarvestSimResult b = simulate_harvest(p, s, 2000, 11);
        CHECK(a.mean[0] == b.mean[0]);
        CHECK(a.std_err[0] == b.std_err[0]);
    }
    SUBCASE("blocks must be positive") {
        const Scenario s = scenario_with_devices({{4.0, 4.0}});
        const Placement p = make_placement({{10.0, 10.0}}, {{10.0, 10.0}}, s);
        CHECK_THROWS_AS(simulate_harvest(p, s, 0, 1), std::invalid_argument);
    }
}

TEST_CASE("simulate_uplink_power") {
    const UplinkPolicy policy{1.0e-10, 0.05, 2.0, 915.0e6, 2.5};
    SUBCASE("outage fraction matches the target within binomial 3 sigma") {
        const long blocks = 1000000;
        const UplinkSimResult sim = simulate_uplink_power(10.0, policy, blocks, 13);
        const double sigma = std::sqrt(0.05 * 0.95 / static_cast<double>(blocks));
        CHECK(std::abs(sim.outage_fraction - 0.05) <= 3.0 * sigma);
    }
    SUBCASE("mean power matches derive_a2 * d^dU within 2%") {
        const UplinkSimResult sim = simulate_uplink_power(10.0, policy, 1000000, 17);
        const double analytic = derive_a2(policy.rx_power, policy.outage, policy.antenna_gain_ul,
                                          policy.carrier_freq_ul, policy.ul_exponent) *
                                std::pow(10.0, policy.ul_exponent);
        CHECK(sim.mean_power == doctest::Approx(analytic).epsilon(0.02));
    }
    SUBCASE("mean power grows as the outage allowance shrinks") {
        double prev = 0.0;
        for (double psi : {0.3, 0.15, 0.05, 0.02}) {
            UplinkPolicy p2 = policy;
            p2.outage = psi;
            const UplinkSimResult sim = simulate_uplink_power(10.0, p2, 200000, 5);
            CHECK(sim.mean_power > prev);
            prev = sim.mean_power;
        }
    }
    SUBCASE("domain checks") {
        UplinkPolicy bad = policy;
        bad.outage = 0.0;
        CHECK_THROWS_AS(simulate_uplink_power(10.0, bad, 10, 1), std::domain_error);
        CHECK_THROWS_AS(simulate_uplink_power(0.0, policy, 10, 1), std::invalid_argument);
    }
}
