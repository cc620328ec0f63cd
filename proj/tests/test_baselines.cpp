#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpcn/baselines.hpp"
#include "wpcn/clustering.hpp"
#include "wpcn/geometry.hpp"
#include "wpcn/random.hpp"

using namespace wpcn;
using testsup::scenario_with_devices;

TEST_CASE("cluster_center_placement") {
    SUBCASE("m = n = 1 puts both nodes at the centroid") {
        const Scenario s = scenario_with_devices({{2.0, 2.0}, {10.0, 4.0}, {6.0, 12.0}});
        const Placement p = cluster_center_placement(s, 1, 1, 7);
        CHECK(p.en_locations[0].x == doctest::Approx(6.0));
        CHECK(p.en_locations[0].y == doctest::Approx(6.0));
        CHECK(p.ap_locations[0] == p.en_locations[0]);
    }
    SUBCASE("HAP mode with m = K puts a HAP on every device") {
        const Scenario s = uniform_scenario(8, 24.0, 19);
        const Placement p = cluster_center_placement(s, 8, std::nullopt, 19);
        CHECK(p.en_locations == p.ap_locations);
        const Metrics m = evaluate(p, s);
        for (std::size_t k = 0; k < s.devices.size(); ++k) {
            const double lam_all =
                harvest_rate(p.en_locations, s.devices[k].location, s.channel);
            CHECK(m.omega[k] == doctest::Approx(lam_all - 5.0e-5).epsilon(1e-12));
        }
    }
    SUBCASE("invalid counts") {
        const Scenario s = scenario_with_devices({{1.0, 1.0}});
        CHECK_THROWS_AS(cluster_center_placement(s, 0, 1, 1), std::invalid_argument);
        CHECK_THROWS_AS(cluster_center_placement(s, 1, 2, 1), std::invalid_argument);
    }
}

TEST_CASE("simulated_annealing basics") {
    const Scenario s = uniform_scenario(12, 24.0, 3);
    const Placement init = cluster_center_placement(s, 2, 2, 3);
    const double init_pr = evaluate(init, s).p_r;

    SUBCASE("zero steps returns the initial placement") {
        SaConfig cfg = sa_default_config(s, 2, 2, 3);
        cfg.steps = 0;
        auto [p, pr] = simulated_annealing(s, init, cfg);
        CHECK(p.en_locations == init.en_locations);
        CHECK(p.ap_locations == init.ap_locations);
        CHECK(pr == init_pr);
    }
    SUBCASE("best-ever tracking never loses to the start") {
        SaConfig cfg = sa_default_config(s, 2, 2, 3);
        cfg.steps = 2000;
        auto [p, pr] = simulated_annealing(s, init, cfg);
        CHECK(pr >= init_pr);
        CHECK(pr == evaluate(p, s).p_r);
    }
    SUBCASE("determinism per seed") {
        SaConfig cfg = sa_default_config(s, 2, 2, 99);
        cfg.steps = 500;
        auto [p1, pr1] = simulated_annealing(s, init, cfg);
        auto [p2, pr2] = simulated_annealing(s, init, cfg);
        CHECK(pr1 == pr2);
        CHECK(p1.en_locations == p2.en_locations);
        CHECK(p1.ap_locations == p2.ap_locations);
    }
    SUBCASE("best-ever P_r is non-decreasing in the step budget") {
        double prev = -std::numeric_limits<double>::infinity();
        for (long steps : {0L, 200L, 1000L, 4000L}) {
            SaConfig cfg = sa_default_config(s, 2, 2, 5);
            cfg.steps = steps;
            auto [p, pr] = simulated_annealing(s, init, cfg);
            CHECK(pr >= prev);
            prev = pr;
        }
    }
    SUBCASE("moves never leave the region") {
        SaConfig cfg = sa_default_config(s, 2, 2, 11);
        cfg.steps = 1500;
        auto [p, pr] = simulated_annealing(s, init, cfg);
        for (const Point2& u : p.en_locations) CHECK(s.region.contains(u));
        for (const Point2& v : p.ap_locations) CHECK(s.region.contains(v));
    }
    SUBCASE("HAP mode keeps EN and AP coordinates tied") {
        const Placement hap_init = cluster_center_placement(s, 3, std::nullopt, 3);
        SaConfig cfg = sa_default_config(s, 3, 0, 3);
        cfg.steps = 800;
        auto [p, pr] = simulated_annealing(s, hap_init, cfg);
        CHECK(p.en_locations == p.ap_locations);
        CHECK(pr >= evaluate(hap_init, s).p_r);
    }
}

TEST_CASE("simulated_annealing reaches the M = N = 1 grid optimum on two groups") {
    std::vector<Point2> devs;
    Rng rng(41);
    for (int i = 0; i < 4; ++i)
        devs.push_back({4.0 + rng.uniform(0.0, 3.0), 4.0 + rng.uniform(0.0, 3.0)});
    for (int i = 0; i < 4; ++i)
        devs.push_back({16.0 + rng.uniform(0.0, 3.0), 16.0 + rng.uniform(0.0, 3.0)});
    const Scenario s = scenario_with_devices(devs);

    // Oracle: coarse joint 4-D grid, then alternating 2-D refinements.
    const auto joint_pr = [&](Point2 en, Point2 ap) {
        double worst = std::numeric_limits<double>::infinity();
        for (const Device& dev : s.devices) {
            const double lam =
                harvest_rate(std::span<const Point2>{&en, 1}, dev.location, s.channel);
            worst = std::min(worst, lam - consumption_rate(ap, dev, s.channel.ul_exponent));
        }
        return worst;
    };
    Point2 best_en, best_ap;
    double best = -std::numeric_limits<double>::infinity();
    for (double ex = 0.0; ex <= 24.0; ex += 1.0)
        for (double ey = 0.0; ey <= 24.0; ey += 1.0)
            for (double ax = 0.0; ax <= 24.0; ax += 1.0)
                for (double ay = 0.0; ay <= 24.0; ay += 1.0) {
                    const double v = joint_pr({ex, ey}, {ax, ay});
                    if (v > best) {
                        best = v;
                        best_en = {ex, ey};
                        best_ap = {ax, ay};
                    }
                }
    for (int round = 0; round < 3; ++round) {
        const auto [en, env] = grid_oracle(
            [&](Point2 u) { return -joint_pr(u, best_ap); }, s.region, 0.02);
        best_en = en;
        const auto [ap, apv] = grid_oracle(
            [&](Point2 v) { return -joint_pr(best_en, v); }, s.region, 0.02);
        best_ap = ap;
        best = -apv;
    }

    const Placement init = cluster_center_placement(s, 1, 1, 41);
    SaConfig cfg = sa_default_config(s, 1, 1, 41);
    cfg.steps = 30000;
    auto [p, pr] = simulated_annealing(s, init, cfg);
    CHECK(pr >= best - 0.05 * std::abs(best));
}
