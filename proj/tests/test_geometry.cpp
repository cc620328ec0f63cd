#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wpcn/geometry.hpp"
#include "wpcn/random.hpp"

using namespace wpcn;

TEST_CASE("disk_radius_dl") {
    const double phi = 3.351e-4;
    CHECK(disk_radius_dl(phi / 2.0, phi / 2.0, phi, 2.0).value() == doctest::Approx(1.0));
    CHECK_FALSE(disk_radius_dl(1.0, -1.0, phi, 2.2).has_value());
    CHECK_FALSE(disk_radius_dl(-2.0, 1.0, phi, 2.2).has_value());
    CHECK(disk_radius_dl(3.351e-6, 0.0, phi, 2.2).value() ==
          doctest::Approx(std::pow(10.0, 2.0 / 2.2)).epsilon(1e-9));
    CHECK_THROWS_AS(disk_radius_dl(1.0, 1.0, 0.0, 2.2), std::invalid_argument);
}

TEST_CASE("disk_radius_ul") {
    const Device dev{{0.0, 0.0}, 5.0e-5, 1.4e-6};
    // lambda - a1 - t = a2 -> unit radius.
    CHECK(disk_radius_ul(1.0e-5, 1.0e-5 + 5.0e-5 + 1.4e-6, dev, 2.5).value() ==
          doctest::Approx(1.0));
    CHECK_FALSE(disk_radius_ul(1.0e-3, 1.0e-4, dev, 2.5).has_value());
    CHECK(disk_radius_ul(0.0, 5.0e-5 + 4.427e-4, dev, 2.5).value() ==
          doctest::Approx(10.0).epsilon(2e-4));
    // Zero-radius boundary: feasibility flips exactly at t = lambda - a1.
    CHECK(disk_radius_ul(2.0e-4, 5.0e-5 + 2.0e-4, dev, 2.5).value() == 0.0);
    CHECK_FALSE(disk_radius_ul(2.0e-4 + 1e-12, 5.0e-5 + 2.0e-4, dev, 2.5).has_value());
}

TEST_CASE("min_max_violation on documented instances") {
    const Region box{{0.0, 0.0}, {24.0, 24.0}};
    SUBCASE("tangent disks meet at the midpoint") {
        const std::vector<Disk> disks{{{0.0, 0.0}, 5.0}, {{10.0, 0.0}, 5.0}};
        const FeasibilityResult res = min_max_violation(disks, box);
        CHECK(std::abs(res.violation) <= kEpsFeasible);
        CHECK(res.status == FeasibilityResult::Status::feasible);
        CHECK(res.witness.x == doctest::Approx(5.0).epsilon(1e-4));
        CHECK(std::abs(res.witness.y) <= 5e-3);
    }
    SUBCASE("shrunk radii leave a unit gap") {
        const std::vector<Disk> disks{{{0.0, 0.0}, 4.0}, {{10.0, 0.0}, 4.0}};
        const FeasibilityResult res = min_max_violation(disks, box);
        CHECK(res.status == FeasibilityResult::Status::infeasible);
        CHECK(res.violation == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(res.witness.x == doctest::Approx(5.0).epsilon(1e-3));
    }
    SUBCASE("single disk: deepest point is the center") {
        const std::vector<Disk> disks{{{2.0, 2.0}, 3.0}};
        const FeasibilityResult res = min_max_violation(disks, box);
        CHECK(res.witness.x == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(res.witness.y == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(res.violation == doctest::Approx(-3.0).epsilon(1e-9));
    }
    SUBCASE("empty list rejected") {
        CHECK_THROWS_AS(min_max_violation({}, box), std::invalid_argument);
    }
}

TEST_CASE("g is convex and the solver matches the grid oracle") {
    Rng rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const Region box{{0.0, 0.0}, {rng.uniform(4.0, 24.0), rng.uniform(4.0, 24.0)}};
        std::vector<Disk> disks;
        const int n = 1 + static_cast<int>(rng.index(20));
        for (int i = 0; i < n; ++i)
            disks.push_back({{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)},
                             rng.uniform(0.0, 10.0)});

        const auto g = [&](Point2 u) {
            double worst = -std::numeric_limits<double>::infinity();
            for (const Disk& d : disks) worst = std::max(worst, distance(u, d.center) - d.radius);
            return worst;
        };

        // Convexity along random chords.
        for (int j = 0; j < 20; ++j) {
            const Point2 a{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
            const Point2 b{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
            const Point2 mid = 0.5 * (a + b);
            CHECK(g(mid) <= 0.5 * g(a) + 0.5 * g(b) + 1e-12);
        }

        const double tol = kSolverTol;
        const double res = 0.05;
        const FeasibilityResult found = min_max_violation(disks, box, tol);
        const auto [gp, gv] = grid_oracle(g, box, res);
        CHECK(found.violation <= gv + 1e-12);  // solver never loses to the grid
        CHECK(found.violation >= gv - (tol + res * std::sqrt(2.0)));
        CHECK(box.contains(found.witness));
    }
}

TEST_CASE("grid_oracle basics") {
    const Region box{{0.0, 0.0}, {10.0, 10.0}};
    SUBCASE("constant objective returns the constant") {
        const auto [p, v] = grid_oracle([](Point2) { return 3.5; }, box, 1.0);
        CHECK(v == 3.5);
        CHECK(box.contains(p));
    }
    SUBCASE("quadratic bowl lands on the grid point nearest the center") {
        const Point2 c{4.3, 7.1};
        const auto [p, v] = grid_oracle(
            [&](Point2 u) { return (u.x - c.x) * (u.x - c.x) + (u.y - c.y) * (u.y - c.y); }, box,
            0.5);
        CHECK(p.x == doctest::Approx(4.5));
        CHECK(p.y == doctest::Approx(7.0));
        CHECK(v <= 0.5 * 0.5);
    }
    SUBCASE("tangency instance self-consistency at 0.01 m") {
        const std::vector<Disk> disks{{{0.0, 0.0}, 5.0}, {{10.0, 0.0}, 5.0}};
        const auto g = [&](Point2 u) {
            double worst = -std::numeric_limits<double>::infinity();
            for (const Disk& d : disks) worst = std::max(worst, distance(u, d.center) - d.radius);
            return worst;
        };
        const auto [p, v] = grid_oracle(g, {{0.0, 0.0}, {12.0, 6.0}}, 0.01);
        CHECK(std::abs(v) <= 0.02);
    }
    SUBCASE("resolution larger than the box is rejected") {
        CHECK_THROWS_AS(grid_oracle([](Point2) { return 0.0; }, box, 11.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(grid_oracle([](Point2) { return 0.0; }, box, 0.0), std::invalid_argument);
    }
}

TEST_CASE("root_theta") {
    const double du = 2.5, dd = 2.2;
    SUBCASE("coeff = 0 boundary") {
        const double ratio = 239.4;
        CHECK(root_theta(0.0, ratio, du, dd) ==
              doctest::Approx(std::pow(ratio, 1.0 / (du + dd))).epsilon(1e-12));
        CHECK(root_theta(0.0, ratio, du, dd) == doctest::Approx(3.208).epsilon(1e-3));
    }
    SUBCASE("negative coeff brackets past tau") {
        const double coeff = -10.0, ratio = 239.4;
        CHECK(root_theta_tau(coeff, du, dd) == doctest::Approx(1.854).epsilon(1e-3));
        CHECK(root_theta(coeff, ratio, du, dd) == doctest::Approx(3.589).epsilon(1e-3));
    }
    SUBCASE("large positive coeff asymptote") {
        CHECK(root_theta(1.0e6, 1.0e6, du, dd) ==
              doctest::Approx(std::pow(1.0, 1.0 / dd)).epsilon(0.01));
    }
    SUBCASE("domain") { CHECK_THROWS_AS(root_theta(1.0, 0.0, du, dd), std::domain_error); }

    SUBCASE("residual bound and sign structure on random parameters") {
        Rng rng(23);
        for (int trial = 0; trial < 300; ++trial) {
            const double coeff = rng.uniform(-50.0, 50.0);
            const double ratio = std::exp(rng.uniform(std::log(1e-4), std::log(1e4)));
            const double due = rng.uniform(2.0, 4.0);
            const double dde = rng.uniform(2.0, 4.0);
            const double theta = root_theta(coeff, ratio, due, dde);
            const auto z = [&](double x) {
                return std::pow(x, due + dde) + coeff * std::pow(x, dde) - ratio;
            };
            // The representability floor: one ulp of theta moves z by about
            // z' ulp, which dominates 1e-9 ratio when the two terms cancel.
            const double scale = std::pow(theta, due + dde) +
                                 std::abs(coeff) * std::pow(theta, dde) + ratio;
            const double floor =
                32.0 * std::numeric_limits<double>::epsilon() * scale;
            CHECK(std::abs(z(theta)) <= std::max(1e-9 * ratio, floor));
            const double lo_edge = coeff < 0.0 ? root_theta_tau(coeff, due, dde) : 0.0;
            for (double f : {0.2, 0.5, 0.9}) {
                const double below = lo_edge + f * (theta - lo_edge);
                if (below < theta * (1.0 - 1e-9)) CHECK(z(below) < 0.0);
            }
            for (double f : {1.001, 1.5, 4.0}) CHECK(z(theta * f) > 0.0);
        }
    }
}

TEST_CASE("bisect_max_feasible bracket invariant and iteration count") {
    // Feasibility threshold known exactly: feasible iff t <= t_true.
    const double t_true = 0.3183;
    const double lo0 = -1.0, hi0 = 1.0, sigma = 1e-6;
    std::vector<std::pair<double, bool>> trace;
    const BisectionObserver obs = [&](double t, bool feasible, double lb, double ub) {
        trace.push_back({t, feasible});
        CHECK(lb < ub);
    };
    const auto probe = [&](double t) -> ProbeOutcome { return {t <= t_true, {t, 0.0}}; };
    const BisectionResult res = bisect_max_feasible(lo0, hi0, sigma, {0.0, 0.0}, probe, &obs);

    CHECK(res.t <= t_true);
    CHECK(res.t >= t_true - sigma);
    CHECK(res.any_feasible_probe);
    CHECK(res.probes == static_cast<int>(std::ceil(std::log2((hi0 - lo0) / sigma))));

    // Reconstruct the bracket: every accepted level is feasible, every
    // rejected level infeasible, and the width halves per probe.
    double lb = lo0, ub = hi0;
    for (const auto& [t, feasible] : trace) {
        CHECK(t == doctest::Approx(0.5 * (lb + ub)).epsilon(1e-15));
        const double width_before = ub - lb;
        if (feasible)
            lb = t;
        else
            ub = t;
        CHECK(ub - lb == doctest::Approx(0.5 * width_before).epsilon(1e-12));
        CHECK(lb <= t_true);
        CHECK(ub > t_true - sigma);
    }
}

TEST_CASE("radius maps are strictly decreasing in t where defined") {
    const Device dev{{0.0, 0.0}, 5.0e-5, 1.4e-6};
    const double phi = 3.351e-4;
    double prev_dl = std::numeric_limits<double>::infinity();
    double prev_ul = std::numeric_limits<double>::infinity();
    for (double t = 1e-5; t < 1e-3; t += 1e-5) {
        const auto rdl = disk_radius_dl(t, 2.0e-5, phi, 2.2);
        REQUIRE(rdl.has_value());
        CHECK(*rdl < prev_dl);
        prev_dl = *rdl;
        const auto rul = disk_radius_ul(t, 2.0e-3, dev, 2.5);
        REQUIRE(rul.has_value());
        CHECK(*rul < prev_ul);
        prev_ul = *rul;
    }
}
