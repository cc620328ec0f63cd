#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "wpcn/geometry.hpp"
#include "wpcn/model.hpp"

// Shared fixtures and independent oracles for the test suites. Everything
// here stays off the solver paths it is used to check.

namespace testsup {

using wpcn::Point2;
using wpcn::Scenario;

// Scenario with explicit device locations and the default channel.
inline Scenario scenario_with_devices(const std::vector<Point2>& locations, double box = 24.0,
                                      double a1 = 50.0e-6, double a2 = 1.4e-6) {
    Scenario s;
    s.channel = wpcn::default_channel_params();
    s.region = {{0.0, 0.0}, {box, box}};
    s.gamma = -1.0e-4;
    s.costs = wpcn::default_costs();
    for (const Point2& w : locations) s.devices.push_back({w, a1, a2});
    return s;
}

// Adaptive Simpson quadrature of f over [a, b].
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 40) {
    const auto simpson = [&](double lo, double hi) {
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(0.5 * (lo + hi)) + f(hi));
    };
    std::function<double(double, double, double, double, int)> rec =
        [&](double lo, double hi, double whole, double eps, int d) -> double {
        const double mid = 0.5 * (lo + hi);
        const double left = simpson(lo, mid);
        const double right = simpson(mid, hi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps)
            return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, left, eps / 2.0, d - 1) + rec(mid, hi, right, eps / 2.0, d - 1);
    };
    return rec(a, b, simpson(a, b), tol, depth);
}

// Quadrature oracle for the exponential integral: integrate t^-1 e^(-t x)
// out to where the tail is provably below tol.
inline double e1_quadrature(double x, double tol = 1e-12) {
    double upper = 1.0;
    while (std::exp(-upper * x) / (x * upper) > tol * 0.01) upper *= 2.0;
    return adaptive_simpson([x](double t) { return std::exp(-t * x) / t; }, 1.0, upper, tol);
}

// Minimum net rate of a full placement at a point set; the true (clamped)
// objective used by grid-oracle comparisons.
inline double min_net_rate_single_en(const Scenario& s, Point2 en,
                                     const std::vector<double>& mu,
                                     const std::vector<double>& extra) {
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < s.devices.size(); ++k) {
        const double lam =
            wpcn::harvest_rate(std::span<const Point2>{&en, 1}, s.devices[k].location, s.channel);
        worst = std::min(worst, lam + extra[k] - mu[k]);
    }
    return worst;
}

}  // namespace testsup
