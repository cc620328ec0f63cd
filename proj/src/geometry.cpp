#include "wpcn/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wpcn {

std::optional<double> disk_radius_dl(double t, double mu_eff, double phi, double dl_exponent) {
    if (!(phi > 0.0)) throw std::invalid_argument("disk_radius_dl: phi must be positive");
    const double denom = t + mu_eff;
    if (denom <= 0.0) return std::nullopt;
    return std::pow(phi / denom, 1.0 / dl_exponent);
}

std::optional<double> disk_radius_ul(double t, double lambda, const Device& device,
                                     double ul_exponent) {
    const double slack = lambda - device.circuit_power - t;
    if (slack < 0.0) return std::nullopt;
    return std::pow(slack / device.tx_coeff, 1.0 / ul_exponent);
}

namespace {

constexpr double kInvGolden = 0.61803398874989484820458683436564;

double g_value(std::span<const Disk> disks, double x, double y) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const Disk& d : disks) {
        const double v = std::hypot(x - d.center.x, y - d.center.y) - d.radius;
        if (v > worst) worst = v;
    }
    return worst;
}

// Golden-section minimum of a convex 1-D function on [a, b].
template <typename F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol) {
    if (b - a <= tol) {
        const double m = 0.5 * (a + b);
        return {m, f(m)};
    }
    double x1 = b - kInvGolden * (b - a);
    double x2 = a + kInvGolden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    double best_x = f1 <= f2 ? x1 : x2;
    double best_f = std::min(f1, f2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvGolden * (b - a);
            f2 = f(x2);
        }
        if (f1 < best_f) {
            best_f = f1;
            best_x = x1;
        }
        if (f2 < best_f) {
            best_f = f2;
            best_x = x2;
        }
    }
    return {best_x, best_f};
}

}  // namespace

FeasibilityResult min_max_violation(std::span<const Disk> disks, const Region& box, double tol,
                                    double eps_feas) {
    if (disks.empty()) throw std::invalid_argument("min_max_violation: empty disk list");
    if (!(tol > 0.0)) throw std::invalid_argument("min_max_violation: tol must be positive");

    const double axis_tol = tol / 8.0;
    const auto inner_min = [&](double x) {
        return golden_min([&](double y) { return g_value(disks, x, y); }, box.lo.y, box.hi.y,
                          axis_tol);
    };

    auto [best_x, best_inner] =
        golden_min([&](double x) { return inner_min(x).second; }, box.lo.x, box.hi.x, axis_tol);
    Point2 best = {best_x, inner_min(best_x).first};
    double best_g = g_value(disks, best.x, best.y);

    const auto consider = [&](Point2 p) {
        const double g = g_value(disks, p.x, p.y);
        if (g < best_g) {
            best_g = g;
            best = p;
        }
    };
    consider(box.center());
    consider(box.lo);
    consider(box.hi);
    consider({box.lo.x, box.hi.y});
    consider({box.hi.x, box.lo.y});
    for (const Disk& d : disks) consider(box.clamp(d.center));

    FeasibilityResult res;
    res.witness = best;
    res.violation = best_g;
    res.status = best_g <= eps_feas ? FeasibilityResult::Status::feasible
                                    : FeasibilityResult::Status::infeasible;
    (void)best_inner;
    return res;
}

std::pair<Point2, double> grid_oracle(const std::function<double(Point2)>& objective,
                                      const Region& box, double resolution) {
    if (!(resolution > 0.0)) throw std::invalid_argument("grid_oracle: resolution must be positive");
    const double w = box.width();
    const double h = box.height();
    if (resolution > std::max(w, h))
        throw std::invalid_argument("grid_oracle: resolution larger than box");

    const auto axis_points = [&](double lo, double hi) {
        std::vector<double> pts;
        const long n = static_cast<long>(std::floor((hi - lo) / resolution));
        pts.reserve(static_cast<std::size_t>(n) + 2);
        for (long i = 0; i <= n; ++i) pts.push_back(lo + static_cast<double>(i) * resolution);
        if (pts.back() < hi) pts.push_back(hi);
        return pts;
    };
    const std::vector<double> xs = axis_points(box.lo.x, box.hi.x);
    const std::vector<double> ys = axis_points(box.lo.y, box.hi.y);

    Point2 best{xs.front(), ys.front()};
    double best_v = std::numeric_limits<double>::infinity();
    for (double y : ys) {
        for (double x : xs) {
            const double v = objective({x, y});
            if (v < best_v) {
                best_v = v;
                best = {x, y};
            }
        }
    }
    return {best, best_v};
}

double root_theta_tau(double coeff, double ul_exponent, double dl_exponent) {
    return std::pow(-coeff * dl_exponent / (ul_exponent + dl_exponent), 1.0 / ul_exponent);
}

double root_theta(double coeff, double ratio, double ul_exponent, double dl_exponent) {
    if (!(ratio > 0.0)) throw std::domain_error("root_theta: ratio must be positive");
    const double s = ul_exponent + dl_exponent;
    const auto z = [&](double x) {
        return std::pow(x, s) + coeff * std::pow(x, dl_exponent) - ratio;
    };

    double lo, hi;
    if (coeff < 0.0) {
        lo = root_theta_tau(coeff, ul_exponent, dl_exponent);
        hi = std::max(std::pow(-2.0 * coeff, 1.0 / ul_exponent), std::pow(2.0 * ratio, 1.0 / s));
    } else {
        lo = 0.0;
        hi = std::pow(ratio, 1.0 / s);
    }
    for (int i = 0; i < 64 && z(hi) < 0.0; ++i) hi *= 2.0;

    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at machine resolution
        if (z(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

BisectionResult bisect_max_feasible(double lo, double hi, double sigma, Point2 fallback_witness,
                                    const std::function<ProbeOutcome(double)>& probe,
                                    const BisectionObserver* observer) {
    if (!(sigma > 0.0)) throw std::invalid_argument("bisect_max_feasible: sigma must be positive");
    BisectionResult res;
    res.witness = fallback_witness;
    while (hi - lo > sigma) {
        const double mid = 0.5 * (lo + hi);
        const ProbeOutcome out = probe(mid);
        ++res.probes;
        if (out.feasible) {
            lo = mid;
            res.witness = out.witness;
            res.any_feasible_probe = true;
        } else {
            hi = mid;
        }
        if (observer) (*observer)(mid, out.feasible, lo, hi);
    }
    res.t = lo;
    return res;
}

}  // namespace wpcn
