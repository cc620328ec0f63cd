#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wpcn/model.hpp"

// The one convex primitive every placement algorithm reduces to: feasibility
// of a disk intersection inside a box, plus the radius algebra that maps each
// constraint family onto disks.

namespace wpcn {

struct Disk {
    Point2 center;
    double radius = 0.0;  // finite, >= 0
};

struct FeasibilityResult {
    enum class Status { feasible, infeasible };
    Status status = Status::infeasible;
    Point2 witness;    // minimizer found, always inside the box
    double violation;  // max_k(||witness - c_k|| - r_k)
};

inline constexpr double kEpsFeasible = 1e-6;  // meters
inline constexpr double kSolverTol = 1e-7;    // meters

/// Downlink epigraph constraint as a disk radius: (phi/(t+mu_eff))^(1/d_D)
/// when t + mu_eff > 0, otherwise the constraint holds everywhere and is
/// dropped (nullopt).
std::optional<double> disk_radius_dl(double t, double mu_eff, double phi, double dl_exponent);

/// Uplink constraint radius ((lambda - a1 - t)/a2)^(1/d_U); nullopt means the
/// device cannot attain t at any AP location.
std::optional<double> disk_radius_ul(double t, double lambda, const Device& device,
                                     double ul_exponent);

/// Minimizes g(u) = max_k(||u - c_k|| - r_k) over the box to additive
/// accuracy tol. Feasible iff the reported violation is <= eps_feas.
FeasibilityResult min_max_violation(std::span<const Disk> disks, const Region& box,
                                    double tol = kSolverTol, double eps_feas = kEpsFeasible);

/// Exhaustive minimum of an arbitrary objective over a uniform grid. Test
/// oracle; never called from solver paths.
std::pair<Point2, double> grid_oracle(const std::function<double(Point2)>& objective,
                                      const Region& box, double resolution);

/// Unique positive root of z(x) = x^(d_U+d_D) + coeff x^d_D - ratio.
/// For coeff < 0 the root is bracketed in (tau, inf) with
/// tau = (-coeff d_D / (d_U + d_D))^(1/d_U), where z turns increasing.
double root_theta(double coeff, double ratio, double ul_exponent, double dl_exponent);

/// Pivot of z's monotonicity for coeff < 0 (see root_theta).
double root_theta_tau(double coeff, double ul_exponent, double dl_exponent);

struct ProbeOutcome {
    bool feasible = false;
    Point2 witness;
};

struct BisectionResult {
    double t = 0.0;  // final lower bound (last feasible level)
    Point2 witness;
    int probes = 0;
    bool any_feasible_probe = false;
};

using BisectionObserver = std::function<void(double t, bool feasible, double lb, double ub)>;

/// Standard max-feasible bisection: lo is feasible a priori, probes shrink
/// [lo, hi] until hi - lo <= sigma. fallback_witness is returned when no
/// probe ever succeeds (the a-priori-feasible lo case).
BisectionResult bisect_max_feasible(double lo, double hi, double sigma, Point2 fallback_witness,
                                    const std::function<ProbeOutcome(double)>& probe,
                                    const BisectionObserver* observer = nullptr);

}  // namespace wpcn
