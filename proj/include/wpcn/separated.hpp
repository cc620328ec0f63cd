#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wpcn/geometry.hpp"
#include "wpcn/model.hpp"

// Placement of separated ENs and APs: greedy EN placement under fixed APs,
// trial-and-error AP placement under fixed ENs, and the alternating joint
// optimization built from the two.

namespace wpcn {

inline constexpr double kSigmaBisection = 1e-8;  // watts
inline constexpr double kEpsReport = 1e-8;       // watts

struct PhaseRecord {
    int iter = 0;
    char phase = '?';  // 'E' EN phase, 'A' AP phase, 'H' HAP, 'J' joint
    double value = 0.0;
};

struct SolveReport {
    double t_star = 0.0;  // exact re-evaluation of the returned placement
    std::vector<PhaseRecord> history;
    int iterations = 0;
    int association_rounds = 0;
};

struct SingleEnResult {
    Point2 location;
    double t_star = 0.0;  // bisection lower bound
    int probes = 0;
};

/// Optimal single-EN placement by bisection over t. mu_fixed and
/// extra_lambda are per scenario device; `considered` restricts the
/// constraint set (empty span = all devices). t_upper caps the search
/// (P0 for a lone EN, M*P0 inside the greedy).
SingleEnResult place_single_en(const Scenario& scenario, std::span<const double> mu_fixed,
                               std::span<const double> extra_lambda,
                               std::span<const int> considered = {},
                               std::optional<double> t_upper = std::nullopt,
                               double sigma = kSigmaBisection,
                               const BisectionObserver* observer = nullptr);

/// Cluster-based greedy placement of m ENs under fixed APs.
std::pair<std::vector<Point2>, SolveReport> greedy_en_placement(
    const Scenario& scenario, std::span<const Point2> ap_locations, std::size_t m,
    std::uint64_t seed, std::optional<std::vector<int>> cluster_order = std::nullopt);

struct ApSubproblemResult {
    std::vector<Point2> ap_locations;
    std::vector<double> per_ap_t;  // +inf for APs with no assigned devices
    double t_star = 0.0;           // min over served APs
    std::vector<int> infeasible_devices;
    int probes = 0;
};

/// AP placement under fixed associations; the epigraph decouples per AP into
/// independent planar bisections. Unserved APs sit at the region center.
ApSubproblemResult solve_ap_subproblem(std::span<const int> associations,
                                       std::span<const double> lambda, const Scenario& scenario,
                                       std::size_t n, double sigma = kSigmaBisection);

/// Trial-and-error AP placement under fixed ENs: alternate between solving
/// the subproblem under assumed associations and recomputing nearest-AP
/// associations until they agree. Hard guard of 50 rounds.
std::pair<Placement, SolveReport> trial_and_error_ap(const Scenario& scenario,
                                                     std::span<const Point2> en_locations,
                                                     std::size_t n, std::uint64_t seed);

struct AltOptions {
    bool ap_phase_first = false;
    std::optional<std::vector<int>> cluster_order;
};

/// Alternating joint EN/AP optimization: APs initialized at n cluster
/// centers, then EN and AP phases alternate for l iterations; the placement
/// with the best recorded min net rate is returned.
std::pair<Placement, SolveReport> alternating_joint(const Scenario& scenario, std::size_t m,
                                                    std::size_t n, int l, std::uint64_t seed,
                                                    const AltOptions& options = {});

}  // namespace wpcn
