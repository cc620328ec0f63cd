#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wpcn/geometry.hpp"
#include "wpcn/model.hpp"
#include "wpcn/separated.hpp"

// Greedy placement of co-located EN+AP (HAP) nodes. Each HAP is placed by a
// bisection over t where every device constraint is convexified through one
// of four cases depending on its assumed association and the sign of the
// affected coefficient; assumptions are fixed by an inner trial-and-error.

namespace wpcn {

/// Accumulated state after placing HAPs 1..i-1: per-device harvested rate
/// from the placed HAPs and consumption rate under the nearest placed HAP
/// (+inf before the first placement). lambda_prev is kept equal to
/// phi * gain_sum so the incremental recursion reproduces harvest_rate
/// bit for bit.
struct HapState {
    std::vector<Point2> placed;
    std::vector<double> gain_sum;  // sum of clamped d^-d_D terms
    std::vector<double> lambda_prev;
    std::vector<double> mu_prev;
};

HapState make_hap_state(std::size_t device_count);

/// Folds one placed HAP into the state (incremental forms of the harvested
/// and consumption recursions).
void hap_state_add(HapState& state, Point2 hap, const Scenario& scenario);

enum class HapCondition {
    keep,           // (a) device stays with its previous HAP
    switch_to_new,  // (b) device re-associates to the HAP being placed
};

enum class HapCase {
    active_keep = 1,    // keep, t + mu_prev - lambda_prev > 0: plain disk
    dropped = 2,        // keep, otherwise: constraint holds everywhere
    convex_switch = 3,  // switch, t + a1 - lambda_prev >= 0: root disk
    root_switch = 4,    // switch, otherwise: root disk bracketed past tau
};

HapCase hap_case(HapCondition condition, double t, double lambda_prev, double mu_prev,
                 double circuit_power);

/// Maps one device constraint to a disk for the current t, or nullopt when
/// the constraint is auto-satisfied (case 2).
std::optional<Disk> constraint_to_disk(const Device& device, HapCondition condition, double t,
                                       double lambda_prev, double mu_prev,
                                       const ChannelParams& channel);

struct SingleHapResult {
    Point2 location;
    double t_star = 0.0;  // bisection lower bound of the final round
    std::vector<HapCondition> assumptions;  // indexed like `considered` order
    int rounds = 0;
    std::vector<double> round_t;  // per assumption round
    int probes = 0;
};

/// Places one HAP for the devices in covered+fresh. Initial assumptions:
/// fresh devices switch, covered devices keep (all switch when no HAP is
/// placed yet). delta is the symmetric bisection envelope.
SingleHapResult place_single_hap(const Scenario& scenario, const HapState& state,
                                 std::span<const int> covered, std::span<const int> fresh,
                                 double delta, double sigma = kSigmaBisection);

/// Bisection envelope that provably contains any attainable t for m HAPs.
double hap_bisection_delta(const Scenario& scenario, std::size_t m);

/// Cluster-based greedy placement of m HAPs.
std::pair<std::vector<Point2>, SolveReport> greedy_hap_placement(
    const Scenario& scenario, std::size_t m, std::uint64_t seed,
    std::optional<std::vector<int>> cluster_order = std::nullopt);

}  // namespace wpcn
