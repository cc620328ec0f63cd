#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wpcn/model.hpp"
#include "wpcn/separated.hpp"

// Outer min-cost deployment search over node counts. Inner solvers are
// heuristics, so t* is not monotone in the counts and no candidate is pruned;
// candidates are enumerated in exact cost order.

namespace wpcn {

enum class DeploymentMode { separated, hap };

struct DeploymentPlan {
    DeploymentMode mode = DeploymentMode::separated;
    std::size_t m = 0;
    std::size_t n = 0;  // zero in HAP mode
    double cost = 0.0;
    double t_star = 0.0;  // re-verified evaluate().p_r
    Placement placement;
    bool feasible = false;
};

struct CandidateEval {
    std::size_t m = 0;
    std::size_t n = 0;
    double cost = 0.0;
    double t_star = 0.0;
    bool feasible = false;
};

struct MinCostResult {
    std::optional<DeploymentPlan> plan;
    std::optional<DeploymentPlan> best_infeasible;  // largest t* seen, when no plan
    std::vector<CandidateEval> evaluated;
};

/// Enumerates (M, N) pairs in increasing cost (ties by M), evaluating each
/// with alternating_joint; returns the cheapest feasible pair, equal costs
/// resolved by larger t*. jobs > 1 evaluates candidates on a worker pool
/// without changing the result.
MinCostResult min_cost_separated(const Scenario& scenario, std::size_t m_max, std::size_t n_max,
                                 int l, std::uint64_t seed, unsigned jobs = 1);

/// Increasing-M search with greedy_hap_placement.
MinCostResult min_cost_hap(const Scenario& scenario, std::size_t m_max, std::uint64_t seed,
                           unsigned jobs = 1);

}  // namespace wpcn
