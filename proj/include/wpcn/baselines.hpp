#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "wpcn/model.hpp"

namespace wpcn {

/// Simulated-annealing schedule. sigma3 is the joint squared-displacement
/// budget of one move; hap_mode ties EN and AP coordinates together.
struct SaConfig {
    double sigma3 = 0.0;
    double initial_temp = 1e-4;
    double cooling = 0.995;
    long steps = 0;
    std::uint64_t seed = 0;
    bool hap_mode = false;
};

/// Schedule sized for a given node count: sigma3 = (0.02 diag)^2 (m+n),
/// 5000 (m+n) steps. Pass n = 0 for HAP chains.
SaConfig sa_default_config(const Scenario& scenario, std::size_t m, std::size_t n,
                           std::uint64_t seed);

/// ENs at m k-means centers and APs at n centers (separate clusterings);
/// HAP mode (n = nullopt) places m HAPs at m centers.
Placement cluster_center_placement(const Scenario& scenario, std::size_t m,
                                   std::optional<std::size_t> n, std::uint64_t seed);

/// Random joint perturbations with total squared displacement below sigma3,
/// clipped to the region; improvements always accepted, worsenings with
/// probability exp(delta/temperature). Returns the best placement seen.
std::pair<Placement, double> simulated_annealing(const Scenario& scenario, const Placement& init,
                                                 const SaConfig& config);

}  // namespace wpcn
