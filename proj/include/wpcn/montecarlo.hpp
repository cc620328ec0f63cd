#pragma once

#include <cstdint>
#include <vector>

#include "wpcn/model.hpp"

// Statistical validation of the analytic models: block-fading gain sampling
// must reproduce the mean harvesting rate, and truncated channel inversion
// must reproduce the derived uplink transmit coefficient.

namespace wpcn {

enum class Fading {
    rayleigh,       // exponential power gains (Rayleigh amplitudes)
    deterministic,  // gains pinned at their means
};

struct HarvestSimResult {
    std::vector<double> mean;     // per-device empirical harvesting rate, W
    std::vector<double> std_err;  // standard error of the mean, W
    long blocks = 0;
};

/// Draws per-(EN, device) channel power gains each block with mean
/// beta * max(d, min_distance)^(-d_D) and averages eta P0 sum_i h_{i,k}.
HarvestSimResult simulate_harvest(const Placement& placement, const Scenario& scenario,
                                  long blocks, std::uint64_t seed,
                                  Fading fading = Fading::rayleigh);

struct UplinkPolicy {
    double rx_power = 0.0;         // receive power target, W
    double outage = 0.0;           // allowed outage probability
    double antenna_gain_ul = 0.0;  // linear
    double carrier_freq_ul = 0.0;  // Hz
    double ul_exponent = 0.0;
};

struct UplinkSimResult {
    double mean_power = 0.0;      // empirical mean transmit power, W
    double outage_fraction = 0.0;
    long blocks = 0;
};

/// Rayleigh-faded truncated channel inversion at the given distance: invert
/// the channel when the power gain clears the outage cutoff, stay silent
/// otherwise. Mean power converges to derive_a2(policy) * d^d_U.
UplinkSimResult simulate_uplink_power(double distance, const UplinkPolicy& policy, long blocks,
                                      std::uint64_t seed);

}  // namespace wpcn
