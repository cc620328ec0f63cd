#include "wpcn/montecarlo.hpp"

#include <cmath>

#include "wpcn/random.hpp"

namespace wpcn {

HarvestSimResult simulate_harvest(const Placement& placement, const Scenario& scenario,
                                  long blocks, std::uint64_t seed, Fading fading) {
    if (blocks < 1) throw std::invalid_argument("simulate_harvest: blocks must be >= 1");
    if (placement.en_locations.empty())
        throw std::invalid_argument("simulate_harvest: placement has no ENs");

    const ChannelParams& ch = scenario.channel;
    const std::size_t k_count = scenario.devices.size();
    const std::size_t m = placement.en_locations.size();

    // Mean gain per (device, EN), clamped exactly like harvest_rate.
    std::vector<double> mean_gain(k_count * m);
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t i = 0; i < m; ++i) {
            const double d = std::max(
                distance(placement.en_locations[i], scenario.devices[k].location),
                ch.min_distance);
            mean_gain[k * m + i] = ch.beta * std::pow(d, -ch.dl_exponent);
        }

    // Welford accumulation: immune to the cancellation a plain sum of
    // squares hits when the variance is far below the mean.
    Rng rng(seed);
    std::vector<double> mean_acc(k_count, 0.0);
    std::vector<double> m2(k_count, 0.0);
    for (long b = 0; b < blocks; ++b) {
        const double inv_n = 1.0 / static_cast<double>(b + 1);
        for (std::size_t k = 0; k < k_count; ++k) {
            double gain_sum = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double mean = mean_gain[k * m + i];
                gain_sum += fading == Fading::deterministic ? mean : rng.exponential(mean);
            }
            const double rate = ch.eta * ch.p0 * gain_sum;
            const double delta = rate - mean_acc[k];
            mean_acc[k] += delta * inv_n;
            m2[k] += delta * (rate - mean_acc[k]);
        }
    }

    HarvestSimResult out;
    out.blocks = blocks;
    out.mean = std::move(mean_acc);
    out.std_err.resize(k_count);
    const double nb = static_cast<double>(blocks);
    for (std::size_t k = 0; k < k_count; ++k) {
        const double var = blocks > 1 ? std::max(0.0, m2[k] / (nb - 1.0)) : 0.0;
        out.std_err[k] = std::sqrt(var / nb);
    }
    return out;
}

UplinkSimResult simulate_uplink_power(double distance, const UplinkPolicy& policy, long blocks,
                                      std::uint64_t seed) {
    if (blocks < 1) throw std::invalid_argument("simulate_uplink_power: blocks must be >= 1");
    if (!(policy.outage > 0.0 && policy.outage < 1.0))
        throw std::domain_error("simulate_uplink_power: outage must be in (0,1)");
    if (!(distance > 0.0))
        throw std::invalid_argument("simulate_uplink_power: distance must be positive");

    const double wavelength_term = kSpeedOfLight / (4.0 * M_PI * policy.carrier_freq_ul);
    const double mean_gain = policy.antenna_gain_ul *
                             std::pow(wavelength_term / distance, policy.ul_exponent);
    // P(gain < cutoff) = outage for an exponential gain.
    const double cutoff = mean_gain * std::log(1.0 / (1.0 - policy.outage));

    Rng rng(seed);
    double power_sum = 0.0;
    long outages = 0;
    for (long b = 0; b < blocks; ++b) {
        const double gain = rng.exponential(mean_gain);
        if (gain < cutoff)
            ++outages;
        else
            power_sum += policy.rx_power / gain;
    }

    UplinkSimResult out;
    out.blocks = blocks;
    out.mean_power = power_sum / static_cast<double>(blocks);
    out.outage_fraction = static_cast<double>(outages) / static_cast<double>(blocks);
    return out;
}

}  // namespace wpcn
