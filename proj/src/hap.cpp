#include "wpcn/hap.hpp"

#include <algorithm>
#include <cmath>

#include "wpcn/clustering.hpp"

namespace wpcn {

HapState make_hap_state(std::size_t device_count) {
    HapState s;
    s.gain_sum.assign(device_count, 0.0);
    s.lambda_prev.assign(device_count, 0.0);
    s.mu_prev.assign(device_count, std::numeric_limits<double>::infinity());
    return s;
}

void hap_state_add(HapState& state, Point2 hap, const Scenario& scenario) {
    const ChannelParams& ch = scenario.channel;
    state.placed.push_back(hap);
    for (std::size_t k = 0; k < scenario.devices.size(); ++k) {
        const Device& dev = scenario.devices[k];
        const double d = std::max(distance(hap, dev.location), ch.min_distance);
        state.gain_sum[k] += std::pow(d, -ch.dl_exponent);
        state.lambda_prev[k] = ch.phi * state.gain_sum[k];
        const double candidate = consumption_rate(hap, dev, scenario.channel.ul_exponent);
        if (candidate < state.mu_prev[k]) state.mu_prev[k] = candidate;
    }
}

HapCase hap_case(HapCondition condition, double t, double lambda_prev, double mu_prev,
                 double circuit_power) {
    if (condition == HapCondition::keep)
        return t + mu_prev - lambda_prev > 0.0 ? HapCase::active_keep : HapCase::dropped;
    return t + circuit_power - lambda_prev >= 0.0 ? HapCase::convex_switch : HapCase::root_switch;
}

std::optional<Disk> constraint_to_disk(const Device& device, HapCondition condition, double t,
                                       double lambda_prev, double mu_prev,
                                       const ChannelParams& channel) {
    switch (hap_case(condition, t, lambda_prev, mu_prev, device.circuit_power)) {
        case HapCase::active_keep: {
            const auto r = disk_radius_dl(t, mu_prev - lambda_prev, channel.phi,
                                          channel.dl_exponent);
            return Disk{device.location, *r};
        }
        case HapCase::dropped:
            return std::nullopt;
        case HapCase::convex_switch:
        case HapCase::root_switch: {
            const double coeff = (t + device.circuit_power - lambda_prev) / device.tx_coeff;
            const double theta = root_theta(coeff, channel.phi / device.tx_coeff,
                                            channel.ul_exponent, channel.dl_exponent);
            return Disk{device.location, theta};
        }
    }
    return std::nullopt;
}

SingleHapResult place_single_hap(const Scenario& scenario, const HapState& state,
                                 std::span<const int> covered, std::span<const int> fresh,
                                 double delta, double sigma) {
    const std::size_t k_count = scenario.devices.size();
    if (covered.empty() && fresh.empty())
        throw std::invalid_argument("place_single_hap: considered device set is empty");
    if (state.lambda_prev.size() != k_count || state.mu_prev.size() != k_count)
        throw std::invalid_argument("place_single_hap: state does not match the scenario");

    std::vector<int> considered(covered.begin(), covered.end());
    considered.insert(considered.end(), fresh.begin(), fresh.end());
    for (int k : considered)
        if (k < 0 || static_cast<std::size_t>(k) >= k_count)
            throw std::invalid_argument("place_single_hap: device index out of range");

    const bool first_hap = state.placed.empty();
    std::vector<HapCondition> cond(considered.size(), HapCondition::switch_to_new);
    if (!first_hap)
        for (std::size_t i = 0; i < covered.size(); ++i) cond[i] = HapCondition::keep;

    const ChannelParams& ch = scenario.channel;
    SingleHapResult out;
    std::vector<Disk> disks;
    disks.reserve(considered.size());

    constexpr int kMaxRounds = 50;
    for (int round = 1; round <= kMaxRounds; ++round) {
        const auto probe = [&](double t) -> ProbeOutcome {
            disks.clear();
            for (std::size_t i = 0; i < considered.size(); ++i) {
                const int k = considered[i];
                const auto d = constraint_to_disk(scenario.devices[k], cond[i], t,
                                                  state.lambda_prev[k], state.mu_prev[k], ch);
                if (d) disks.push_back(*d);
            }
            if (disks.empty()) return {true, scenario.region.center()};
            const FeasibilityResult res = min_max_violation(disks, scenario.region);
            return {res.status == FeasibilityResult::Status::feasible, res.witness};
        };

        const BisectionResult bres =
            bisect_max_feasible(-delta, delta, sigma, scenario.region.center(), probe);
        out.probes += bres.probes;
        out.round_t.push_back(bres.t);
        out.rounds = round;

        bool mismatch = false;
        for (std::size_t i = 0; i < considered.size(); ++i) {
            const Device& dev = scenario.devices[considered[i]];
            const double mu_new = consumption_rate(bres.witness, dev, ch.ul_exponent);
            // Exact ties resolve as keep, so the two conditions partition.
            const HapCondition want = mu_new < state.mu_prev[considered[i]]
                                          ? HapCondition::switch_to_new
                                          : HapCondition::keep;
            if (want != cond[i]) {
                cond[i] = want;
                mismatch = true;
            }
        }
        if (!mismatch) {
            out.location = bres.witness;
            out.t_star = bres.t;
            out.assumptions = std::move(cond);
            return out;
        }
    }
    throw AssociationCyclingError("place_single_hap: assumption cycling after 50 rounds");
}

double hap_bisection_delta(const Scenario& scenario, std::size_t m) {
    double a1_max = 0.0;
    double a2_max = 0.0;
    for (const Device& d : scenario.devices) {
        a1_max = std::max(a1_max, d.circuit_power);
        a2_max = std::max(a2_max, d.tx_coeff);
    }
    const double diam = scenario.region.diagonal();
    return static_cast<double>(m) * scenario.channel.p0 + a1_max +
           a2_max * std::pow(diam, scenario.channel.ul_exponent);
}

std::pair<std::vector<Point2>, SolveReport> greedy_hap_placement(
    const Scenario& scenario, std::size_t m, std::uint64_t seed,
    std::optional<std::vector<int>> cluster_order) {
    const std::size_t k_count = scenario.devices.size();
    if (m < 1) throw std::invalid_argument("greedy_hap_placement: m must be >= 1");

    const std::vector<Point2> points = scenario.device_locations();
    const std::size_t cluster_count = std::min(m, k_count);
    const Clustering clustering = order_clusters(kmeans(points, cluster_count, seed));
    std::vector<int> order = clustering.order;
    if (cluster_order) {
        if (cluster_order->size() != cluster_count)
            throw std::invalid_argument("cluster order override must list every cluster once");
        order = *cluster_order;
    }

    const double delta = hap_bisection_delta(scenario, m);
    HapState state = make_hap_state(k_count);
    std::vector<int> covered;
    covered.reserve(k_count);
    std::vector<Point2> haps;
    haps.reserve(m);
    SolveReport report;

    for (std::size_t i = 0; i < m; ++i) {
        const std::vector<int> fresh =
            i < cluster_count ? clustering.members(order[i]) : std::vector<int>{};
        const SingleHapResult res = place_single_hap(scenario, state, covered, fresh, delta);
        haps.push_back(res.location);
        hap_state_add(state, res.location, scenario);
        covered.insert(covered.end(), fresh.begin(), fresh.end());
        report.history.push_back({static_cast<int>(i) + 1, 'H', res.t_star});
        report.association_rounds += res.rounds;
    }

    report.iterations = static_cast<int>(m);
    const Placement placement = make_placement(haps, haps, scenario);
    report.t_star = evaluate(placement, scenario).p_r;
    return {std::move(haps), std::move(report)};
}

}  // namespace wpcn
