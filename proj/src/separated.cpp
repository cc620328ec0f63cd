#include "wpcn/separated.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wpcn/clustering.hpp"

namespace wpcn {

namespace {

std::vector<int> all_indices(std::size_t k) {
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

std::vector<double> mu_under_aps(const Scenario& scenario, std::span<const Point2> aps) {
    std::vector<double> mu(scenario.devices.size());
    for (std::size_t k = 0; k < scenario.devices.size(); ++k) {
        const Device& dev = scenario.devices[k];
        const std::size_t j = nearest_index(aps, dev.location);
        mu[k] = consumption_rate(aps[j], dev, scenario.channel.ul_exponent);
    }
    return mu;
}

std::vector<int> permutation_or_default(const std::optional<std::vector<int>>& override,
                                        const Clustering& clustering) {
    if (!override) return clustering.order;
    const std::size_t m = clustering.cluster_count();
    if (override->size() != m)
        throw std::invalid_argument("cluster order override must list every cluster once");
    std::vector<bool> seen(m, false);
    for (int c : *override) {
        if (c < 0 || static_cast<std::size_t>(c) >= m || seen[c])
            throw std::invalid_argument("cluster order override must be a permutation");
        seen[c] = true;
    }
    return *override;
}

}  // namespace

SingleEnResult place_single_en(const Scenario& scenario, std::span<const double> mu_fixed,
                               std::span<const double> extra_lambda,
                               std::span<const int> considered, std::optional<double> t_upper,
                               double sigma, const BisectionObserver* observer) {
    const std::size_t k_count = scenario.devices.size();
    if (mu_fixed.size() != k_count || extra_lambda.size() != k_count)
        throw std::invalid_argument("place_single_en: per-device vectors must have K entries");
    std::vector<int> all;
    if (considered.empty()) {
        all = all_indices(k_count);
        considered = all;
    }
    for (int k : considered)
        if (k < 0 || static_cast<std::size_t>(k) >= k_count)
            throw std::invalid_argument("place_single_en: considered index out of range");

    double max_mu = -std::numeric_limits<double>::infinity();
    double min_extra = std::numeric_limits<double>::infinity();
    for (int k : considered) {
        max_mu = std::max(max_mu, mu_fixed[k]);
        min_extra = std::min(min_extra, extra_lambda[k]);
    }
    const double lb = -max_mu + min_extra;
    const double ub = std::max(t_upper.value_or(scenario.channel.p0), lb + 4.0 * sigma);

    const ChannelParams& ch = scenario.channel;
    std::vector<Disk> disks;
    disks.reserve(considered.size());
    const auto probe = [&](double t) -> ProbeOutcome {
        disks.clear();
        for (int k : considered) {
            const auto r = disk_radius_dl(t, mu_fixed[k] - extra_lambda[k], ch.phi, ch.dl_exponent);
            if (r) disks.push_back({scenario.devices[k].location, *r});
        }
        if (disks.empty()) return {true, scenario.region.center()};
        const FeasibilityResult res = min_max_violation(disks, scenario.region);
        return {res.status == FeasibilityResult::Status::feasible, res.witness};
    };

    const BisectionResult bres =
        bisect_max_feasible(lb, ub, sigma, scenario.region.center(), probe, observer);
    return {bres.witness, bres.t, bres.probes};
}

std::pair<std::vector<Point2>, SolveReport> greedy_en_placement(
    const Scenario& scenario, std::span<const Point2> ap_locations, std::size_t m,
    std::uint64_t seed, std::optional<std::vector<int>> cluster_order) {
    const std::size_t k_count = scenario.devices.size();
    if (m < 1) throw std::invalid_argument("greedy_en_placement: m must be >= 1");
    if (ap_locations.empty())
        throw std::invalid_argument("greedy_en_placement: AP set must be non-empty");

    const std::vector<double> mu = mu_under_aps(scenario, ap_locations);
    const std::vector<Point2> points = scenario.device_locations();
    // More ENs than devices: every EN past the K-th sees all devices.
    const std::size_t cluster_count = std::min(m, k_count);
    const Clustering clustering = order_clusters(kmeans(points, cluster_count, seed));
    const std::vector<int> order = permutation_or_default(cluster_order, clustering);

    std::vector<double> extra(k_count, 0.0);
    std::vector<int> considered;
    considered.reserve(k_count);
    std::vector<Point2> ens;
    ens.reserve(m);
    SolveReport report;

    const double ub = static_cast<double>(m) * scenario.channel.p0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i < cluster_count)
            for (int k : clustering.members(order[i])) considered.push_back(k);
        const SingleEnResult res = place_single_en(scenario, mu, extra, considered, ub);
        ens.push_back(res.location);
        report.history.push_back({static_cast<int>(i) + 1, 'E', res.t_star});
        const std::span<const Point2> just_placed{&ens.back(), 1};
        for (std::size_t k = 0; k < k_count; ++k)
            extra[k] += harvest_rate(just_placed, scenario.devices[k].location, scenario.channel);
    }

    report.iterations = static_cast<int>(m);
    const Placement placement = make_placement(
        ens, std::vector<Point2>(ap_locations.begin(), ap_locations.end()), scenario);
    report.t_star = evaluate(placement, scenario).p_r;
    return {std::move(ens), std::move(report)};
}

ApSubproblemResult solve_ap_subproblem(std::span<const int> associations,
                                       std::span<const double> lambda, const Scenario& scenario,
                                       std::size_t n, double sigma) {
    const std::size_t k_count = scenario.devices.size();
    if (n < 1) throw std::invalid_argument("solve_ap_subproblem: n must be >= 1");
    if (associations.size() != k_count || lambda.size() != k_count)
        throw std::invalid_argument("solve_ap_subproblem: per-device vectors must have K entries");
    for (int j : associations)
        if (j < 0 || static_cast<std::size_t>(j) >= n)
            throw std::invalid_argument("solve_ap_subproblem: association out of range");

    const ChannelParams& ch = scenario.channel;
    const double diam = scenario.region.diagonal();

    ApSubproblemResult out;
    out.ap_locations.assign(n, scenario.region.center());
    out.per_ap_t.assign(n, std::numeric_limits<double>::infinity());
    out.t_star = std::numeric_limits<double>::infinity();

    for (std::size_t j = 0; j < n; ++j) {
        std::vector<int> served;
        for (std::size_t k = 0; k < k_count; ++k)
            if (associations[k] == static_cast<int>(j)) served.push_back(static_cast<int>(k));
        if (served.empty()) continue;

        double ub = std::numeric_limits<double>::infinity();
        double lb = std::numeric_limits<double>::infinity();
        for (int k : served) {
            const Device& dev = scenario.devices[k];
            const double head = lambda[k] - dev.circuit_power;
            ub = std::min(ub, head);
            lb = std::min(lb, head - dev.tx_coeff * std::pow(diam, ch.ul_exponent));
        }

        std::vector<Disk> disks;
        disks.reserve(served.size());
        const auto probe = [&](double t) -> ProbeOutcome {
            disks.clear();
            for (int k : served) {
                const auto r = disk_radius_ul(t, lambda[k], scenario.devices[k], ch.ul_exponent);
                if (!r) return {false, {}};
                disks.push_back({scenario.devices[k].location, *r});
            }
            const FeasibilityResult res = min_max_violation(disks, scenario.region);
            return {res.status == FeasibilityResult::Status::feasible, res.witness};
        };

        const BisectionResult bres =
            bisect_max_feasible(lb, ub, sigma, scenario.region.center(), probe);
        out.ap_locations[j] = bres.witness;
        out.per_ap_t[j] = bres.t;
        out.probes += bres.probes;
        for (int k : served)
            if (lambda[k] - scenario.devices[k].circuit_power - bres.t < 0.0)
                out.infeasible_devices.push_back(k);
    }

    for (double t : out.per_ap_t) out.t_star = std::min(out.t_star, t);
    return out;
}

std::pair<Placement, SolveReport> trial_and_error_ap(const Scenario& scenario,
                                                     std::span<const Point2> en_locations,
                                                     std::size_t n, std::uint64_t seed) {
    const std::size_t k_count = scenario.devices.size();
    if (en_locations.empty())
        throw std::invalid_argument("trial_and_error_ap: EN set must be non-empty");
    if (n < 1 || n > k_count)
        throw std::invalid_argument("trial_and_error_ap: n must be in [1, K]");

    std::vector<double> lambda(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
        lambda[k] = harvest_rate(en_locations, scenario.devices[k].location, scenario.channel);

    const std::vector<Point2> points = scenario.device_locations();
    const Clustering clustering = kmeans(points, n, seed);
    std::vector<int> assumed(k_count);
    for (std::size_t k = 0; k < k_count; ++k)
        assumed[k] = static_cast<int>(nearest_index(clustering.centers, points[k]));

    SolveReport report;
    constexpr int kMaxRounds = 50;
    for (int round = 1; round <= kMaxRounds; ++round) {
        const ApSubproblemResult sub = solve_ap_subproblem(assumed, lambda, scenario, n);
        report.history.push_back({round, 'A', sub.t_star});
        report.association_rounds = round;

        std::vector<int> actual(k_count);
        bool changed = false;
        for (std::size_t k = 0; k < k_count; ++k) {
            actual[k] = static_cast<int>(nearest_index(sub.ap_locations, points[k]));
            changed |= actual[k] != assumed[k];
        }
        if (!changed) {
            Placement placement = make_placement(
                std::vector<Point2>(en_locations.begin(), en_locations.end()),
                sub.ap_locations, scenario);
            report.iterations = round;
            report.t_star = evaluate(placement, scenario).p_r;
            return {std::move(placement), std::move(report)};
        }
        assumed = std::move(actual);
    }
    throw AssociationCyclingError("trial_and_error_ap: association cycling after 50 rounds");
}

std::pair<Placement, SolveReport> alternating_joint(const Scenario& scenario, std::size_t m,
                                                    std::size_t n, int l, std::uint64_t seed,
                                                    const AltOptions& options) {
    if (l < 1) throw std::invalid_argument("alternating_joint: iteration budget must be >= 1");
    const std::vector<Point2> points = scenario.device_locations();
    std::vector<Point2> aps = kmeans(points, n, seed).centers;
    std::vector<Point2> ens;
    if (options.ap_phase_first) ens = kmeans(points, m, seed).centers;

    SolveReport report;
    Placement best;
    double best_z = -std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= l; ++iter) {
        const bool en_phase = (iter % 2 == 1) != options.ap_phase_first;
        if (en_phase) {
            auto [new_ens, sub] =
                greedy_en_placement(scenario, aps, m, seed, options.cluster_order);
            ens = std::move(new_ens);
            report.association_rounds += sub.association_rounds;
        } else {
            auto [placement, sub] = trial_and_error_ap(scenario, ens, n, seed);
            aps = std::move(placement.ap_locations);
            report.association_rounds += sub.association_rounds;
        }
        const Placement current = make_placement(ens, aps, scenario);
        const double z = evaluate(current, scenario).p_r;
        report.history.push_back({iter, en_phase ? 'E' : 'A', z});
        if (z > best_z) {
            best_z = z;
            best = current;
        }
    }
    report.iterations = l;
    report.t_star = best_z;
    return {std::move(best), std::move(report)};
}

}  // namespace wpcn
