#include "wpcn/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "wpcn/clustering.hpp"
#include "wpcn/random.hpp"

namespace wpcn {

SaConfig sa_default_config(const Scenario& scenario, std::size_t m, std::size_t n,
                           std::uint64_t seed) {
    SaConfig cfg;
    const double step_scale = 0.02 * scenario.region.diagonal();
    cfg.sigma3 = step_scale * step_scale * static_cast<double>(m + n);
    cfg.steps = 5000 * static_cast<long>(m + n);
    cfg.seed = seed;
    cfg.hap_mode = n == 0;
    return cfg;
}

Placement cluster_center_placement(const Scenario& scenario, std::size_t m,
                                   std::optional<std::size_t> n, std::uint64_t seed) {
    const std::size_t k_count = scenario.devices.size();
    if (m < 1 || m > k_count)
        throw std::invalid_argument("cluster_center_placement: m must be in [1, K]");
    const std::vector<Point2> points = scenario.device_locations();
    std::vector<Point2> ens = kmeans(points, m, seed).centers;
    if (!n) return make_placement(ens, ens, scenario);

    if (*n < 1 || *n > k_count)
        throw std::invalid_argument("cluster_center_placement: n must be in [1, K]");
    std::vector<Point2> aps = kmeans(points, *n, seed).centers;
    return make_placement(std::move(ens), std::move(aps), scenario);
}

namespace {

double total_sq(const std::vector<Point2>& deltas) {
    double s = 0.0;
    for (const Point2& d : deltas) s += d.x * d.x + d.y * d.y;
    return s;
}

}  // namespace

std::pair<Placement, double> simulated_annealing(const Scenario& scenario, const Placement& init,
                                                 const SaConfig& config) {
    if (!(config.sigma3 > 0.0)) throw std::invalid_argument("simulated_annealing: sigma3 > 0");
    if (!(config.cooling > 0.0 && config.cooling < 1.0))
        throw std::invalid_argument("simulated_annealing: cooling must be in (0,1)");

    const std::size_t node_count =
        config.hap_mode ? init.en_locations.size()
                        : init.en_locations.size() + init.ap_locations.size();
    if (node_count == 0) throw std::invalid_argument("simulated_annealing: empty placement");

    std::vector<Point2> nodes;
    nodes.reserve(node_count);
    nodes.insert(nodes.end(), init.en_locations.begin(), init.en_locations.end());
    if (!config.hap_mode)
        nodes.insert(nodes.end(), init.ap_locations.begin(), init.ap_locations.end());

    const auto to_placement = [&](const std::vector<Point2>& v) {
        if (config.hap_mode) return make_placement(v, v, scenario);
        std::vector<Point2> ens(v.begin(), v.begin() + init.en_locations.size());
        std::vector<Point2> aps(v.begin() + init.en_locations.size(), v.end());
        return make_placement(std::move(ens), std::move(aps), scenario);
    };
    const auto score = [&](const std::vector<Point2>& v) {
        return evaluate(to_placement(v), scenario).p_r;
    };

    Rng rng(config.seed);
    // Expected total squared displacement sigma3/2; resample past the budget.
    const double stddev = std::sqrt(config.sigma3 / (4.0 * static_cast<double>(node_count)));

    double current_pr = score(nodes);
    std::vector<Point2> best = nodes;
    double best_pr = current_pr;
    double temperature = config.initial_temp;
    std::vector<Point2> deltas(node_count);
    std::vector<Point2> proposal(node_count);

    for (long step = 0; step < config.steps; ++step) {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            for (Point2& d : deltas) d = {stddev * rng.normal(), stddev * rng.normal()};
            if (total_sq(deltas) < config.sigma3) break;
        }
        for (std::size_t i = 0; i < node_count; ++i)
            proposal[i] = scenario.region.clamp(nodes[i] + deltas[i]);

        const double pr = score(proposal);
        const double delta_pr = pr - current_pr;
        if (delta_pr >= 0.0 || rng.uniform() < std::exp(delta_pr / temperature)) {
            nodes = proposal;
            current_pr = pr;
            if (pr > best_pr) {
                best_pr = pr;
                best = nodes;
            }
        }
        temperature *= config.cooling;
    }

    return {to_placement(best), best_pr};
}

}  // namespace wpcn
