#include "wpcn/planner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "wpcn/hap.hpp"

namespace wpcn {

namespace {

struct Candidate {
    std::size_t m = 0;
    std::size_t n = 0;
    double cost = 0.0;
};

constexpr double kCostTieTol = 1e-9;

// Evaluates candidates[first..last) in index order across `jobs` workers.
template <typename Eval>
void run_batch(std::size_t first, std::size_t last, unsigned jobs, const Eval& eval) {
    if (jobs <= 1 || last - first <= 1) {
        for (std::size_t i = first; i < last; ++i) eval(i);
        return;
    }
    std::atomic<std::size_t> next{first};
    const unsigned workers = std::min<unsigned>(jobs, static_cast<unsigned>(last - first));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < last; i = next.fetch_add(1)) eval(i);
        });
    for (auto& t : pool) t.join();
}

// Shared search skeleton: candidates are pre-sorted by cost; the winner is
// the cheapest feasible cost group's best-t* member, independent of the
// evaluation schedule.
template <typename Eval>
MinCostResult cost_ordered_search(const std::vector<Candidate>& candidates, unsigned jobs,
                                  const Eval& evaluate_candidate) {
    std::vector<std::optional<DeploymentPlan>> plans(candidates.size());

    const auto group_end = [&](std::size_t i) {
        std::size_t e = i + 1;
        while (e < candidates.size() && candidates[e].cost <= candidates[i].cost + kCostTieTol)
            ++e;
        return e;
    };

    MinCostResult out;
    const std::size_t batch = std::max<std::size_t>(1, jobs);
    std::size_t evaluated_upto = 0;
    std::optional<std::size_t> winner;
    while (evaluated_upto < candidates.size() && !winner) {
        const std::size_t stop = std::min(candidates.size(), evaluated_upto + batch);
        run_batch(evaluated_upto, stop, jobs, [&](std::size_t i) {
            plans[i] = evaluate_candidate(candidates[i]);
        });
        evaluated_upto = stop;

        for (std::size_t i = 0; i < evaluated_upto && !winner;) {
            const std::size_t e = group_end(i);
            if (e > evaluated_upto) break;  // group split by the batch edge
            std::optional<std::size_t> best;
            for (std::size_t j = i; j < e; ++j)
                if (plans[j]->feasible && (!best || plans[j]->t_star > plans[*best]->t_star))
                    best = j;
            if (best) winner = best;
            i = e;
        }
    }

    for (std::size_t i = 0; i < evaluated_upto; ++i) {
        const DeploymentPlan& p = *plans[i];
        out.evaluated.push_back({p.m, p.n, p.cost, p.t_star, p.feasible});
        if (!p.feasible &&
            (!out.best_infeasible || p.t_star > out.best_infeasible->t_star))
            out.best_infeasible = p;
    }
    if (winner) {
        out.plan = std::move(plans[*winner]);
        out.best_infeasible.reset();
    }
    return out;
}

}  // namespace

MinCostResult min_cost_separated(const Scenario& scenario, std::size_t m_max, std::size_t n_max,
                                 int l, std::uint64_t seed, unsigned jobs) {
    if (m_max < 1 || n_max < 1)
        throw std::invalid_argument("min_cost_separated: caps must be >= 1");
    const std::size_t k_count = scenario.devices.size();

    std::vector<Candidate> candidates;
    for (std::size_t m = 1; m <= std::min(m_max, k_count); ++m)
        for (std::size_t n = 1; n <= std::min(n_max, k_count); ++n)
            candidates.push_back({m, n,
                                  scenario.costs.c1 * static_cast<double>(m) +
                                      scenario.costs.c2 * static_cast<double>(n)});
    std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.m < b.m;
    });

    return cost_ordered_search(candidates, jobs, [&](const Candidate& c) {
        auto [placement, report] = alternating_joint(scenario, c.m, c.n, l, seed);
        DeploymentPlan plan;
        plan.mode = DeploymentMode::separated;
        plan.m = c.m;
        plan.n = c.n;
        plan.cost = c.cost;
        plan.placement = std::move(placement);
        plan.t_star = evaluate(plan.placement, scenario).p_r;  // fresh re-verification
        plan.feasible = plan.t_star >= scenario.gamma;
        return plan;
    });
}

MinCostResult min_cost_hap(const Scenario& scenario, std::size_t m_max, std::uint64_t seed,
                           unsigned jobs) {
    if (m_max < 1) throw std::invalid_argument("min_cost_hap: cap must be >= 1");
    const std::size_t k_count = scenario.devices.size();

    std::vector<Candidate> candidates;
    for (std::size_t m = 1; m <= std::min(m_max, k_count); ++m)
        candidates.push_back({m, 0, scenario.costs.c3 * static_cast<double>(m)});

    return cost_ordered_search(candidates, jobs, [&](const Candidate& c) {
        auto [haps, report] = greedy_hap_placement(scenario, c.m, seed);
        DeploymentPlan plan;
        plan.mode = DeploymentMode::hap;
        plan.m = c.m;
        plan.n = 0;
        plan.cost = c.cost;
        plan.placement = make_placement(haps, haps, scenario);
        plan.t_star = evaluate(plan.placement, scenario).p_r;
        plan.feasible = plan.t_star >= scenario.gamma;
        return plan;
    });
}

}  // namespace wpcn
