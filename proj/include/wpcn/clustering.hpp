#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wpcn/model.hpp"

namespace wpcn {

/// Geographic partition of devices used by the greedy placement algorithms.
struct Clustering {
    std::vector<int> assignment;  // point index -> cluster in [0, m)
    std::vector<Point2> centers;
    std::vector<int> order;  // processing order over cluster indices

    std::size_t cluster_count() const { return centers.size(); }
    std::vector<int> members(int cluster) const;
};

/// Lloyd's algorithm from k-means++ seeding, deterministic per seed
/// (several seeded restarts, best objective kept). Empty clusters are
/// re-seeded from the farthest point. order is left as the identity.
Clustering kmeans(std::span<const Point2> points, std::size_t m, std::uint64_t seed);

/// One seeded restart. objective_trace, when given, receives the objective
/// after each Lloyd center update (a non-increasing sequence).
Clustering kmeans_single_restart(std::span<const Point2> points, std::size_t m,
                                 std::uint64_t seed,
                                 std::vector<double>* objective_trace = nullptr);

/// Sum of squared distances of points to their assigned centers.
double kmeans_objective(std::span<const Point2> points, const Clustering& clustering);

/// Clusters sorted by decreasing size; ties by increasing center x, then y.
Clustering order_clusters(Clustering clustering);

}  // namespace wpcn
