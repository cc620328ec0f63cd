#include "wpcn/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wpcn/random.hpp"

namespace wpcn {

std::vector<int> Clustering::members(int cluster) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] == cluster) out.push_back(static_cast<int>(i));
    return out;
}

namespace {

double sq_dist(Point2 a, Point2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

std::vector<Point2> seed_plus_plus(std::span<const Point2> points, std::size_t m, Rng& rng) {
    std::vector<Point2> centers;
    centers.reserve(m);
    centers.push_back(points[rng.index(points.size())]);
    std::vector<double> d2(points.size());
    while (centers.size() < m) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const Point2& c : centers) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            centers.push_back(points[rng.index(points.size())]);
            continue;
        }
        double target = rng.uniform() * total;
        std::size_t pick = points.size() - 1;
        for (std::size_t i = 0; i < points.size(); ++i) {
            target -= d2[i];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        centers.push_back(points[pick]);
    }
    return centers;
}

struct LloydResult {
    std::vector<int> assignment;
    std::vector<Point2> centers;
    double objective = 0.0;
};

LloydResult lloyd(std::span<const Point2> points, std::vector<Point2> centers,
                  std::vector<double>* objective_trace) {
    const std::size_t n = points.size();
    const std::size_t m = centers.size();
    std::vector<int> assignment(n, -1);
    for (int iter = 0; iter < 300; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(points[i], centers[0]);
            for (std::size_t c = 1; c < m; ++c) {
                const double d = sq_dist(points[i], centers[c]);
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(c);
                }
            }
            if (assignment[i] != best) {
                assignment[i] = best;
                changed = true;
            }
        }

        std::vector<Point2> sums(m, Point2{});
        std::vector<int> counts(m, 0);
        for (std::size_t i = 0; i < n; ++i) {
            sums[assignment[i]].x += points[i].x;
            sums[assignment[i]].y += points[i].y;
            ++counts[assignment[i]];
        }
        for (std::size_t c = 0; c < m; ++c) {
            if (counts[c] > 0) {
                centers[c] = {sums[c].x / counts[c], sums[c].y / counts[c]};
            } else {
                // Re-seed an empty cluster from the globally farthest point.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double d = sq_dist(points[i], centers[assignment[i]]);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centers[c] = points[far];
                changed = true;
            }
        }
        if (objective_trace) {
            double obj = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                obj += sq_dist(points[i], centers[assignment[i]]);
            objective_trace->push_back(obj);
        }
        if (!changed) break;
    }

    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) objective += sq_dist(points[i], centers[assignment[i]]);
    return {std::move(assignment), std::move(centers), objective};
}

Clustering to_clustering(LloydResult res, std::size_t m) {
    Clustering out;
    out.assignment = std::move(res.assignment);
    out.centers = std::move(res.centers);
    out.order.resize(m);
    std::iota(out.order.begin(), out.order.end(), 0);
    return out;
}

}  // namespace

Clustering kmeans_single_restart(std::span<const Point2> points, std::size_t m,
                                 std::uint64_t seed, std::vector<double>* objective_trace) {
    if (m < 1 || m > points.size())
        throw std::invalid_argument("kmeans: m must be in [1, point count]");
    Rng rng(seed);
    return to_clustering(lloyd(points, seed_plus_plus(points, m, rng), objective_trace), m);
}

Clustering kmeans(std::span<const Point2> points, std::size_t m, std::uint64_t seed) {
    if (m < 1 || m > points.size())
        throw std::invalid_argument("kmeans: m must be in [1, point count]");

    constexpr int kRestarts = 8;
    LloydResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (int r = 0; r < kRestarts; ++r) {
        Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
        LloydResult cand = lloyd(points, seed_plus_plus(points, m, rng), nullptr);
        if (cand.objective < best.objective) best = std::move(cand);
    }
    return to_clustering(std::move(best), m);
}

double kmeans_objective(std::span<const Point2> points, const Clustering& clustering) {
    double obj = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        obj += sq_dist(points[i], clustering.centers[clustering.assignment[i]]);
    return obj;
}

Clustering order_clusters(Clustering clustering) {
    const std::size_t m = clustering.centers.size();
    std::vector<int> sizes(m, 0);
    for (int a : clustering.assignment) ++sizes[a];
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (sizes[a] != sizes[b]) return sizes[a] > sizes[b];
        if (clustering.centers[a].x != clustering.centers[b].x)
            return clustering.centers[a].x < clustering.centers[b].x;
        return clustering.centers[a].y < clustering.centers[b].y;
    });
    clustering.order = std::move(order);
    return clustering;
}

}  // namespace wpcn
