#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "assignment.hpp"
#include "point_set.hpp"
#include "sequence.hpp"

namespace rankcp {

// Two samples stacked X block first, then Y block.
struct PooledSample {
    PointSet points;
    std::size_t x_size = 0;
    std::size_t y_size = 0;

    static PooledSample pool(const PointSet& x, const PointSet& y) {
        if (x.dim() != y.dim()) throw std::invalid_argument("PooledSample: blocks differ in dimension");
        PooledSample out{x, x.size(), y.size()};
        out.points.reserve(x.size() + y.size());
        for (std::size_t i = 0; i < y.size(); ++i) out.points.push_back(y[i]);
        return out;
    }
};

// Optimal-transport multivariate ranks of a pooled sample: the minimum
// squared-Euclidean-cost bijection onto reference_set(N, d).
struct RankMap {
    std::vector<std::size_t> assignment;  // sample i -> reference point assignment[i] (0-based)
    PointSet ranks;                       // ranks[i] == reference point assignment[i]
    double cost = 0.0;                    // sum_i |z_i - h_assignment[i]|^2
};

inline RankMap rank_map(const PointSet& pooled) {
    const std::size_t n = pooled.size();
    if (n == 0) throw std::invalid_argument("rank_map: empty sample");
    if (n < 2) throw std::invalid_argument("rank_map: at least two pooled points are required");

    const auto ref = reference_set(n, pooled.dim());
    RankMap out;
    out.assignment.resize(n);

    if (pooled.dim() == 1) {
        // The i-th smallest value goes to grid point i/N; equal values keep input order.
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pooled[a][0] < pooled[b][0]; });
        for (std::size_t pos = 0; pos < n; ++pos) out.assignment[order[pos]] = pos;
    } else {
        CostMatrix costs(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) costs(i, j) = squared_distance(pooled[i], ref.points[j]);
        out.assignment = solve_assignment(costs).column_of;
    }

    out.ranks = ref.points.gather(out.assignment);
    for (std::size_t i = 0; i < n; ++i) out.cost += squared_distance(pooled[i], out.ranks[i]);
    return out;
}

inline RankMap rank_map(const PooledSample& pooled) {
    if (pooled.x_size + pooled.y_size != pooled.points.size())
        throw std::invalid_argument("rank_map: block sizes do not add up to the pooled size");
    return rank_map(pooled.points);
}

}  // namespace rankcp
