#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace rankcp {

// Dense square cost matrix, row-major.
class CostMatrix {
public:
    CostMatrix() = default;
    explicit CostMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        CostMatrix m(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != rows.size())
                throw std::invalid_argument("solve_assignment: cost matrix is not square");
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * m.n_));
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    std::span<const double> values() const noexcept { return data_; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct Assignment {
    std::vector<std::size_t> column_of;  // row i is matched to column column_of[i]
    double cost = 0.0;
};

namespace detail {

struct DualSolution {
    std::vector<std::size_t> column_of;
    std::vector<double> row_potential;
    std::vector<double> column_potential;
};

// Shortest augmenting path Hungarian method with potentials, O(n^3).
// On return every reduced cost c(i,j) - u(i) - v(j) is >= 0 up to rounding
// and is zero on the matched edges.
inline DualSolution hungarian(const CostMatrix& costs) {
    const std::size_t n = costs.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    // 1-based internally; column 0 is the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        row_of[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = row_of[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = costs(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (row_of[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    DualSolution out;
    out.column_of.assign(n, 0);
    out.row_potential.assign(u.begin() + 1, u.end());
    out.column_potential.assign(v.begin() + 1, v.end());
    for (std::size_t j = 1; j <= n; ++j) out.column_of[row_of[j] - 1] = j - 1;
    return out;
}

inline double total_cost(const CostMatrix& costs, std::span<const std::size_t> column_of) {
    double s = 0.0;
    for (std::size_t i = 0; i < column_of.size(); ++i) s += costs(i, column_of[i]);
    return s;
}

// Moves an optimal matching to the lexicographically smallest matching whose
// edges are all tight under the given potentials. Row by row, the smallest
// admissible column is taken if an alternating path through tight edges can
// release the row's current column.
inline void lexicographic_refine(const CostMatrix& costs, DualSolution& dual, double tolerance) {
    const std::size_t n = costs.size();
    auto& column_of = dual.column_of;
    std::vector<std::size_t> row_of(n);
    for (std::size_t i = 0; i < n; ++i) row_of[column_of[i]] = i;

    auto tight = [&](std::size_t r, std::size_t c) {
        return costs(r, c) - dual.row_potential[r] - dual.column_potential[c] <= tolerance;
    };

    const double optimum = total_cost(costs, column_of);
    std::vector<char> fixed_column(n, 0);
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> reached_from(n);
    std::deque<std::size_t> queue;

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t current = column_of[i];
        for (std::size_t j = 0; j < current; ++j) {
            if (fixed_column[j] || !tight(i, j)) continue;

            // Alternating path from the owner of j to the column i gives up.
            std::fill(reached_from.begin(), reached_from.end(), none);
            queue.assign(1, row_of[j]);
            bool found = false;
            while (!queue.empty() && !found) {
                const std::size_t r = queue.front();
                queue.pop_front();
                for (std::size_t c = 0; c < n; ++c) {
                    if (fixed_column[c] || c == j || reached_from[c] != none || !tight(r, c)) continue;
                    reached_from[c] = r;
                    if (c == current) {
                        found = true;
                        break;
                    }
                    queue.push_back(row_of[c]);
                }
            }
            if (!found) continue;

            auto candidate = column_of;
            for (std::size_t c = current;;) {
                const std::size_t r = reached_from[c];
                const std::size_t previous = candidate[r];
                candidate[r] = c;
                if (r == row_of[j]) break;
                c = previous;
            }
            candidate[i] = j;
            if (total_cost(costs, candidate) > optimum + tolerance) continue;

            column_of = std::move(candidate);
            for (std::size_t r = 0; r < n; ++r) row_of[column_of[r]] = r;
            break;
        }
        fixed_column[column_of[i]] = 1;
    }
}

}  // namespace detail

// Absolute tie tolerance on total cost, scaled by max(1, largest |entry|).
inline constexpr double kAssignmentTieTolerance = 1e-12;

// Exact minimum-cost perfect assignment. Among optimal assignments (total
// cost within the tie tolerance) the lexicographically smallest column
// sequence is returned.
inline Assignment solve_assignment(const CostMatrix& costs) {
    double scale = 1.0;
    for (double c : costs.values()) {
        if (!std::isfinite(c)) throw std::invalid_argument("solve_assignment: non-finite cost");
        scale = std::max(scale, std::abs(c));
    }
    if (costs.size() == 0) return {};

    auto dual = detail::hungarian(costs);
    detail::lexicographic_refine(costs, dual, kAssignmentTieTolerance * scale);

    Assignment out;
    out.cost = detail::total_cost(costs, dual.column_of);
    out.column_of = std::move(dual.column_of);
    return out;
}

inline Assignment solve_assignment(const std::vector<std::vector<double>>& rows) {
    return solve_assignment(CostMatrix::from_rows(rows));
}

}  // namespace rankcp
