#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "point_set.hpp"
#include "rankmap.hpp"

namespace rankcp {

enum class SearchMode { exact, fast };

inline std::string_view to_string(SearchMode mode) { return mode == SearchMode::exact ? "exact" : "fast"; }

inline SearchMode parse_search_mode(std::string_view text) {
    if (text == "exact") return SearchMode::exact;
    if (text == "fast") return SearchMode::fast;
    throw std::invalid_argument("unknown search mode '" + std::string(text) + "' (expected exact or fast)");
}

struct StatConfig {
    double alpha = 1.0;          // distance exponent, 0 < alpha < 2
    std::size_t min_size = 30;   // smallest admissible block on either side of a split
    SearchMode mode = SearchMode::fast;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in the open interval (0, 2)");
        if (min_size < 2) throw std::invalid_argument("min_size must be at least 2");
    }
};

// Best split of a segment: X = Z_1..Z_tau, Y = Z_{tau+1}..Z_kappa (1-based).
struct SplitStatistic {
    std::size_t tau = 0;
    std::size_t kappa = 0;
    double q_value = 0.0;

    friend bool operator==(const SplitStatistic&, const SplitStatistic&) = default;
};

namespace detail {

inline void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("alpha must lie in the open interval (0, 2)");
}

inline double distance_power(std::span<const double> a, std::span<const double> b, double alpha) {
    const double d = std::sqrt(squared_distance(a, b));
    return alpha == 1.0 ? d : std::pow(d, alpha);
}

// Combines the three pairwise sums of the rank energy statistic into Q.
inline double divergence_from_sums(double cross, double within_x, double within_y, std::size_t n, std::size_t m) {
    const double nx = static_cast<double>(n);
    const double ny = static_cast<double>(m);
    const double energy = 2.0 * cross / (nx * ny) - within_x / (nx * (nx - 1.0) / 2.0) -
                          within_y / (ny * (ny - 1.0) / 2.0);
    return nx * ny / (nx + ny) * energy;
}

// A later candidate must beat the incumbent by this relative margin, so
// that ties resolve to the earliest candidate regardless of summation order.
inline constexpr double kArgmaxTieTolerance = 1e-12;

inline bool improves(double candidate, double incumbent) {
    return candidate > incumbent + kArgmaxTieTolerance * std::max(1.0, std::abs(incumbent));
}

}  // namespace detail

inline double rank_energy(const PointSet& ranks_x, const PointSet& ranks_y, double alpha) {
    const std::size_t n = ranks_x.size();
    const std::size_t m = ranks_y.size();
    if (n < 2 || m < 2) throw std::invalid_argument("rank_energy: each block needs at least two points");
    if (ranks_x.dim() != ranks_y.dim()) throw std::invalid_argument("rank_energy: blocks differ in dimension");
    detail::check_alpha(alpha);

    // Cross terms are summed in sorted order so that swapping the blocks
    // reproduces the value bit for bit.
    std::vector<double> cross_terms;
    cross_terms.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) cross_terms.push_back(detail::distance_power(ranks_x[i], ranks_y[j], alpha));
    std::sort(cross_terms.begin(), cross_terms.end());
    const double cross = std::accumulate(cross_terms.begin(), cross_terms.end(), 0.0);

    double within_x = 0.0, within_y = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k) within_x += detail::distance_power(ranks_x[i], ranks_x[k], alpha);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) within_y += detail::distance_power(ranks_y[j], ranks_y[k], alpha);

    const double nx = static_cast<double>(n);
    const double ny = static_cast<double>(m);
    return 2.0 * cross / (nx * ny) - (within_x / (nx * (nx - 1.0) / 2.0) + within_y / (ny * (ny - 1.0) / 2.0));
}

inline double scaled_divergence(const PointSet& ranks_x, const PointSet& ranks_y, double alpha) {
    const double n = static_cast<double>(ranks_x.size());
    const double m = static_cast<double>(ranks_y.size());
    return n * m / (n + m) * rank_energy(ranks_x, ranks_y, alpha);
}

// Symmetric matrix of |r_i - r_j|^alpha over one set of ranks.
class RankDistances {
public:
    RankDistances(const PointSet& ranks, double alpha) : n_(ranks.size()), d_(n_ * n_, 0.0) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                d_[i * n_ + j] = d_[j * n_ + i] = detail::distance_power(ranks[i], ranks[j], alpha);
    }

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<double> d_;
};

namespace detail {

// Moves one point at a time from the Y block into the X block over the first
// `kappa` entries of `order`, updating the three pairwise sums in O(kappa)
// per step, and calls visit(tau, q) for every admissible tau.
template <class Visit>
void sweep_tau(const RankDistances& distances, std::span<const std::size_t> order, std::size_t kappa,
               std::size_t min_size, Visit&& visit) {
    if (kappa < 2 * min_size) return;

    double within_x = 0.0, within_y = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < kappa; ++i)
        for (std::size_t j = i + 1; j < kappa; ++j) within_y += distances(order[i], order[j]);

    for (std::size_t t = 0; t + min_size < kappa; ++t) {
        const std::size_t moving = order[t];
        double to_x = 0.0, to_y = 0.0;
        for (std::size_t i = 0; i < t; ++i) to_x += distances(moving, order[i]);
        for (std::size_t j = t + 1; j < kappa; ++j) to_y += distances(moving, order[j]);
        within_x += to_x;
        within_y -= to_y;
        cross += to_y - to_x;

        const std::size_t tau = t + 1;
        if (tau >= min_size) visit(tau, divergence_from_sums(cross, within_x, within_y, tau, kappa - tau));
    }
}

}  // namespace detail

// Q for tau = min_size .. kappa - min_size, in order.
inline std::vector<double> q_profile(const RankDistances& distances, std::span<const std::size_t> order,
                                     std::size_t kappa, std::size_t min_size) {
    std::vector<double> q;
    detail::sweep_tau(distances, order, kappa, min_size, [&](std::size_t, double value) { q.push_back(value); });
    return q;
}

// Best tau for a fixed kappa; tau = 0 and q_value = -inf when no split is admissible.
inline SplitStatistic scan_tau(const RankDistances& distances, std::span<const std::size_t> order, std::size_t kappa,
                               std::size_t min_size) {
    SplitStatistic best{0, kappa, -std::numeric_limits<double>::infinity()};
    detail::sweep_tau(distances, order, kappa, min_size, [&](std::size_t tau, double q) {
        if (best.tau == 0 || detail::improves(q, best.q_value)) best = {tau, kappa, q};
    });
    return best;
}

// Maximizes Q over admissible (tau, kappa). Exact mode recomputes the joint
// rank map of Z_1..Z_kappa for every kappa; fast mode fixes kappa = T and
// uses a single rank map of the whole segment. Ties go to the smallest
// kappa, then the smallest tau.
inline SplitStatistic split_scan(const PointSet& segment, const StatConfig& config) {
    config.validate();
    const std::size_t t_len = segment.size();
    if (t_len < 2 * config.min_size)
        throw std::invalid_argument("split_scan: segment of length " + std::to_string(t_len) +
                                    " admits no split with min_size " + std::to_string(config.min_size));

    if (config.mode == SearchMode::fast) {
        const RankDistances distances(rank_map(segment).ranks, config.alpha);
        std::vector<std::size_t> order(t_len);
        std::iota(order.begin(), order.end(), std::size_t{0});
        return scan_tau(distances, order, t_len, config.min_size);
    }

    SplitStatistic best{};
    bool have_best = false;
    std::vector<std::size_t> order(t_len);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t kappa = 2 * config.min_size; kappa <= t_len; ++kappa) {
        const RankDistances distances(rank_map(segment.slice(0, kappa)).ranks, config.alpha);
        const auto candidate = scan_tau(distances, order, kappa, config.min_size);
        if (!have_best || detail::improves(candidate.q_value, best.q_value)) {
            best = candidate;
            have_best = true;
        }
    }
    return best;
}

}  // namespace rankcp
