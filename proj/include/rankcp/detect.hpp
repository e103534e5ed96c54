#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "point_set.hpp"
#include "random.hpp"
#include "rankmap.hpp"
#include "statistic.hpp"

// Divisive multiple change point detection on rank energy statistics with
// permutation significance.
//
// Each segment test draws its replicates from substreams addressed by
// (seed, segment start, segment end, replicate), so a p-value depends only on
// the segment and the seed, never on evaluation order or thread count.
// Successive tests are not corrected for multiplicity.

namespace rankcp {

struct DetectConfig {
    StatConfig stat;
    std::size_t permutations = 199;
    double sig_level = 0.05;
    std::optional<std::size_t> max_changepoints;  // unbounded when empty
    std::uint64_t seed = 0;
    unsigned threads = 1;  // replicate workers; does not affect results

    void validate() const {
        stat.validate();
        if (permutations < 19) throw std::invalid_argument("permutations must be at least 19");
        if (!(sig_level > 0.0 && sig_level < 1.0)) throw std::invalid_argument("sig_level must lie in (0, 1)");
        if (max_changepoints && *max_changepoints < 1) throw std::invalid_argument("max_changepoints must be >= 1");
    }
};

struct ChangePoint {
    std::size_t index = 0;  // split after observation `index` (1-based), i.e. first `index` points on the left
    double p_value = 1.0;
    double q_value = 0.0;
    std::size_t order_found = 0;

    friend bool operator==(const ChangePoint&, const ChangePoint&) = default;
};

// Half-open range [start, end) of 0-based observation positions.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

struct TraceEntry {
    std::size_t iteration = 0;
    Segment segment;
    std::size_t tau = 0;    // global change point candidate (same convention as ChangePoint::index)
    std::size_t kappa = 0;  // global right boundary of the Y block
    double q_value = 0.0;
    double p_value = 1.0;
    bool accepted = false;

    friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct DetectionReport {
    std::size_t series_length = 0;
    std::size_t dim = 0;
    DetectConfig config;
    std::vector<ChangePoint> change_points;  // sorted by index
    std::vector<Segment> segments;           // sorted, covering [0, series_length)
    std::vector<TraceEntry> trace;
};

// Add-one permutation p-value: (1 + #{q_r >= observed}) / (R + 1).
inline double permutation_pvalue_from(double observed, std::span<const double> replicates) {
    const auto exceed = std::count_if(replicates.begin(), replicates.end(), [&](double q) { return q >= observed; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(replicates.size()) + 1.0);
}

namespace detail {

template <class Fn>
void for_each_replicate(std::size_t count, unsigned threads, Fn&& fn) {
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers == 1) {
        for (std::size_t r = 0; r < count; ++r) fn(r);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t r = w; r < count; r += workers) fn(r);
        });
}

inline std::vector<std::size_t> replicate_order(std::size_t length, std::uint64_t seed, std::uint64_t stream,
                                                std::size_t replicate) {
    std::vector<std::size_t> order(length);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(derive_seed(seed, {stream, replicate}));
    shuffle(std::span<std::size_t>(order), rng);
    return order;
}

}  // namespace detail

// Q statistics of R random relabelings of the segment, each re-maximized in
// the configured search mode. In fast mode the pooled set of every relabeling
// is the segment itself, so its rank map is computed once and reused.
inline std::vector<double> permutation_replicates(const PointSet& segment, const DetectConfig& config,
                                                  std::uint64_t stream = 0) {
    config.validate();
    const std::size_t t_len = segment.size();
    std::vector<double> q(config.permutations);

    if (config.stat.mode == SearchMode::fast) {
        const RankDistances distances(rank_map(segment).ranks, config.stat.alpha);
        detail::for_each_replicate(config.permutations, config.threads, [&](std::size_t r) {
            const auto order = detail::replicate_order(t_len, config.seed, stream, r);
            q[r] = scan_tau(distances, order, t_len, config.stat.min_size).q_value;
        });
    } else {
        detail::for_each_replicate(config.permutations, config.threads, [&](std::size_t r) {
            const auto order = detail::replicate_order(t_len, config.seed, stream, r);
            q[r] = split_scan(segment.gather(order), config.stat).q_value;
        });
    }
    return q;
}

inline double permutation_pvalue(const PointSet& segment, const SplitStatistic& observed, const DetectConfig& config,
                                 std::uint64_t stream = 0) {
    config.validate();
    const std::size_t t_len = segment.size();
    if (t_len < 2 * config.stat.min_size)
        throw std::invalid_argument("permutation_pvalue: segment admits no split");
    if (observed.kappa > t_len || (config.stat.mode == SearchMode::fast && observed.kappa != t_len) ||
        observed.tau == 0 || observed.tau >= observed.kappa)
        throw std::invalid_argument("permutation_pvalue: observed split does not belong to a segment of length " +
                                    std::to_string(t_len));
    const auto q = permutation_replicates(segment, config, stream);
    return permutation_pvalue_from(observed.q_value, q);
}

inline std::uint64_t segment_stream(const Segment& s) {
    return (static_cast<std::uint64_t>(s.start) << 32) ^ static_cast<std::uint64_t>(s.end);
}

// Repeatedly splits the segment whose best split has the largest Q, as long
// as that split is significant at config.sig_level.
inline DetectionReport e_divisive(const PointSet& series, const DetectConfig& config) {
    config.validate();
    const std::size_t t_len = series.size();
    const std::size_t min_size = config.stat.min_size;
    if (t_len < 2 * min_size)
        throw std::invalid_argument("series of length " + std::to_string(t_len) +
                                    " is shorter than 2 * min_size = " + std::to_string(2 * min_size));

    DetectionReport report;
    report.series_length = t_len;
    report.dim = series.dim();
    report.config = config;

    struct Candidate {
        Segment segment;
        std::optional<SplitStatistic> best;  // empty when the segment is too short to split
    };
    auto make_candidate = [&](Segment s) {
        Candidate c{s, std::nullopt};
        if (s.length() >= 2 * min_size) c.best = split_scan(series.slice(s.start, s.end), config.stat);
        return c;
    };

    std::vector<Candidate> candidates{make_candidate({0, t_len})};
    std::size_t found = 0;
    for (std::size_t iteration = 1;; ++iteration) {
        if (config.max_changepoints && found >= *config.max_changepoints) break;

        std::optional<std::size_t> pick;
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (!candidates[k].best) continue;
            if (!pick || detail::improves(candidates[k].best->q_value, candidates[*pick].best->q_value)) pick = k;
        }
        if (!pick) break;

        const Segment seg = candidates[*pick].segment;
        const SplitStatistic split = *candidates[*pick].best;
        const double p = permutation_pvalue(series.slice(seg.start, seg.end), split, config, segment_stream(seg));
        const bool accepted = p <= config.sig_level;
        report.trace.push_back({iteration, seg, seg.start + split.tau, seg.start + split.kappa, split.q_value, p, accepted});
        if (!accepted) break;

        ++found;
        const std::size_t cut = seg.start + split.tau;
        report.change_points.push_back({cut, p, split.q_value, found});
        candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(*pick));
        candidates.insert(candidates.begin() + static_cast<std::ptrdiff_t>(*pick),
                          {make_candidate({seg.start, cut}), make_candidate({cut, seg.end})});
    }

    std::sort(report.change_points.begin(), report.change_points.end(),
              [](const ChangePoint& a, const ChangePoint& b) { return a.index < b.index; });
    for (const auto& c : candidates) report.segments.push_back(c.segment);
    return report;
}

}  // namespace rankcp
