#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <rankcp/rankmap.hpp>

#include "oracles.hpp"

using rankcp::PointSet;
using rankcp::rank_map;

TEST(RankMap, OneDimensionalSortsOntoGrid) {
    const auto rm = rank_map(PointSet::scalars({1, 3, 2, 4}));
    EXPECT_EQ(rm.ranks, PointSet::scalars({0.25, 0.75, 0.5, 1.0}));
    EXPECT_EQ(rm.assignment, (std::vector<std::size_t>{0, 2, 1, 3}));
}

TEST(RankMap, OneDimensionalTiesKeepInputOrder) {
    const auto rm = rank_map(PointSet::scalars({5, 1, 5, 1}));
    EXPECT_EQ(rm.assignment, (std::vector<std::size_t>{2, 0, 3, 1}));
}

TEST(RankMap, RejectsDegenerateInput) {
    EXPECT_THROW(rank_map(PointSet::scalars({1.0})), std::invalid_argument);
    EXPECT_THROW(rank_map(PointSet(2)), std::invalid_argument);
    EXPECT_THROW(rank_map(PointSet{}), std::invalid_argument);
    EXPECT_THROW(rankcp::PooledSample::pool(PointSet(1), PointSet(2)), std::invalid_argument);
}

TEST(RankMap, PooledSampleKeepsBlockOrder) {
    const auto pooled = rankcp::PooledSample::pool(PointSet::scalars({1, 2}), PointSet::scalars({0.5, 3, 4}));
    EXPECT_EQ(pooled.x_size, 2u);
    EXPECT_EQ(pooled.y_size, 3u);
    EXPECT_EQ(rank_map(pooled).ranks, PointSet::scalars({0.4, 0.6, 0.2, 0.8, 1.0}));
}

TEST(RankMap, CostMatchesExhaustiveSearch) {
    for (std::size_t d : {2u, 3u}) {
        for (std::size_t n = 2; n <= 6; ++n) {
            for (std::uint64_t seed = 0; seed < 100; ++seed) {
                const auto z = oracle::gaussian_points(n, d, 1000 * n + seed);
                const auto ref = rankcp::reference_set(n, d);
                const auto best = oracle::brute_force_assignment(oracle::squared_costs(z, ref.points));
                const auto rm = rank_map(z);
                ASSERT_NEAR(rm.cost, best.cost, 1e-9) << "d=" << d << " n=" << n << " seed=" << seed;
            }
        }
    }
}

TEST(RankMap, RanksAreReferencePoints) {
    const auto z = oracle::gaussian_points(40, 3, 5);
    const auto rm = rank_map(z);
    const auto ref = rankcp::reference_set(40, 3);
    for (std::size_t i = 0; i < z.size(); ++i) {
        const auto r = rm.ranks[i];
        const auto h = ref.points[rm.assignment[i]];
        EXPECT_TRUE(std::equal(r.begin(), r.end(), h.begin()));
    }
}

TEST(RankMap, AssignmentIsBijection) {
    for (std::size_t n : {2u, 33u, 150u, 500u}) {
        auto a = rank_map(oracle::gaussian_points(n, 2, n)).assignment;
        std::sort(a.begin(), a.end());
        std::vector<std::size_t> expected(n);
        std::iota(expected.begin(), expected.end(), std::size_t{0});
        EXPECT_EQ(a, expected);
    }
}

TEST(RankMap, AffineMapLeavesAssignmentUnchanged) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto z = oracle::gaussian_points(30, 2, seed);
        auto w = z;
        const double a = 0.3 + static_cast<double>(seed);
        for (std::size_t i = 0; i < w.size(); ++i) {
            w[i][0] = a * w[i][0] + 4.0;
            w[i][1] = a * w[i][1] - 1.5;
        }
        EXPECT_EQ(rank_map(z).assignment, rank_map(w).assignment) << "seed " << seed;
    }
}

TEST(RankMap, SortPathAgreesWithAssignmentSolver) {
    for (std::size_t n = 2; n <= 8; ++n) {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            const auto z = oracle::gaussian_points(n, 1, 77 * n + seed);
            const auto ref = rankcp::reference_set(n, 1);
            const auto solved = rankcp::solve_assignment(oracle::squared_costs(z, ref.points));
            EXPECT_EQ(rank_map(z).assignment, solved.column_of);
        }
    }
    // With ties the sort keeps input order; the solver's lexicographic tie-break agrees.
    const auto z = PointSet::scalars({2, 1, 2, 1, 2});
    const auto solved = rankcp::solve_assignment(oracle::squared_costs(z, rankcp::reference_set(5, 1).points));
    EXPECT_EQ(rank_map(z).assignment, solved.column_of);
}
