#include <gtest/gtest.h>

#include <rankcp/simulate.hpp>

using namespace rankcp;

namespace {

RegimeSpec two_gaussians(std::uint64_t seed) {
    RegimeSpec spec;
    spec.dim = 1;
    spec.seed = seed;
    spec.segments = {{50, GaussianRegime{{0.0}, {1.0}}}, {50, GaussianRegime{{3.0}, {1.0}}}};
    return spec;
}

double mean(const PointSet& p, std::size_t first, std::size_t last) {
    double s = 0;
    for (std::size_t i = first; i < last; ++i) s += p[i][0];
    return s / static_cast<double>(last - first);
}

}  // namespace

TEST(GenSeries, SingleSegmentHasNoChangePoints) {
    RegimeSpec spec;
    spec.seed = 4;
    spec.segments = {{50, GaussianRegime{{0.0}, {1.0}}}};
    const auto s = gen_series(spec);
    EXPECT_EQ(s.length(), 50u);
    EXPECT_EQ(s.dim(), 1u);
    EXPECT_TRUE(spec.change_points().empty());
}

TEST(GenSeries, MeanShiftVisibleInSample) {
    const auto spec = two_gaussians(12);
    const auto s = gen_series(spec);
    EXPECT_EQ(spec.change_points(), std::vector<std::size_t>{50});
    EXPECT_NEAR(mean(s.observations, 50, 100) - mean(s.observations, 0, 50), 3.0, 0.5);
}

TEST(GenSeries, DeterministicGivenSeed) {
    EXPECT_EQ(gen_series(two_gaussians(3)).observations, gen_series(two_gaussians(3)).observations);
    EXPECT_NE(gen_series(two_gaussians(3)).observations, gen_series(two_gaussians(4)).observations);
}

TEST(GenSeries, SegmentsUseIndependentSubstreams) {
    auto a = two_gaussians(5);
    auto b = a;
    b.segments[1].regime = StudentTRegime{3.0, {1.0}, {2.0}};
    b.segments[1].length = 20;
    const auto sa = gen_series(a), sb = gen_series(b);
    EXPECT_EQ(sa.observations.slice(0, 50), sb.observations.slice(0, 50));
}

TEST(GenSeries, UniformAndStudentTRespectParameters) {
    RegimeSpec spec;
    spec.dim = 3;
    spec.seed = 1;
    spec.segments = {{200, UniformRegime{-2.0, -1.0}}, {10, StudentTRegime{2.5, {0, 0, 0}, {1, 1, 1}}}};
    const auto s = gen_series(spec);
    EXPECT_EQ(s.length(), 210u);
    for (std::size_t i = 0; i < 200; ++i)
        for (double v : s.observations[i]) {
            EXPECT_GE(v, -2.0);
            EXPECT_LT(v, -1.0);
        }
}

TEST(GenSeries, RejectsInvalidSpecs) {
    RegimeSpec empty;
    EXPECT_THROW(gen_series(empty), std::invalid_argument);
    auto bad_scale = two_gaussians(1);
    bad_scale.segments[0].regime = GaussianRegime{{0.0}, {0.0}};
    EXPECT_THROW(gen_series(bad_scale), std::invalid_argument);
    auto bad_dof = two_gaussians(1);
    bad_dof.segments[0].regime = StudentTRegime{-1.0, {0.0}, {1.0}};
    EXPECT_THROW(gen_series(bad_dof), std::invalid_argument);
    auto wrong_dim = two_gaussians(1);
    wrong_dim.dim = 2;
    EXPECT_THROW(gen_series(wrong_dim), std::invalid_argument);
    auto zero_len = two_gaussians(1);
    zero_len.segments[0].length = 0;
    EXPECT_THROW(gen_series(zero_len), std::invalid_argument);
}

TEST(RegimeSpecJson, ParsesAndBroadcastsScalars) {
    const auto j = nlohmann::json::parse(R"({"dim": 2, "seed": 7, "segments": [
        {"length": 30, "distribution": "gaussian", "mean": 0, "scale": [1, 2]},
        {"length": 20, "distribution": "student_t", "dof": 4, "mean": [1, -1]},
        {"length": 10, "distribution": "uniform", "lo": -1, "hi": 1}]})");
    const auto spec = regime_spec_from_json(j);
    EXPECT_EQ(spec.dim, 2u);
    EXPECT_EQ(spec.seed, 7u);
    ASSERT_EQ(spec.segments.size(), 3u);
    const auto& g = std::get<GaussianRegime>(spec.segments[0].regime);
    EXPECT_EQ(g.mean, (std::vector<double>{0, 0}));
    EXPECT_EQ(g.scale, (std::vector<double>{1, 2}));
    const auto& t = std::get<StudentTRegime>(spec.segments[1].regime);
    EXPECT_EQ(t.scale, (std::vector<double>{1, 1}));
    EXPECT_EQ(spec.change_points(), (std::vector<std::size_t>{30, 50}));
    EXPECT_THROW(regime_spec_from_json(nlohmann::json::parse(
                     R"({"segments": [{"length": 3, "distribution": "gamma"}]})")),
                 std::invalid_argument);
}
