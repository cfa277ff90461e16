#include <gtest/gtest.h>

#include "subldpc/density_evolution.hpp"
#include "subldpc/mc.hpp"

using namespace subldpc;

TEST(ParallelFor, CoversEveryIndexOnce) {
    std::vector<int> hits(1000, 0);
    parallel_for(1000, 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Concentration, FullDimensionAlwaysInWindow) {
    // d1 = m makes the intersection equal V2, landing exactly on the anchor
    const auto rep = mc_concentration(6, 2, 6, 3, 1, 500, 12345);
    EXPECT_DOUBLE_EQ(rep.freq_intersection, 1.0);
    EXPECT_DOUBLE_EQ(rep.freq_sum, 1.0);
}

TEST(Concentration, WindowCoveringAllOutcomesHasFrequencyOne) {
    const auto rep = mc_concentration(6, 2, 3, 3, 7, 500, 999);
    EXPECT_DOUBLE_EQ(rep.freq_intersection, 1.0);
    EXPECT_DOUBLE_EQ(rep.freq_sum, 1.0);
}

TEST(Concentration, RespectsAnalyticBoundAtSmallScale) {
    // m = 12, d1 = d2 = 8, k = 2: bound = 1 - 2^{-2} = 0.75
    const auto rep = mc_concentration(12, 2, 8, 8, 2, 2000, 777);
    EXPECT_NEAR(rep.bound, 0.75, 1e-12);
    const double sigma = std::sqrt(0.75 * 0.25 / 2000.0);
    EXPECT_GE(rep.freq_intersection, rep.bound - 3 * sigma);
    EXPECT_GE(rep.freq_sum, rep.bound - 3 * sigma);
}

TEST(Concentration, BoundIncludesDeficitTerm) {
    // m - d1 - d2 = 4 adds q^{-4} to the exponent
    const auto rep = mc_concentration(12, 2, 4, 4, 1, 100, 5);
    EXPECT_NEAR(rep.bound, 1.0 - std::pow(2.0, -5.0), 1e-12);
}

TEST(Concentration, ThreadCountDoesNotChangeResults) {
    const auto a = mc_concentration(10, 2, 6, 6, 2, 400, 2024, 1);
    const auto b = mc_concentration(10, 2, 6, 6, 2, 400, 2024, 2);
    EXPECT_DOUBLE_EQ(a.freq_intersection, b.freq_intersection);
    EXPECT_DOUBLE_EQ(a.freq_sum, b.freq_sum);
}

TEST(SubspaceDe, ZeroNoiseGivesZeroDims) {
    const auto means = mc_subspace_de(3, 6, 12, 2, 0.0, 3, 50, 42);
    ASSERT_EQ(means.size(), 4u);
    for (double v : means) EXPECT_DOUBLE_EQ(v, 0.0);
}

TEST(SubspaceDe, InitialMeanIsChannelDimension) {
    const auto means = mc_subspace_de(3, 6, 20, 2, 0.25, 1, 30, 43);
    EXPECT_DOUBLE_EQ(means[0], 0.25);
}

TEST(SubspaceDe, TracksScalarRecursionAtModerateDimension) {
    // eps = 0.19 walks through a nonzero intermediate value: the scalar
    // trace is [0.19, 0.09, 0, 0], so this exercises genuine tracking
    const auto scalar = de_regular_trace(3, 6, 0.19, 3);
    const auto means = mc_subspace_de(3, 6, 100, 2, 0.19, 3, 120, 44);
    ASSERT_EQ(means.size(), 4u);
    EXPECT_GT(means[1], 0.02);
    for (std::size_t t = 0; t < means.size(); ++t) {
        EXPECT_NEAR(means[t], scalar[t], 0.05) << "iteration " << t;
    }
}

TEST(SubspaceDe, MeansNeverExceedChannelRate) {
    const auto means = mc_subspace_de(3, 6, 20, 2, 0.5, 4, 60, 45);
    for (double v : means) EXPECT_LE(v, 0.5 + 1e-12);
}

TEST(SubspaceDe, ThreadCountDoesNotChangeResults) {
    const auto a = mc_subspace_de(3, 6, 16, 2, 0.25, 2, 40, 46, 1);
    const auto b = mc_subspace_de(3, 6, 16, 2, 0.25, 2, 40, 46, 2);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t t = 0; t < a.size(); ++t) EXPECT_DOUBLE_EQ(a[t], b[t]);
}
