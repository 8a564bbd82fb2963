#include <gtest/gtest.h>

#include <cmath>

#include <mbfts/partition.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "published.hpp"

using namespace mbfts;

TEST(BasePartition, FourEqualIntervals) {
    const auto base = build_base_partition({900, 1700}, 4);
    ASSERT_EQ(base.size(), 4u);
    const double expected[][2] = {{900, 1100}, {1100, 1300}, {1300, 1500}, {1500, 1700}};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_DOUBLE_EQ(base[i].lo, expected[i][0]);
        EXPECT_DOUBLE_EQ(base[i].hi, expected[i][1]);
    }
}

TEST(BasePartition, SingleIntervalIsIdentity) {
    const auto base = build_base_partition({0, 1}, 1);
    ASSERT_EQ(base.size(), 1u);
    EXPECT_EQ(base[0].lo, 0.0);
    EXPECT_EQ(base[0].hi, 1.0);
}

TEST(BasePartition, EightIntervalsOfWidth100) {
    const auto base = build_base_partition({900, 1700}, 8);
    ASSERT_EQ(base.size(), 8u);
    for (const auto& iv : base) EXPECT_NEAR(iv.width(), 100.0, 1e-12);
    EXPECT_EQ(base.back().hi, 1700.0);
}

TEST(BasePartition, ZeroCountRejected) {
    EXPECT_THROW(build_base_partition({900, 1700}, 0), InvalidArgument);
}

TEST(Universe, RejectsEmptyRange) {
    EXPECT_THROW(Universe(5, 5), InvalidArgument);
    EXPECT_THROW(Universe(6, 5), InvalidArgument);
}

TEST(CountFrequencies, BelgiumTally) {
    const auto base = build_base_partition({900, 1700}, 4);
    EXPECT_EQ(count_frequencies(fixtures::belgium(), base), (std::vector<int>{2, 8, 13, 8}));
}

TEST(CountFrequencies, EmptySeriesGivesZeros) {
    const auto base = build_base_partition({900, 1700}, 4);
    EXPECT_EQ(count_frequencies(TimeSeries{}, base), (std::vector<int>{0, 0, 0, 0}));
}

TEST(CountFrequencies, BoundaryGoesToHigherInterval) {
    const auto base = build_base_partition({900, 1700}, 4);
    EXPECT_EQ(count_frequencies(TimeSeries({{2000, 1100}}), base), (std::vector<int>{0, 1, 0, 0}));
    EXPECT_EQ(count_frequencies(TimeSeries({{2000, 1700}}), base), (std::vector<int>{0, 0, 0, 1}));
}

TEST(CountFrequencies, OutOfUniverseNamesYearAndValue) {
    const auto base = build_base_partition({900, 1700}, 4);
    try {
        count_frequencies(TimeSeries({{1999, 850}}), base);
        FAIL() << "expected OutOfUniverse";
    } catch (const OutOfUniverse& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("1999"), std::string::npos);
        EXPECT_NE(what.find("850"), std::string::npos);
    }
}

TEST(RefinePartition, PresetMatchesPrintedBoundsWhereRoundingAllows) {
    const auto p = fixtures::preset_partition();
    ASSERT_EQ(p.size(), 29);
    // Spot checks against the printed table; the printed values of later
    // subintervals drift because they were accumulated from truncated widths.
    EXPECT_NEAR(p.interval(2).hi, 1133.33, 0.01);
    EXPECT_NEAR(p.interval(8).hi, 1315.38, 0.01);
    EXPECT_NEAR(p.interval(21).hi, 1522.22, 0.01);
    EXPECT_EQ(p.interval(7).hi, 1300.0);
    EXPECT_EQ(p.interval(20).hi, 1500.0);
    EXPECT_EQ(p.interval(29).hi, 1700.0);
}

TEST(RefinePartition, ExactThirteenthWidth) {
    const auto p = fixtures::preset_partition();
    EXPECT_EQ(p.interval(8).lo, 1300.0);
    EXPECT_NEAR(p.interval(8).hi, 1300.0 + 200.0 / 13.0, 1e-12);
    EXPECT_NEAR(p.interval(8).hi, 1315.3846, 1e-4);
}

TEST(RefinePartition, PrintedDriftIsTruncatedWidthAccumulation) {
    // Documents why the printed bounds cannot all be met at +-0.01: the
    // table equals base_lo + s * trunc2(width) for every subinterval.
    const auto p = fixtures::preset_partition();
    const int counts[] = {1, 6, 13, 9};
    int label = 1;
    for (int b = 0; b < 4; ++b) {
        const double lo = 900 + 200 * b;
        const double truncated = std::floor(200.0 / counts[b] * 100) / 100;
        for (int s = 1; s < counts[b]; ++s) {
            const double printed = published::partition_bounds[static_cast<std::size_t>(label + s - 2)].hi;
            EXPECT_NEAR(printed, lo + s * truncated, 0.005) << "u" << label + s - 1;
        }
        label += counts[b];
    }
    EXPECT_GT(std::abs(p.interval(19).hi - published::partition_bounds[18].hi), 0.05);
}

TEST(RefinePartition, AllOnesIsIdentity) {
    BasePartition base;
    base.universe = {0, 10};
    base.intervals = build_base_partition(base.universe, 5);
    base.frequencies = {0, 0, 0, 0, 0};
    base.subdivision_counts = {1, 1, 1, 1, 1};
    const auto p = refine_partition(base);
    ASSERT_EQ(p.size(), 5);
    for (int j = 1; j <= 5; ++j) EXPECT_EQ(p.interval(j), base.intervals[static_cast<std::size_t>(j - 1)]);
}

TEST(RefinePartition, ZeroCountRejected) {
    BasePartition base;
    base.universe = {900, 1700};
    base.intervals = build_base_partition(base.universe, 4);
    base.subdivision_counts = {1, 0, 13, 9};
    EXPECT_THROW(refine_partition(base), InvalidArgument);
}

TEST(RefinePartition, MidpointsExactAndIncreasing) {
    const auto p = fixtures::preset_partition();
    const auto mids = p.midpoints();
    for (int j = 1; j <= p.size(); ++j) {
        EXPECT_EQ(mids[static_cast<std::size_t>(j - 1)], (p.interval(j).lo + p.interval(j).hi) / 2);
        if (j > 1) {
            EXPECT_LT(mids[static_cast<std::size_t>(j - 2)], mids[static_cast<std::size_t>(j - 1)]);
        }
    }
}

TEST(Partition, RejectsGapsAndUncoveredUniverse) {
    EXPECT_THROW(Partition(Universe(0, 2), {{0, 1}, {1.5, 2}}), InvalidArgument);
    EXPECT_THROW(Partition(Universe(0, 2), {{0, 1}, {1, 1.9}}), InvalidArgument);
    EXPECT_THROW(Partition(Universe(0, 2), {}), InvalidArgument);
}

TEST(BasePartitionFromSeries, CountMismatchRejected) {
    EXPECT_THROW(BasePartition::from_series({900, 1700}, 4, fixtures::belgium(), {1, 6, 13}), InvalidArgument);
}

TEST(SuggestSubdivisionCounts, BelgiumFrequenciesMatchBruteForce) {
    const std::vector<int> freq{2, 8, 13, 8};
    const auto expected = oracle::brute_apportion(freq, 29);
    ASSERT_EQ(expected, (std::vector<int>{2, 8, 12, 7}));
    EXPECT_EQ(suggest_subdivision_counts(freq, 29), expected);
}

TEST(SuggestSubdivisionCounts, TrivialCases) {
    EXPECT_EQ(suggest_subdivision_counts(std::vector<int>{5}, 7), (std::vector<int>{7}));
    EXPECT_EQ(suggest_subdivision_counts(std::vector<int>{1, 1}, 2), (std::vector<int>{1, 1}));
}

TEST(SuggestSubdivisionCounts, ZeroFrequencyStillGetsOne) {
    const std::vector<int> freq{0, 10, 0};
    const auto got = suggest_subdivision_counts(freq, 6);
    EXPECT_EQ(got, (std::vector<int>{1, 4, 1}));
    EXPECT_EQ(got, oracle::brute_apportion(freq, 6));
}

TEST(SuggestSubdivisionCounts, Errors) {
    EXPECT_THROW(suggest_subdivision_counts(std::vector<int>{0, 0}, 4), InvalidArgument);
    EXPECT_THROW(suggest_subdivision_counts(std::vector<int>{1, 2, 3}, 2), InvalidArgument);
    EXPECT_THROW(suggest_subdivision_counts(std::vector<int>{}, 2), InvalidArgument);
}
