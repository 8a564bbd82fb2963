#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include <mbfts/fuzzify.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace mbfts;

TEST(FuzzifyValue, PublishedAnchors) {
    const auto p = fixtures::preset_partition();
    EXPECT_EQ(fuzzify_value(p, 953), 1);
    EXPECT_EQ(fuzzify_value(p, 1574), 24);
    EXPECT_EQ(fuzzify_value(p, p.midpoint(10)), 10);
}

TEST(FuzzifyValue, UniverseEdges) {
    const auto p = fixtures::preset_partition();
    EXPECT_EQ(fuzzify_value(p, 900), 1);
    EXPECT_EQ(fuzzify_value(p, 1700), 29);
    EXPECT_EQ(fuzzify_value(p, 1100), 2);
    EXPECT_EQ(fuzzify_value(p, 1300), 8);
}

TEST(FuzzifyValue, StrictRejectsOutside) {
    const auto p = fixtures::preset_partition();
    EXPECT_THROW(fuzzify_value(p, 899.999), OutOfUniverse);
    EXPECT_THROW(fuzzify_value(p, 1700.5), OutOfUniverse);
    EXPECT_THROW(fuzzify_value(p, std::numeric_limits<double>::quiet_NaN(), BoundaryMode::clamp),
                 OutOfUniverse);
}

TEST(FuzzifyValue, ClampMapsToEdgeLabels) {
    const auto p = fixtures::preset_partition();
    EXPECT_EQ(fuzzify_value(p, 10, BoundaryMode::clamp), 1);
    EXPECT_EQ(fuzzify_value(p, 5000, BoundaryMode::clamp), 29);
}

TEST(FuzzifySeries, BelgiumLabels) {
    const auto p = fixtures::preset_partition();
    const auto series = fixtures::belgium();
    // The frozen labels come from an exact integer oracle.
    std::vector<int> oracle_labels;
    for (const auto& obs : series)
        oracle_labels.push_back(oracle::integer_label(std::lround(obs.value), {1, 6, 13, 9}));
    ASSERT_EQ(oracle_labels, fixtures::belgium_labels);

    const auto fz = fuzzify_series(p, series);
    EXPECT_EQ(fz.label_sequence(), fixtures::belgium_labels);
    EXPECT_EQ(fz.partition_ref, p.fingerprint());
    for (std::size_t i = 0; i < series.size(); ++i) EXPECT_EQ(fz.labels[i].year, series[i].year);
}

TEST(FuzzifySeries, EmptySeries) {
    const auto fz = fuzzify_series(fixtures::preset_partition(), TimeSeries{});
    EXPECT_TRUE(fz.empty());
}

TEST(FuzzifySeries, SinglePoint) {
    const auto fz = fuzzify_series(fixtures::preset_partition(), TimeSeries({{2004, 953}}));
    ASSERT_EQ(fz.size(), 1u);
    EXPECT_EQ(fz.labels[0], (LabeledYear{2004, 1}));
}

TEST(FuzzifySeries, FirstFailureNamesYear) {
    const TimeSeries s({{2000, 1000}, {2001, 2000}, {2002, 3000}});
    try {
        fuzzify_series(fixtures::preset_partition(), s);
        FAIL() << "expected OutOfUniverse";
    } catch (const OutOfUniverse& e) {
        EXPECT_NE(std::string(e.what()).find("2001"), std::string::npos);
    }
}

TEST(MembershipVector, EdgeAndInterior) {
    const auto p = fixtures::preset_partition();
    EXPECT_EQ(membership_vector(p, 1), (std::vector<Membership>{{1, 1.0}, {2, 0.5}}));
    EXPECT_EQ(membership_vector(p, 15), (std::vector<Membership>{{14, 0.5}, {15, 1.0}, {16, 0.5}}));
    EXPECT_EQ(membership_vector(p, 29), (std::vector<Membership>{{28, 0.5}, {29, 1.0}}));
}

TEST(MembershipVector, OutOfRange) {
    const auto p = fixtures::preset_partition();
    EXPECT_THROW(membership_vector(p, 0), InvalidArgument);
    EXPECT_THROW(membership_vector(p, 30), InvalidArgument);
}

TEST(MembershipVector, GradeSums) {
    const auto p = fixtures::preset_partition();
    for (int j = 1; j <= p.size(); ++j) {
        double sum = 0;
        for (const auto& m : membership_vector(p, j)) sum += m.grade;
        EXPECT_EQ(sum, (j == 1 || j == p.size()) ? 1.5 : 2.0) << j;
    }
}
