#include <gtest/gtest.h>

#include <set>

#include "groves/lattice.hpp"
#include "oracles.hpp"

using namespace groves;

TEST(InitialConditions, RejectsNonPositiveOrder) {
    EXPECT_THROW(standard_initial_conditions(0), InvalidArgument);
    EXPECT_THROW(standard_initial_conditions(-3), InvalidArgument);
}

TEST(InitialConditions, OrderOneRemovesNothing) {
    const auto I = standard_initial_conditions(1);
    EXPECT_TRUE(I.removed().empty());
    const std::set<Point3> none;
    for (const auto& p : octant_points(-6, 0)) EXPECT_EQ(I.in_I(p), oracle::in_I(none, p)) << p;
}

TEST(InitialConditions, OrderTwoRemovesTheOrigin) {
    const auto I = standard_initial_conditions(2);
    ASSERT_EQ(I.removed().size(), 1u);
    EXPECT_EQ(I.removed()[0], (Point3{0, 0, 0}));
}

TEST(InitialConditions, RemovedCountsMatchTheDefinition) {
    for (int n = 1; n <= 7; ++n) {
        const auto I = standard_initial_conditions(n);
        const auto expected = oracle::standard_removed(n);
        EXPECT_EQ(I.removed().size(), expected.size()) << n;
        EXPECT_EQ(standard_removed_count(n), expected.size()) << n;
        EXPECT_EQ(std::set<Point3>(I.removed().begin(), I.removed().end()), expected);
    }
    EXPECT_EQ(standard_removed_count(4), 10u);
}

TEST(InitialConditions, MembershipMatchesTheDefinition) {
    for (int n = 1; n <= 5; ++n) {
        const auto I = standard_initial_conditions(n);
        const auto removed = oracle::standard_removed(n);
        for (const auto& p : octant_points(-n - 5, 0)) EXPECT_EQ(I.in_I(p), oracle::in_I(removed, p)) << n << " " << p;
    }
}

TEST(InitialConditions, RejectsSetsThatAreNotUpwardClosed) {
    EXPECT_THROW(InitialConditions({{-1, 0, 0}}), InvalidArgument);
    EXPECT_THROW(InitialConditions({{1, 0, 0}}), InvalidArgument);
    EXPECT_NO_THROW(InitialConditions({{0, 0, 0}, {-1, 0, 0}}));
}

TEST(AddableCubes, AfterTheOriginComeItsThreeLowerNeighbours) {
    const auto I = standard_initial_conditions(2);
    const std::vector<Point3> expected{{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    EXPECT_EQ(addable_cubes(I, -4), expected);
    // Six-neighbour condition, checked cube by cube.
    const auto removed = oracle::standard_removed(2);
    for (const auto& c : expected) {
        const auto next = I.with_cube(c);
        for (const auto& p : lower_neighbours(c)) EXPECT_TRUE(next.in_I(p)) << c << " " << p;
    }
}

TEST(AddableCubes, EmptyRemovedSetHasNoRemovableCube) {
    EXPECT_TRUE(removable_cubes(standard_initial_conditions(1)).empty());
    const auto r = removable_cubes(standard_initial_conditions(3));
    EXPECT_EQ(r.size(), 3u);
}

TEST(Rhombi, MatchAVertexMembershipScan) {
    for (int n = 1; n <= 4; ++n) {
        const auto removed = oracle::standard_removed(n);
        const int lo = -n - 3;
        std::set<Rhombus> expected;
        for (const auto& r : oracle::rhombi_in_box(removed, lo))
            if (r.anchor.level() >= lo) expected.insert(r);
        const auto got = rhombi_of(standard_initial_conditions(n), lo);
        EXPECT_EQ(std::set<Rhombus>(got.begin(), got.end()), expected) << n;
    }
}

TEST(Rhombi, OrderTwoHoldsTheThreeRhombiBelowTheOrigin) {
    const auto I = standard_initial_conditions(2);
    EXPECT_TRUE(I.contains({Axis::a, {-1, 0, 0}}));
    EXPECT_TRUE(I.contains({Axis::b, {0, -1, 0}}));
    EXPECT_TRUE(I.contains({Axis::c, {0, 0, -1}}));
    for (Axis q : kAxes) EXPECT_FALSE(I.contains({q, {0, 0, 0}}));
    for (Axis q : kAxes) EXPECT_TRUE(standard_initial_conditions(1).contains({q, {0, 0, 0}}));
}

TEST(Rhombi, DiagonalsFollowTheAxis) {
    const Rhombus ra{Axis::a, {0, 0, 0}};
    EXPECT_EQ(ra.bottom(), (Point3{0, -1, -1}));
    EXPECT_EQ(ra.long_diagonal()[0], (Point3{0, -1, 0}));
    EXPECT_EQ(ra.long_diagonal()[1], (Point3{0, 0, -1}));
    const Rhombus rb{Axis::b, {0, 0, 0}};
    EXPECT_EQ(rb.bottom(), (Point3{-1, 0, -1}));
    const Rhombus rc{Axis::c, {-2, -1, 0}};
    EXPECT_EQ(rc.bottom(), (Point3{-3, -2, 0}));
    EXPECT_EQ(rc.long_level(), -4);
    for (Axis q : kAxes)
        for (const auto& p : octant_points(-3, 0)) {
            const auto v = Rhombus{q, p}.vertices();
            const auto w = oracle::rhombus_vertices(q, p);
            EXPECT_EQ(std::set<Point3>(v.begin(), v.end()), std::set<Point3>(w.begin(), w.end()));
        }
}

TEST(Schedules, BothDefaultOrdersAreValid) {
    for (int n = 1; n <= 8; ++n) {
        EXPECT_NO_THROW(validate_schedule(level_major_schedule(n)));
        EXPECT_NO_THROW(validate_schedule(lexicographic_schedule(n)));
        EXPECT_EQ(level_major_schedule(n).size(), standard_removed_count(n));
    }
    EXPECT_NE(level_major_schedule(4), lexicographic_schedule(4));
}

TEST(Schedules, RejectsACubeBeforeTheCubesAboveIt) {
    EXPECT_THROW(validate_schedule({{-1, 0, 0}}), ScheduleError);
    EXPECT_THROW(validate_schedule({{0, 0, 0}, {0, 0, 0}}), ScheduleError);
    EXPECT_THROW(validate_schedule({{0, 0, 0}, {-1, -1, 0}}), ScheduleError);
}
