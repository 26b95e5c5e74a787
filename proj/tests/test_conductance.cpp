#include <gtest/gtest.h>

#include <set>

#include "groves/groves.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace groves;

namespace {

void expect_weights(const ShuffleWeights& w, const Rational& U, const Rational& V, const Rational& W) {
    EXPECT_EQ(w.U, U);
    EXPECT_EQ(w.V, V);
    EXPECT_EQ(w.W, W);
}

}  // namespace

TEST(ConductanceField, UniformSecondLayerIsOneThird) {
    const ConductanceField field(TorusConductance::uniform(1, 1));
    for (Axis q : kAxes)
        for (const auto& p : octant_points(-1, -1)) EXPECT_EQ(field.C(q, p), rat(1, 3)) << p;
    for (const auto& v : field.layer(-2).values) EXPECT_EQ(v, rat(1, 3));
    for (const auto& c : octant_points(-4, 0)) expect_weights(field.weights(c), rat(1, 3), rat(1, 3), rat(1, 3));
}

TEST(ConductanceField, T12WeightsDecodeTheClassSystem) {
    const auto field = reference::load("t12_n1").field();
    expect_weights(field.weights({0, 0, 0}), rat(3, 16), rat(3, 4), rat(1, 16));
    expect_weights(field.weights({0, 0, -1}), rat(3, 4), rat(3, 16), rat(1, 16));
}

TEST(ConductanceField, PeriodThreeWeightsAtTheOrigin) {
    const auto field = reference::load("t12_n3").field();
    const auto w = field.weights({0, 0, 0});
    expect_weights(w, rat(1, 2), rat(1, 3), rat(1, 6));
    EXPECT_EQ(w.V + w.W, rat(1, 2));
}

TEST(ConductanceField, RejectsRequestsAboveTheBaseLayer) {
    const ConductanceField field(TorusConductance::uniform(1, 1));
    EXPECT_THROW(field.layer(0), DomainError);
    EXPECT_THROW(field.C(Axis::a, {1, 0, 0}), DomainError);
}

TEST(ConductanceField, WeightsSumToOneEverywhere) {
    for (const auto& name : reference::kConfigNames) {
        const auto field = reference::load(name).field();
        for (const auto& c : octant_points(-6, 0)) {
            const auto w = field.weights(c);
            EXPECT_EQ(w.U + w.V + w.W, 1) << name << " " << c;
            EXPECT_EQ(w.delta, 1 / field.sigma(c)) << name << " " << c;
        }
    }
}

TEST(TorusLabels, ValidateTheirInput) {
    std::map<std::string, Rational> edges{{"a", 1}, {"b", 1}};
    EXPECT_THROW(torus_from_labels(1, 1, edges, "laplacian-derived-v1"), InvalidArgument);
    edges["c"] = -1;
    EXPECT_THROW(torus_from_labels(1, 1, edges, "laplacian-derived-v1"), InvalidArgument);
    edges["c"] = 1;
    EXPECT_NO_THROW(torus_from_labels(1, 1, edges, "laplacian-derived-v1"));
    edges["z"] = 1;
    EXPECT_THROW(torus_from_labels(1, 1, edges, "laplacian-derived-v1"), InvalidArgument);
    EXPECT_THROW(labels_for(2, 2, "laplacian-derived-v1"), InvalidArgument);
    EXPECT_THROW(labels_for(1, 1, "no-such-labeling"), InvalidArgument);
    EXPECT_EQ(labels_for(2, 2, "grid-v1").size(), 12u);
}

TEST(ClassIndex, MatchesALatticeSearch) {
    for (int N : {1, 2, 3})
        for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {2, 2}})
            for (const auto& mu : octant_points(-6, 0)) {
                const auto expected = oracle::class_rep_by_search(mu, N, m, n);
                ASSERT_TRUE(expected.has_value()) << mu;
                EXPECT_EQ(class_of(mu, N, m, n).rep, *expected) << N << m << n << " " << mu;
            }
    EXPECT_EQ(class_of({-1, -1, -1}, 1, 1, 2).rep, (Point3{0, 0, -1}));
    EXPECT_EQ(class_of({0, 0, 0}, 3, 1, 2).rep, (Point3{0, 0, 0}));
    EXPECT_THROW(class_of({0, 0, 0}, 0, 1, 1), InvalidArgument);
}

TEST(ClassIndex, PeriodThreeClasses) {
    const auto reps = class_representatives(3, 1, 2);
    const std::set<Point3> expected{{0, 0, 0}, {-2, 0, -1}, {-1, 0, 0}, {0, 0, -1}, {-2, 0, 0}, {-1, 0, -1}};
    EXPECT_EQ(std::set<Point3>(reps.begin(), reps.end()), expected);
    EXPECT_EQ(reps.size(), 6u);
}

TEST(Periodicity, MatchesTheKnownPattern) {
    const auto uniform = reference::load("uniform_t11").field();
    const auto r = check_T_periodicity(uniform, 1, 6);
    EXPECT_TRUE(r.periodic);
    ASSERT_TRUE(r.lambda.has_value());
    EXPECT_EQ(*r.lambda, rat(1, 3));
    EXPECT_TRUE(check_T_periodicity(reference::load("t12_n1").field(), 1, 6).periodic);
    const auto p3 = reference::load("t12_n3").field();
    EXPECT_TRUE(check_T_periodicity(p3, 3, 10).periodic);
    EXPECT_FALSE(check_T_periodicity(p3, 1, 6).periodic);
    EXPECT_FALSE(check_T_periodicity(p3, 2, 8).periodic);
    EXPECT_THROW(check_T_periodicity(p3, 0, 4), InvalidArgument);
}
