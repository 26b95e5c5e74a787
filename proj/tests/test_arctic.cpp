#include <gtest/gtest.h>

#include "groves/groves.hpp"
#include "reference.hpp"

using namespace groves;

namespace {

PolyQ xyz(const std::string& s) { return parse_poly(s, kXYZ); }
PolyQ uvw(const std::string& s) { return parse_poly(s, kUVW); }

}  // namespace

TEST(HomogeneousPart, UniformPolynomials) {
    const auto Q = homogeneous_part_at(xyz(reference::kUniformQ));
    EXPECT_EQ(Q.poly, xyz(reference::kUniformQtilde));
    EXPECT_EQ(Q.degree, 2);
    const auto P = homogeneous_part_at(PolyQ(rat(2, 3)));
    EXPECT_EQ(P.poly, PolyQ(rat(2, 3)));
    EXPECT_EQ(P.degree, 0);
    EXPECT_THROW(homogeneous_part_at(PolyQ()), InvalidArgument);
}

TEST(PlaneCurve, ValidatesItsPolynomial) {
    EXPECT_THROW(PlaneCurve{PolyQ()}, InvalidArgument);
    EXPECT_THROW(PlaneCurve{xyz("x + y^2")}, InvalidArgument);
    EXPECT_NO_THROW(PlaneCurve{xyz("x y - z^2")});
}

TEST(DualCurve, UniformConic) {
    const auto d = dual_curve(PlaneCurve(xyz(reference::kUniformQtilde)), uvw(reference::kUniformDual));
    EXPECT_TRUE(*d.matches_target);
    EXPECT_TRUE(*d.target_divides_raw);
}

TEST(DualCurve, SelfDualConic) {
    const auto d = dual_curve(PlaneCurve(xyz("x^2 + y^2 - z^2")));
    EXPECT_TRUE(same_up_to_scalar(d.dual.poly, uvw("u^2 + v^2 - w^2")));
}

TEST(DualCurve, BidualIsTheCurve) {
    const auto d = dual_curve(PlaneCurve(xyz(reference::kUniformQtilde)));
    const auto back = dual_curve(d.dual);
    EXPECT_TRUE(same_up_to_scalar(back.dual.poly, xyz(reference::kUniformQtilde)));
}

TEST(DualCurve, T12Quartic) {
    const auto d = dual_curve(PlaneCurve(xyz(reference::kT12Qtilde)), uvw(reference::kT12Dual));
    EXPECT_TRUE(*d.target_divides_raw);
    EXPECT_TRUE(*d.matches_target);
    EXPECT_EQ(d.dual.degree, 4);
}

TEST(DualCurve, RejectsLines) { EXPECT_THROW(dual_curve(PlaneCurve(xyz("x + y"))), InvalidArgument); }

TEST(TangentCount, UniformCircle) {
    const PlaneCurve Q(xyz(reference::kUniformQtilde));
    EXPECT_EQ(real_tangent_count(Q, {rat(-1, 3), rat(-1, 3), rat(-1, 3)}), 0);
    EXPECT_EQ(real_tangent_count(Q, {rat(-9, 10), rat(-1, 20), rat(-1, 20)}), 2);
}

TEST(TangentCount, T12Cardioid) {
    const PlaneCurve Q(xyz(reference::kT12Qtilde));
    EXPECT_EQ(real_tangent_count(Q, {rat(-1, 3), rat(-1, 3), rat(-1, 3)}), 1);
    EXPECT_EQ(real_tangent_count(Q, {rat(-9, 10), rat(-1, 20), rat(-1, 20)}), 3);
}

TEST(Slice, UniformIsTheInscribedCircle) {
    const auto d = dual_curve(PlaneCurve(xyz(reference::kUniformQtilde)));
    const auto s = arctic_slice(d.dual, 2000);
    EXPECT_EQ(s.components(), 1u);
    EXPECT_LT(incircle_deviation(s), 1e-3);
    const auto gaps = side_gaps(s);
    for (double g : gaps) EXPECT_LT(g, s.step);
    EXPECT_TRUE(inside_slice(s, -1.0 / 3, -1.0 / 3));
    EXPECT_FALSE(inside_slice(s, -0.9, -0.05));
}

TEST(Slice, T12TouchesAllThreeSides) {
    const auto d = dual_curve(PlaneCurve(xyz(reference::kT12Qtilde)));
    const auto s = arctic_slice(d.dual, 1000);
    EXPECT_EQ(s.components(), 1u);
    for (double g : side_gaps(s)) EXPECT_LT(g, s.step);
    EXPECT_TRUE(inside_slice(s, -1.0 / 3, -1.0 / 3));
}

TEST(Slice, PeriodThreeHasTwoNestedComponents) {
    const PolyQ Q = reference::parse_scaled(reference::kT12N3Qtilde, reference::kT12N3QtildeDen);
    const auto d = dual_curve(PlaneCurve(Q));
    const auto s = arctic_slice(d.dual, 2000);
    EXPECT_EQ(s.components(), 2u);
    EXPECT_LT(s.max_residual, 1e-6);
    EXPECT_THROW(arctic_slice(d.dual, 1), InvalidArgument);
}

TEST(Svg, EmptySceneIsABareTriangle) {
    const std::string svg = render_svg({});
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_NE(svg.find("<polygon"), std::string::npos);
    EXPECT_EQ(svg.find("<polyline"), std::string::npos);
    EXPECT_EQ(svg.find("<line"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, GroveAndCurveRenderDeterministically) {
    const ConductanceField field(TorusConductance::uniform(1, 1));
    const Grove g = sample_grove(field, 40, 7);
    const auto d = dual_curve(PlaneCurve(xyz(reference::kUniformQtilde)));
    const auto s = arctic_slice(d.dual, 200);
    const std::string a = render_svg({&g, &s}), b = render_svg({&g, &s});
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("<polyline"), std::string::npos);
    EXPECT_NE(a.find("#c0392b"), std::string::npos);
    EXPECT_EQ(render_svg({&g, nullptr}), render_svg({&g, nullptr}));
}
