#include <gtest/gtest.h>

#include "groves/groves.hpp"
#include "json.hpp"
#include "reference.hpp"

using namespace groves;

namespace {

PolyQ xyz(const std::string& s) { return parse_poly(s, kXYZ); }
PolyQ uvw(const std::string& s) { return parse_poly(s, kUVW); }

}  // namespace

TEST(Polynomial, TextRoundTrip) {
    for (const std::string s : {"3/4 x^2 y - z + 1", "x^-1 y + 2", "-x y z"}) {
        const PolyQ p = xyz(s);
        EXPECT_EQ(parse_poly(to_text(p, kXYZ), kXYZ), p) << s;
    }
    EXPECT_EQ(to_text(PolyQ(), kXYZ), "0");
    EXPECT_THROW(parse_poly("", kXYZ), InvalidArgument);
    EXPECT_THROW(parse_poly("x + q", kXYZ), InvalidArgument);
    EXPECT_THROW(parse_poly("x y^", kXYZ), InvalidArgument);
}

TEST(Polynomial, SparseJsonRoundTrip) {
    const PolyQ p = xyz("-1/3 x^2 y + 5 z^3 - 7/2");
    const auto j = to_json_sparse<nlohmann::json>(p, 3);
    EXPECT_EQ(from_json_sparse(j), p);
}

TEST(Polynomial, ArithmeticAndDivision) {
    const PolyQ a = xyz("x + y"), b = xyz("x - y");
    EXPECT_EQ(a * b, xyz("x^2 - y^2"));
    EXPECT_EQ(*divide_exact(a * b, b), a);
    EXPECT_FALSE(divide_exact(a, b).has_value());
    EXPECT_THROW(divide_exact(a, PolyQ()), DomainError);
    EXPECT_EQ(a.pow(3).evaluate({1, 2, 0}), 27);
    EXPECT_EQ(xyz("x^2 y").derivative(0), xyz("2 x y"));
    EXPECT_TRUE(xyz("x y + z^2").is_homogeneous());
    EXPECT_FALSE(xyz("x y + z").is_homogeneous());
}

TEST(Determinant, BasicCases) {
    EXPECT_EQ(det(identity_matrix(6)), PolyQ(1));
    PolyMatrix zero_row = identity_matrix(3);
    zero_row[1] = {PolyQ(), PolyQ(), PolyQ()};
    EXPECT_TRUE(det(zero_row).is_zero());
    EXPECT_THROW(det(PolyMatrix{{PolyQ(1), PolyQ(2)}}), InvalidArgument);
}

TEST(Determinant, FractionFreeAgreesWithCofactors) {
    const auto m = reference::parse_matrix(reference::kT12N3Matrix);
    EXPECT_EQ(det(m), det_laplace(m));
}

TEST(Determinant, ClassSystemIsSingularAtOne) {
    const auto m = reference::parse_matrix(reference::kT12Matrix);
    EXPECT_EQ(det(m).evaluate({1, 1, 1}), 0);
}

TEST(Series, GeometricInverse) {
    const auto s = TruncSeries3::from_poly(xyz("1 - x"), 12).inverse();
    for (int d = 0; d <= 12; ++d) EXPECT_EQ(s.coeff(d, 0, 0), 1);
    EXPECT_EQ(s.coeff(1, 1, 0), 0);
    EXPECT_THROW(TruncSeries3::from_poly(xyz("x + y"), 4).inverse(), DomainError);
}

TEST(Series, UniformDenominatorInverse) {
    const auto s = TruncSeries3::from_poly(xyz(reference::kUniformQ), 6).inverse();
    EXPECT_EQ(s.coeff(0, 0, 0), 1);
    EXPECT_EQ(s.coeff(1, 0, 0), rat(1, 3));
    // (1/3)^2 from x * x plus nothing else at x^2.
    EXPECT_EQ(s.coeff(2, 0, 0), rat(1, 9));
    EXPECT_EQ(s * TruncSeries3::from_poly(xyz(reference::kUniformQ), 6), TruncSeries3::from_poly(PolyQ(1), 6));
}

TEST(Resultant, ConstantsAndCrossCheck) {
    const PolyQ f = uvw("u^3 + v u + 1");
    EXPECT_EQ(resultant(f, PolyQ(5), 0), PolyQ(125));
    const PolyQ g = uvw("u^2 - v w + 2");
    EXPECT_EQ(resultant(f, g, 0), resultant_bareiss(f, g, 0));
    // Res_u(u - a, u - b) = b - a.
    EXPECT_TRUE(same_up_to_scalar(resultant(uvw("u - v"), uvw("u - w"), 0), uvw("v - w")));
}

TEST(Gcd, SquareFreeAndMultiplicityOne) {
    EXPECT_EQ(squarefree_part(uvw("u + v").pow(2) * uvw("w"), 0), uvw("u w + v w"));
    const PolyQ f = uvw("u - v").pow(2) * uvw("u + w");
    EXPECT_TRUE(same_up_to_scalar(multiplicity_one_part(f, 0), uvw("u + w")));
    EXPECT_TRUE(same_up_to_scalar(gcd(uvw("u^2 - v^2"), uvw("u^2 + 2 u v + v^2")), uvw("u + v")));
    EXPECT_TRUE(same_up_to_scalar(strip_common_factors(uvw("u + v").pow(3) * uvw("w + 1"), uvw("u + v")), uvw("w + 1")));
}

TEST(Rational, ParsesAndRejects) {
    EXPECT_EQ(parse_rational("-6/4"), rat(-3, 2));
    EXPECT_EQ(parse_rational("+7"), 7);
    EXPECT_THROW(parse_rational("1/0"), InvalidArgument);
    EXPECT_THROW(parse_rational("1.5"), InvalidArgument);
    EXPECT_THROW(parse_rational(""), InvalidArgument);
}

TEST(RandomStream, ThresholdsAreExact) {
    EXPECT_TRUE(probability_threshold(0) == 0);
    EXPECT_TRUE(probability_threshold(rat(1, 2)) == static_cast<u128>(1) << 127);
    EXPECT_THROW(probability_threshold(1), InvalidArgument);
    RngStream a(9), b(9);
    for (int t = 0; t < 10; ++t) EXPECT_EQ(a.next64(), b.next64());
}
