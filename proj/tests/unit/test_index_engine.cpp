#include <gtest/gtest.h>

#include "sysbound/catalog.hpp"
#include "sysbound/index_engine.hpp"

using namespace sysbound;

namespace
{

KahlerClass pi_h(const Space& x) { return {PiScaled(1, 1), x.generator("H")}; }

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument; // sentinel: no error raised
}

} // namespace

TEST(IndexEngine, ToddGenusIsOneOnFanoFamilies)
{
    for (int n = 1; n <= 8; ++n) EXPECT_EQ(todd_genus(projective_space(n)), 1);
    for (int n = 2; n <= 8; ++n) EXPECT_EQ(todd_genus(quadric(n)), 1);
    EXPECT_EQ(todd_genus(complete_intersection({{4}}, {3})), 2);
    EXPECT_EQ(todd_genus(proj_bundle_over_curve({0, 1}, 3)), -2);
}

TEST(IndexEngine, ProjectiveSpaceIndexPolynomialIsBinomial)
{
    // e^{c/2} A-hat = Td, so P(a) = chi(CP^n, O(a)) = binom(a + n, n)
    for (int n = 1; n <= 6; ++n) {
        Space x = projective_space(n);
        IndexPolynomial ip = index_polynomial(x);
        EXPECT_EQ(ip.q0, n + 1);
        for (int a = -n - 3; a <= 5; ++a) {
            EXPECT_EQ(ip.p(Rational(a)), binomial(a + n, n)) << n << " " << a;
            EXPECT_EQ(index_value(x, Rational(a)), binomial(a + n, n));
        }
    }
}

TEST(IndexEngine, QuadricIndexPolynomialFromRestrictionSequence)
{
    // chi(Q^n, O(a)) = binom(n+1+a, n+1) - binom(n-1+a, n+1)
    for (int n = 2; n <= 6; ++n) {
        IndexPolynomial ip = index_polynomial(quadric(n));
        EXPECT_EQ(ip.q0, n);
        for (int a = -n - 2; a <= 4; ++a)
            EXPECT_EQ(ip.p(Rational(a)), binomial(n + 1 + a, n + 1) - binomial(n - 1 + a, n + 1)) << n << " " << a;
    }
}

TEST(IndexEngine, Lengths)
{
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(length(projective_space(n)), n + 1);
    for (int n = 2; n <= 6; ++n) EXPECT_EQ(length(quadric(n)), n);
    for (int n = 3; n <= 6; ++n) {
        EXPECT_EQ(length(complete_intersection({{3}}, {n + 1})), n - 1) << n;
        EXPECT_EQ(length(complete_intersection({{4}}, {n + 1})), n - 2) << n;
    }
    LengthResult lr = length_with_witness(projective_space(3));
    EXPECT_EQ(abs(Integer(4) + 2 * lr.witness_a), 4);
}

TEST(IndexEngine, ProductsWithCircleAndSphere)
{
    EXPECT_EQ(product_length_bound(projective_space(2), circle()), 3);
    EXPECT_EQ(product_length_bound(quadric(3), circle()), 3);
    EXPECT_EQ(code_of([] { product_length_bound(projective_space(2), projective_space(1)); }),
              ErrorCode::KunnethViolation);
    EXPECT_EQ(code_of([] { product_length_bound(product(projective_space(1), circle()), circle()); }),
              ErrorCode::PreconditionUnmet);
}

TEST(IndexEngine, LichnerowiczObstructionOnK3)
{
    Space k3 = complete_intersection({{4}}, {3});
    EXPECT_EQ(length(k3), 0);
    EXPECT_EQ(code_of([&] { systolic_bound(k3, point(), BoundKind::Length); }), ErrorCode::LichnerowiczObstruction);
}

TEST(IndexEngine, SharpConstants)
{
    Space cp3 = projective_space(3);
    EXPECT_EQ(systolic_bound(cp3, point(), BoundKind::Kahler), PiScaled(48, 1));
    EXPECT_EQ(systolic_bound(cp3, point(), BoundKind::Length), PiScaled(48, 1));
    EXPECT_EQ(code_of([&] { systolic_bound(cp3, point(), BoundKind::KahlerRefined); }), ErrorCode::PreconditionUnmet);
    EXPECT_EQ(systolic_bound(quadric(3), point(), BoundKind::KahlerRefined), PiScaled(36, 1));
    EXPECT_EQ(systolic_bound(projective_space(2), circle(), BoundKind::SpinCProduct), PiScaled(24, 1));
    Space cubic = complete_intersection({{3}}, {4});
    EXPECT_EQ(systolic_bound(cubic, point(), BoundKind::NonBundle), PiScaled(32, 1));
    EXPECT_EQ(code_of([] { systolic_bound(quadric(4), point(), BoundKind::NonBundle); }), ErrorCode::PreconditionUnmet);
    EXPECT_EQ(systolic_bound(cubic, circle(), BoundKind::FanoIndex), PiScaled(24, 1));
    Space wp = weighted_hypersurface({1, 1, 1, 1, 2}, 4);
    EXPECT_EQ(systolic_bound(wp, point(), BoundKind::FanoIndex), PiScaled(24, 1));
    EXPECT_EQ(code_of([&] { systolic_bound(wp, point(), BoundKind::Length); }), ErrorCode::MetadataOnlySpace);
}

TEST(IndexEngine, ScalarCurvatureVolumeAndGromovWidth)
{
    for (int n = 1; n <= 8; ++n) {
        Space x = projective_space(n);
        EXPECT_EQ(avg_scalar_curvature(x, pi_h(x)), PiScaled(4 * n * (n + 1), 0));
        EXPECT_EQ(volume(x, pi_h(x)), PiScaled(1 / factorial(static_cast<unsigned>(n)), n));
        EXPECT_EQ(gromov_width_bound(x, pi_h(x)), PiScaled(make_rational(2 * n, n + 1), 1));
    }
    for (int n = 2; n <= 6; ++n) {
        Space q = quadric(n);
        EXPECT_EQ(avg_scalar_curvature(q, pi_h(q)), PiScaled(4 * n * n, 0));
    }
    // rescaling the class by 2 halves the average scalar curvature
    Space x = projective_space(2);
    EXPECT_EQ(avg_scalar_curvature(x, {PiScaled(2, 1), x.generator("H")}), PiScaled(12, 0));
    // CP1 x CP1 with the diagonal class: 4 * 2 * (c1 . alpha) / alpha^2 = 16
    Space pp = product(projective_space(1), projective_space(1));
    KahlerClass diag{PiScaled(1, 1), pp.generator("H1") + pp.generator("H2")};
    EXPECT_EQ(avg_scalar_curvature(pp, diag), PiScaled(16, 0));
}

TEST(IndexEngine, HilbertPolynomialOfProjectivePlane)
{
    Space x = projective_space(2);
    Polynomial p = hilbert_polynomial(x, x.generator("H"));
    for (int k = -4; k <= 6; ++k) EXPECT_EQ(p(Rational(k)), make_rational((k + 1) * (k + 2), 2));
}

TEST(IndexEngine, MissingDataErrors)
{
    EXPECT_EQ(code_of([] { index_polynomial(sphere(3)); }), ErrorCode::NoPrimitiveClass);
    EXPECT_EQ(code_of([] { index_polynomial(blowup_point(2)); }), ErrorCode::MissingTangentData);
}
