#include <gtest/gtest.h>

#include <random>

#include "sysbound/char_classes.hpp"

using namespace sysbound;

namespace
{

RingHandle cp_ring(int n) { return make_ring(truncated_polynomial_presentation("H", n, 1)); }

ChernData cp_tangent(int n)
{
    auto r = cp_ring(n);
    GradedClass h = GradedClass::generator(r, "H");
    return {n, (GradedClass::one(r) + h).pow(static_cast<unsigned>(n + 1)), Flavor::Complex};
}

/// Ring Q[x1..xm] truncated above degree 2m with every top monomial paired to 1;
/// exact enough to compare symmetric-function identities degree by degree.
RingHandle free_ring(int m)
{
    RingPresentation p;
    for (int i = 0; i < m; ++i) p.generators.push_back({"x" + std::to_string(i + 1), 2, Parity::Even});
    p.truncation = 2 * m;
    p.exponent_caps.assign(static_cast<std::size_t>(m), -1);
    p.pairing[Monomial(static_cast<std::size_t>(m), 1)] = 1;
    return make_ring(p);
}

} // namespace

TEST(CharClasses, HirzebruchRiemannRochOnProjectiveSpace)
{
    // chi(CP^n, O(k)) = binom(n + k, n)
    for (int n = 1; n <= 6; ++n) {
        ChernData t = cp_tangent(n);
        GradedClass td = todd(t);
        GradedClass h = GradedClass::generator(t.ring(), "H");
        for (int k = -n - 2; k <= 4; ++k)
            EXPECT_EQ((exp_class(Rational(k) * h) * td).integrate(), binomial(n + k, n)) << n << " " << k;
    }
}

TEST(CharClasses, AHatGenusOfQuarticSurface)
{
    // K3 surface: <A-hat> = -p1/24 = 2, via c(TX) = (1+H)^4 / (1+4H) in a degree-4 ring
    auto r = make_ring(truncated_polynomial_presentation("H", 2, 4));
    GradedClass h = GradedClass::generator(r, "H");
    ChernData amb{3, (GradedClass::one(r) + h).pow(4), Flavor::Complex};
    ChernData normal = line_bundle(Rational(4) * h);
    ChernData t = whitney_quotient(amb, normal);
    EXPECT_EQ(t.rank, 2);
    EXPECT_EQ(t.c(1), GradedClass(r));
    EXPECT_EQ(t.c(2).integrate(), 24);
    EXPECT_EQ(a_hat(t).integrate(), 2);
    EXPECT_EQ(todd(t).integrate(), 2);
}

TEST(CharClasses, ToddEqualsExpHalfC1TimesAHat)
{
    for (int n = 1; n <= 7; ++n) {
        ChernData t = cp_tangent(n);
        EXPECT_EQ(todd(t), exp_class(t.c(1) * Rational(1, 2)) * a_hat(t)) << n;
    }
}

TEST(CharClasses, NewtonIdentitiesAgainstExplicitRoots)
{
    // roots x1..x3 of a rank-3 bundle; power sums must equal x1^k + x2^k + x3^k
    const int m = 3;
    auto r = free_ring(m);
    std::vector<GradedClass> x;
    for (int i = 0; i < m; ++i) x.push_back(GradedClass::generator(r, static_cast<std::size_t>(i)));
    GradedClass total = GradedClass::one(r);
    for (const auto& xi : x) total = total * (GradedClass::one(r) + xi);
    ChernData c{m, total, Flavor::Complex};
    PowerSums ps = newton_power_sums(c);
    for (int k = 1; k <= ps.size(); ++k) {
        GradedClass direct(r);
        for (const auto& xi : x) direct += xi.pow(static_cast<unsigned>(k));
        EXPECT_EQ(ps(k), direct) << k;
    }
    EXPECT_EQ(chern_from_power_sums(ps, m, r).total, total);
}

TEST(CharClasses, ChernCharacterOfLineBundleSum)
{
    auto r = cp_ring(4);
    GradedClass h = GradedClass::generator(r, "H");
    ChernData e = direct_sum(line_bundle(h), line_bundle(Rational(-2) * h));
    GradedClass expected = exp_class(h) + exp_class(Rational(-2) * h);
    EXPECT_EQ(chern_character(e), expected);
    EXPECT_EQ(chern_character(trivial_bundle(r, 3)), GradedClass::scalar(r, 3));
}

TEST(CharClasses, TensorWithLineBundle)
{
    auto r = cp_ring(3);
    GradedClass h = GradedClass::generator(r, "H");
    ChernData e = direct_sum(line_bundle(h), line_bundle(Rational(2) * h));
    ChernData twisted = tensor_line_bundle(e, h);
    ChernData expected = direct_sum(line_bundle(Rational(2) * h), line_bundle(Rational(3) * h));
    EXPECT_EQ(twisted.total, expected.total);
    EXPECT_EQ(twisted.rank, 2);
}

TEST(CharClasses, WhitneyQuotientInvertsDirectSum)
{
    auto r = cp_ring(5);
    GradedClass h = GradedClass::generator(r, "H");
    ChernData a = direct_sum(line_bundle(h), line_bundle(Rational(3) * h));
    ChernData b = line_bundle(Rational(-1) * h);
    ChernData q = whitney_quotient(direct_sum(a, b), b);
    EXPECT_EQ(q.total, a.total);
    EXPECT_EQ(q.rank, 2);
}

TEST(CharClasses, MultiplicativityOfAHat)
{
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    auto r = cp_ring(6);
    GradedClass h = GradedClass::generator(r, "H");
    for (int trial = 0; trial < 10; ++trial) {
        ChernData a = direct_sum(line_bundle(Rational(d(rng)) * h), line_bundle(Rational(d(rng)) * h));
        ChernData b = line_bundle(Rational(d(rng)) * h);
        EXPECT_EQ(a_hat(direct_sum(a, b)), a_hat(a) * a_hat(b));
        EXPECT_EQ(todd(direct_sum(a, b)), todd(a) * todd(b));
    }
}

TEST(CharClasses, ValidationRejectsBadData)
{
    auto r = cp_ring(2);
    ChernData bad{1, GradedClass::scalar(r, 2), Flavor::Complex};
    EXPECT_THROW(validate(bad), Error);
    EXPECT_THROW(line_bundle(GradedClass::one(r)), Error);
}
