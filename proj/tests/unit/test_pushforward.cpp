#include <gtest/gtest.h>

#include <random>

#include "sysbound/pushforward.hpp"

using namespace sysbound;

namespace
{

/// Localization sum evaluated directly at a point with distinct coordinates.
Rational localization_at(int k, int r, int j, const std::vector<Rational>& x)
{
    Rational total = 0;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (__builtin_popcount(mask) != k) continue;
        Rational s = 0, den = 1;
        for (int i = 0; i < r; ++i) {
            if (!(mask >> i & 1)) continue;
            s -= x[static_cast<std::size_t>(i)];
            for (int l = 0; l < r; ++l)
                if (!(mask >> l & 1)) den *= x[static_cast<std::size_t>(l)] - x[static_cast<std::size_t>(i)];
        }
        total += pow(s, static_cast<unsigned>(k * (r - k) + j)) / den;
    }
    return total;
}

/// Complete homogeneous symmetric polynomial h_j at a point.
Rational complete_h(int j, const std::vector<Rational>& x, std::size_t from = 0)
{
    if (j == 0) return 1;
    Rational s = 0;
    for (std::size_t i = from; i < x.size(); ++i) s += x[i] * complete_h(j - 1, x, i);
    return s;
}

std::vector<Rational> distinct_point(std::mt19937& rng, int r)
{
    std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
    while (true) {
        std::vector<Rational> x;
        for (int i = 0; i < r; ++i) x.push_back(make_rational(num(rng), den(rng)));
        bool ok = true;
        for (int a = 0; a < r; ++a)
            for (int b = a + 1; b < r; ++b) ok = ok && x[static_cast<std::size_t>(a)] != x[static_cast<std::size_t>(b)];
        if (ok) return x;
    }
}

} // namespace

TEST(Pushforward, LowestCase)
{
    SymmetricPolynomial p = localization_pushforward(1, 2, 1);
    EXPECT_EQ(p, Rational(-1) * SymmetricPolynomial::power_sum(2, 1));
    EXPECT_EQ(p.to_string(), "-x1 - x2");
    EXPECT_EQ(localization_pushforward(1, 2, 0), SymmetricPolynomial::constant(2, 1));
}

TEST(Pushforward, PolynomialAgreesWithPointwiseLocalization)
{
    std::mt19937 rng(17);
    for (int r = 2; r <= 5; ++r)
        for (int k = 1; k < r; ++k)
            for (int j = 0; j <= 4; ++j) {
                SymmetricPolynomial p = localization_pushforward(k, r, j);
                EXPECT_TRUE(p.is_symmetric());
                if (!p.is_zero()) {
                    EXPECT_EQ(p.homogeneous_degree(), j);
                }
                for (int trial = 0; trial < 3; ++trial) {
                    auto x = distinct_point(rng, r);
                    EXPECT_EQ(p.evaluate(x), localization_at(k, r, j, x)) << k << " " << r << " " << j;
                }
            }
}

TEST(Pushforward, ProjectiveBundleCaseIsSignedCompleteSymmetric)
{
    // k = 1 recovers the Segre classes: (-1)^j h_j
    std::mt19937 rng(3);
    for (int r = 2; r <= 5; ++r)
        for (int j = 0; j <= 4; ++j) {
            SymmetricPolynomial p = localization_pushforward(1, r, j);
            for (int trial = 0; trial < 3; ++trial) {
                auto x = distinct_point(rng, r);
                Rational expected = (j % 2 ? -1 : 1) * kSegreSign * complete_h(j, x);
                if (j == 0) expected = 1;
                EXPECT_EQ(p.evaluate(x), expected) << r << " " << j;
            }
        }
}

TEST(Pushforward, PowerSumExpansion)
{
    // h_2 = (p_1^2 + p_2) / 2 in three variables
    SymmetricPolynomial h2 = make_rational(1, 2) * (SymmetricPolynomial::power_sum(3, 1).pow(2) + SymmetricPolynomial::power_sum(3, 2));
    auto e = power_sum_expansion(h2, 2);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e.at(std::vector<int>{2}), make_rational(1, 2));
    EXPECT_EQ(e.at(std::vector<int>{1, 1}), make_rational(1, 2));
    EXPECT_THROW(power_sum_expansion(h2, 4), Error);
}

TEST(Pushforward, PrimitiveCoefficientOfProjectiveBundle)
{
    // coefficient of p_b in (-1)^b h_b is (-1)^b / b
    for (int r = 2; r <= 5; ++r)
        for (int b = 1; b <= r; ++b)
            EXPECT_EQ(primitive_coefficient(1, r, b), make_rational(b % 2 ? -1 : 1, b)) << r << " " << b;
}

TEST(Pushforward, PrimitiveCoefficientVanishesWithBracket)
{
    for (int r = 2; r <= 5; ++r)
        for (int k = 1; k < r; ++k)
            for (int b = 2; b <= std::min(r, 4); ++b) {
                Rational c = primitive_coefficient(k, r, b);
                Rational br = primitive_bracket(k, r, b);
                EXPECT_EQ(c == 0, br == 0) << k << " " << r << " " << b;
                auto f = primitive_factor(k, r, b);
                EXPECT_EQ(f.has_value(), br != 0);
                if (f) {
                    EXPECT_EQ(*f * br, c);
                }
            }
    // p_1 vanishes on the traceless locus, so the bracket is zero at b = 1 for every (k, r)
    for (int r = 2; r <= 5; ++r) {
        EXPECT_EQ(primitive_bracket(1, r, 1), 0);
        EXPECT_NE(primitive_coefficient(1, r, 1), 0);
        EXPECT_FALSE(primitive_factor(1, r, 1).has_value());
    }
    // at r = 2k the bracket is k (1/2)^b (1 + (-1)^b)
    for (int b = 1; b <= 4; ++b) EXPECT_EQ(primitive_bracket(2, 4, b) == 0, b % 2 == 1);
    EXPECT_EQ(primitive_coefficient(2, 4, 3), 0);
    EXPECT_NE(primitive_coefficient(2, 4, 2), 0);
    EXPECT_THROW(primitive_coefficient(2, 4, 5), Error);
}

TEST(Pushforward, SegreClasses)
{
    auto r = make_ring(truncated_polynomial_presentation("H", 5, 1));
    GradedClass h = GradedClass::generator(r, "H");
    ChernData l = line_bundle(Rational(2) * h);
    for (int b = 0; b <= 5; ++b)
        EXPECT_EQ(segre_pushforward(l, b), pow(Rational(-2), static_cast<unsigned>(b)) * h.pow(static_cast<unsigned>(b)));
    // c(E) s(E) = 1 degree by degree
    ChernData e = direct_sum(line_bundle(h), direct_sum(line_bundle(Rational(3) * h), line_bundle(Rational(-1) * h)));
    for (int b = 1; b <= 5; ++b) {
        GradedClass sum(r);
        for (int i = 0; i <= b; ++i) sum += e.c(i) * segre_pushforward(e, b - i);
        EXPECT_TRUE(sum.is_zero()) << b;
    }
    EXPECT_THROW(segre_pushforward(l, 6), Error);
}

TEST(Pushforward, DomainErrors)
{
    EXPECT_THROW(localization_pushforward(0, 3, 1), Error);
    EXPECT_THROW(localization_pushforward(3, 3, 1), Error);
    EXPECT_THROW(localization_pushforward(1, 7, 1), Error);
    EXPECT_THROW(primitive_coefficient(1, 3, 0), Error);
}
