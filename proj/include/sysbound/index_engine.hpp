#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "char_classes.hpp"
#include "errors.hpp"
#include "graded_ring.hpp"
#include "pi_scaled.hpp"
#include "polynomial.hpp"

namespace sysbound
{

/// P(a) = <xi e^{a x} e^{c/2} A-hat, [X]> together with c = q0 x.
struct IndexPolynomial {
    Polynomial p;
    Rational q0;
};

inline Rational todd_genus(const Space& x)
{
    x.require_ring();
    if (!x.tangent) fail(ErrorCode::MissingTangentData, x.name + " has no tangent Chern data", "complex tangent bundle");
    if (!x.complex || x.tangent->flavor != Flavor::Complex)
        fail(ErrorCode::PreconditionUnmet, x.name + " is not a complex manifold", "complex tangent bundle");
    return x.integrate(todd(*x.tangent));
}

namespace detail
{

inline const GradedClass& require_a_hat(const Space& x)
{
    x.require_ring();
    if (!x.a_hat) fail(ErrorCode::MissingTangentData, x.name + " has no A-hat class on record", "tangent data");
    return *x.a_hat;
}

inline const GradedClass& require_primitive(const Space& x)
{
    if (!x.primitive_x) fail(ErrorCode::NoPrimitiveClass, x.name + " has no primitive degree-2 class", "b2(X) = 1");
    return *x.primitive_x;
}

/// xi for odd dimension, 1 otherwise.
inline GradedClass odd_factor(const Space& x)
{
    if (x.real_dim % 2 == 0) return GradedClass::one(x.ring);
    if (!x.odd_xi)
        fail(ErrorCode::MissingOddClass, x.name + " is odd-dimensional without a degree-1 class",
             "odd dimension needs xi in H^1 with xi u^n != 0");
    return *x.odd_xi;
}

/// q with c = q x, or nullopt if c is not a multiple of x.
inline std::optional<Rational> proportionality(const GradedClass& c, const GradedClass& x)
{
    if (x.is_zero()) return std::nullopt;
    const auto& [m, v] = *x.terms().begin();
    Rational q = c.coefficient(m) / v;
    if (c != q * x) return std::nullopt;
    return q;
}

} // namespace detail

inline IndexPolynomial index_polynomial(const Space& x)
{
    const GradedClass& ahat = detail::require_a_hat(x);
    const GradedClass& u = detail::require_primitive(x);
    GradedClass base = detail::odd_factor(x) * exp_class(x.spin_c * Rational(1, 2)) * ahat;
    const int n = x.real_dim / 2;
    std::vector<Rational> coeffs;
    GradedClass power = base;
    for (int j = 0; j <= n; ++j) {
        coeffs.push_back(x.integrate(power) / factorial(static_cast<unsigned>(j)));
        power = power * u;
    }
    auto q0 = detail::proportionality(x.spin_c, u);
    if (!q0) fail(ErrorCode::PreconditionUnmet, "spin^c class of " + x.name + " is not a multiple of x", "c = q0 x");
    return {Polynomial(coeffs), *q0};
}

/// Direct ring evaluation of P(a), independent of the coefficient expansion.
inline Rational index_value(const Space& x, const Rational& a)
{
    const GradedClass& ahat = detail::require_a_hat(x);
    const GradedClass& u = detail::require_primitive(x);
    return x.integrate(detail::odd_factor(x) * exp_class(a * u) * exp_class(x.spin_c * Rational(1, 2)) * ahat);
}

struct LengthResult {
    int length = 0;
    Integer witness_a; // a with |q0 + 2a| = length and P(a) != 0
    IndexPolynomial poly;
};

inline LengthResult length_with_witness(const Space& x)
{
    IndexPolynomial ip = index_polynomial(x);
    if (ip.q0.get_den() != 1)
        fail(ErrorCode::PreconditionUnmet, "spin^c class must be an integral multiple of x", "c = q0 x with q0 integral");
    if (ip.p.is_zero())
        fail(ErrorCode::PreconditionUnmet, "index polynomial of " + x.name + " vanishes identically",
             "<xi u^n> != 0 and nonzero twisted index");
    const Integer q0 = ip.q0.get_num();
    const long bound = x.real_dim / 2 + 1;
    // walk |q0 + 2a| = 0 or 1, then upward in steps of 2
    const long start = mpz_odd_p(q0.get_mpz_t()) ? 1 : 0;
    for (long len = start; len <= bound; len += 2) {
        for (long sgn_ : {-1L, 1L}) {
            // q0 + 2a = sgn_ * len
            Integer twice_a = Integer(sgn_ * len) - q0;
            Integer a = twice_a / 2;
            if (ip.p(Rational(a)) != 0) return {static_cast<int>(len), a, ip};
            if (len == 0) break;
        }
    }
    fail(ErrorCode::WindowExhausted, "no nonvanishing twist within |q0 + 2a| <= " + std::to_string(bound) + " for " + x.name,
         "parity argument bounds the length by n + 1");
}

inline int length(const Space& x) { return length_with_witness(x).length; }

/// length(X x N) for b2(X) = 1, b2(N) = 0, checked against length(X).
inline int product_length_bound(const Space& x, const Space& nfac)
{
    if (x.b2 != 1 || nfac.b2 != 0)
        fail(ErrorCode::KunnethViolation, "b2(X x N) must be 1 with b2(X) = 1 and b2(N) = 0", "b2(X) = 1, b2(N) = 0");
    if (x.real_dim % 2 == 1 && nfac.real_dim % 2 == 1)
        fail(ErrorCode::PreconditionUnmet, "dim X and dim N cannot both be odd", "dim X, dim N not both odd");
    const int lx = length(x);
    const int lm = length(product(x, nfac));
    if (lm > lx)
        fail(ErrorCode::BoundViolated, "length(X x N) = " + std::to_string(lm) + " exceeds length(X) = " + std::to_string(lx));
    return lm;
}

// ---------------------------------------------------------------------------
// Closed-form systolic constants.

enum class BoundKind {
    Kahler,          // 4 pi n (n+1)
    KahlerRefined,   // 4 pi n^2, X not CP^n
    SpinCProduct,    // 4 pi (n + floor(dim N / 2)) (n+1)
    Length,          // 4 pi floor(dim M / 2) length(M)
    NonBundle,       // 4 pi (n(n-1) + 2), X not CP^n or Q^n
    FanoIndex,       // 4 pi (n + floor(dim N / 2)) i_X
};

inline const char* bound_name(BoundKind k)
{
    switch (k) {
    case BoundKind::Kahler: return "kahler";
    case BoundKind::KahlerRefined: return "kahler-refined";
    case BoundKind::SpinCProduct: return "spinc-product";
    case BoundKind::Length: return "length";
    case BoundKind::NonBundle: return "projective-refined";
    case BoundKind::FanoIndex: return "fano-index";
    }
    return "?";
}

inline std::optional<BoundKind> parse_bound_kind(const std::string& s)
{
    for (BoundKind k : {BoundKind::Kahler, BoundKind::KahlerRefined, BoundKind::SpinCProduct, BoundKind::Length,
                        BoundKind::NonBundle, BoundKind::FanoIndex})
        if (s == bound_name(k)) return k;
    return std::nullopt;
}

namespace detail
{

inline void require_kahler(const Space& x)
{
    if (!x.complex || x.metadata_only())
        fail(ErrorCode::PreconditionUnmet, x.name + " is not a compact Kähler manifold in the catalog",
             "X compact Kähler");
}

/// Nonvanishing top power of the designated degree-2 class (with xi in odd dimension).
inline void require_top_power(const Space& x)
{
    x.require_ring();
    const GradedClass& u = require_primitive(x);
    const int n = x.real_dim / 2;
    if (x.integrate(odd_factor(x) * u.pow(static_cast<unsigned>(n))) == 0)
        fail(ErrorCode::PreconditionUnmet, x.name + " has u^n = 0", "degree-2 class u with u^n != 0");
}

/// <eta e^{c/2} A-hat, [N]> != 0.
inline void require_nonzero_index(const Space& nfac)
{
    if (nfac.family == Family::Point) return;
    const GradedClass& ahat = require_a_hat(nfac);
    GradedClass eta = GradedClass::one(nfac.ring);
    if (nfac.real_dim % 2) {
        if (!nfac.odd_xi)
            fail(ErrorCode::PreconditionUnmet, nfac.name + " is odd-dimensional without a degree-1 class",
                 "odd dim N needs eta in H^1");
        eta = *nfac.odd_xi;
    }
    if (nfac.integrate(eta * exp_class(nfac.spin_c * Rational(1, 2)) * ahat) == 0)
        fail(ErrorCode::PreconditionUnmet, nfac.name + " has vanishing twisted A-hat genus",
             "<e^{c/2} A-hat(TN), [N]> != 0");
}

} // namespace detail

inline PiScaled systolic_bound(const Space& x, const Space& nfac, BoundKind kind)
{
    const long n = x.real_dim / 2;
    const long half_n = nfac.real_dim / 2;
    switch (kind) {
    case BoundKind::Kahler:
        detail::require_kahler(x);
        return {Rational(4 * n * (n + 1)), 1};
    case BoundKind::KahlerRefined:
        detail::require_kahler(x);
        if (x.family == Family::ProjectiveSpace)
            fail(ErrorCode::PreconditionUnmet, "refined constant excludes CP^n", "X not biholomorphic to CP^n");
        return {Rational(4 * n * n), 1};
    case BoundKind::SpinCProduct: {
        if (x.b2 + nfac.b2 != 1 || x.b2 != 1)
            fail(ErrorCode::PreconditionUnmet, "b2(X x N) = 1 with b2(X) = 1 required", "b2(X x N) = 1");
        detail::require_top_power(x);
        detail::require_nonzero_index(nfac);
        return {Rational(4 * (n + half_n) * (n + 1)), 1};
    }
    case BoundKind::Length: {
        Space m = nfac.family == Family::Point ? x : product(x, nfac);
        const int ell = length(m);
        if (ell == 0)
            fail(ErrorCode::LichnerowiczObstruction, m.name + " has nonzero A-hat genus: no positive scalar curvature metric",
                 "length > 0");
        return {Rational(4 * static_cast<long>(m.real_dim / 2) * ell), 1};
    }
    case BoundKind::NonBundle:
        detail::require_kahler(x);
        if (x.family == Family::ProjectiveSpace || x.family == Family::Quadric)
            fail(ErrorCode::PreconditionUnmet, "refined constant excludes CP^n and Q^n", "X not CP^n or Q^n");
        return {Rational(4 * (n * (n - 1) + 2)), 1};
    case BoundKind::FanoIndex: {
        if (!x.complex || !x.fano_index || x.b2 != 1)
            fail(ErrorCode::PreconditionUnmet, x.name + " is not a Fano manifold with b2 = 1 and known index",
                 "X Fano with b2(X) = 1");
        if (nfac.b2 != 0) fail(ErrorCode::PreconditionUnmet, "b2(N) = 0 required", "b2(N) = 0");
        detail::require_nonzero_index(nfac);
        return {Rational(4 * (n + half_n) * *x.fano_index), 1};
    }
    }
    fail(ErrorCode::InvalidArgument, "unknown bound");
}

// ---------------------------------------------------------------------------
// Kähler-class quantities. alpha = scale * cls with scale = q pi^k.

struct KahlerClass {
    PiScaled scale{1, 0};
    GradedClass cls;
};

namespace detail
{

struct TopNumbers {
    Rational c1_alpha; // c1 . A^{n-1}
    Rational alpha_n;  // A^n
    int n;
};

inline TopNumbers top_numbers(const Space& x, const KahlerClass& alpha)
{
    x.require_ring();
    if (!x.c1) fail(ErrorCode::MissingTangentData, x.name + " has no first Chern class", "complex structure");
    if (alpha.cls.ring() != x.ring) fail(ErrorCode::RingMismatch, "Kähler class does not belong to " + x.name);
    if (!alpha.cls.is_homogeneous(2) || alpha.cls.is_zero())
        fail(ErrorCode::NotDegreeTwo, "Kähler class must be a nonzero degree-2 class");
    if (alpha.scale.q <= 0) fail(ErrorCode::DegenerateClass, "Kähler class scale must be positive");
    const int n = x.real_dim / 2;
    GradedClass pw = alpha.cls.pow(static_cast<unsigned>(n - 1));
    TopNumbers t{x.integrate(*x.c1 * pw), x.integrate(alpha.cls * pw), n};
    if (t.alpha_n == 0) fail(ErrorCode::DegenerateClass, "alpha^n = 0", "alpha^n != 0");
    return t;
}

} // namespace detail

/// 4 pi n (c1 . alpha^{n-1}) / alpha^n.
inline PiScaled avg_scalar_curvature(const Space& x, const KahlerClass& alpha)
{
    auto t = detail::top_numbers(x, alpha);
    return {Rational(4 * t.n) * t.c1_alpha / t.alpha_n / alpha.scale.q, 1 - alpha.scale.pi_exponent};
}

inline PiScaled volume(const Space& x, const KahlerClass& alpha)
{
    auto t = detail::top_numbers(x, alpha);
    return {t.alpha_n * pow(alpha.scale.q, static_cast<unsigned>(t.n)) / factorial(static_cast<unsigned>(t.n)),
            alpha.scale.pi_exponent * t.n};
}

/// 8 pi n^2 / Rbar(alpha).
inline PiScaled gromov_width_bound(const Space& x, const KahlerClass& alpha)
{
    PiScaled r = avg_scalar_curvature(x, alpha);
    if (r.q <= 0) fail(ErrorCode::PreconditionUnmet, "total scalar curvature must be positive", "Rbar > 0");
    const long n = x.real_dim / 2;
    return PiScaled(Rational(8 * n * n), 1) / r;
}

/// k -> <e^{kL} Td(TX), [X]>.
inline Polynomial hilbert_polynomial(const Space& x, const GradedClass& l)
{
    x.require_ring();
    if (!x.tangent) fail(ErrorCode::MissingTangentData, x.name + " has no tangent Chern data", "complex tangent bundle");
    if (!l.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "line bundle class must have degree 2");
    GradedClass td = todd(*x.tangent);
    std::vector<Rational> coeffs;
    GradedClass power = td;
    for (int j = 0; j <= x.real_dim / 2; ++j) {
        coeffs.push_back(x.integrate(power) / factorial(static_cast<unsigned>(j)));
        power = power * l;
    }
    return Polynomial(coeffs);
}

} // namespace sysbound
