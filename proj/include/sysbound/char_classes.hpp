#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "graded_ring.hpp"
#include "series.hpp"

namespace sysbound
{

enum class Flavor { Complex, Realified };

/// Total Chern class of a (virtual) bundle over a graded ring.
struct ChernData {
    int rank = 0;
    GradedClass total;
    Flavor flavor = Flavor::Complex;

    const RingHandle& ring() const { return total.ring(); }

    /// c_k, the degree-2k component.
    GradedClass c(int k) const { return total.component(2 * k); }
};

inline void validate(const ChernData& c)
{
    if (!c.total.ring()) fail(ErrorCode::InvalidArgument, "Chern data without a ring");
    if (c.total.constant_term() != 1) fail(ErrorCode::InvalidArgument, "total Chern class must start with 1");
    for (const auto& [m, q] : c.total.terms())
        if (c.ring()->degree(m) % 2 != 0) fail(ErrorCode::InvalidArgument, "Chern classes live in even degrees");
    if (c.rank < 0) fail(ErrorCode::InvalidArgument, "negative rank");
}

inline ChernData trivial_bundle(const RingHandle& ring, int rank)
{
    return {rank, GradedClass::one(ring), Flavor::Complex};
}

inline ChernData line_bundle(const GradedClass& x)
{
    if (!x.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "line bundle needs a degree-2 first Chern class");
    return {1, x + Rational(1), Flavor::Complex};
}

inline ChernData direct_sum(const ChernData& a, const ChernData& b)
{
    Flavor f = (a.flavor == Flavor::Complex && b.flavor == Flavor::Complex) ? Flavor::Complex : Flavor::Realified;
    return {a.rank + b.rank, a.total * b.total, f};
}

/// Power sums p_1..p_m of the Chern roots, m = truncation / 2.
struct PowerSums {
    std::vector<GradedClass> p; // p[k-1] = p_k

    const GradedClass& operator()(int k) const { return p.at(static_cast<std::size_t>(k - 1)); }
    int size() const { return static_cast<int>(p.size()); }
};

inline PowerSums newton_power_sums(const ChernData& c)
{
    validate(c);
    const int m = c.ring()->truncation() / 2;
    std::vector<GradedClass> ck;
    for (int k = 0; k <= m; ++k) ck.push_back(c.c(k));
    PowerSums out;
    for (int k = 1; k <= m; ++k) {
        // p_k = sum_{i<k} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
        GradedClass pk = ck[static_cast<std::size_t>(k)] * Rational((k % 2 ? 1 : -1) * k);
        for (int i = 1; i < k; ++i) {
            GradedClass term = ck[static_cast<std::size_t>(i)] * out(k - i);
            if (i % 2) pk += term;
            else pk -= term;
        }
        out.p.push_back(pk);
    }
    return out;
}

/// Inverse of newton_power_sums: c_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} c_{k-i} p_i.
inline ChernData chern_from_power_sums(const PowerSums& ps, int rank, const RingHandle& ring)
{
    std::vector<GradedClass> ck{GradedClass::one(ring)};
    for (int k = 1; k <= ps.size(); ++k) {
        GradedClass acc(ring);
        for (int i = 1; i <= k; ++i) {
            GradedClass term = ck[static_cast<std::size_t>(k - i)] * ps(i);
            if (i % 2) acc += term;
            else acc -= term;
        }
        ck.push_back(acc * make_rational(1, k));
    }
    GradedClass total(ring);
    for (const auto& c : ck) total += c;
    return {rank, total, Flavor::Complex};
}

namespace detail
{

/// exp(sum_k a_k p_k) for the multiplicative sequence whose per-root
/// generating function has logarithm sum_k a_k x^k.
inline GradedClass multiplicative_class(const PowerSums& ps, const series::Coeffs& log_coeffs, const RingHandle& ring)
{
    GradedClass exponent(ring);
    for (int k = 1; k <= ps.size() && static_cast<std::size_t>(k) < log_coeffs.size(); ++k)
        if (log_coeffs[static_cast<std::size_t>(k)] != 0) exponent += log_coeffs[static_cast<std::size_t>(k)] * ps(k);
    const auto order = static_cast<std::size_t>(ring->truncation());
    return apply_series(series::exp_coefficients(order), exponent);
}

} // namespace detail

inline GradedClass a_hat(const ChernData& c)
{
    const auto order = static_cast<std::size_t>(c.ring()->truncation() / 2 + 1);
    auto log_coeffs = series::log(series::a_hat_generating(order), order);
    return detail::multiplicative_class(newton_power_sums(c), log_coeffs, c.ring());
}

inline GradedClass todd(const ChernData& c)
{
    if (c.flavor != Flavor::Complex) fail(ErrorCode::PreconditionUnmet, "Todd class needs a complex bundle");
    const auto order = static_cast<std::size_t>(c.ring()->truncation() / 2 + 1);
    auto log_coeffs = series::log(series::todd_generating(order), order);
    return detail::multiplicative_class(newton_power_sums(c), log_coeffs, c.ring());
}

inline GradedClass chern_character(const ChernData& c)
{
    if (c.flavor != Flavor::Complex) fail(ErrorCode::PreconditionUnmet, "Chern character needs a complex bundle");
    PowerSums ps = newton_power_sums(c);
    GradedClass out = GradedClass::scalar(c.ring(), Rational(c.rank));
    for (int k = 1; k <= ps.size(); ++k) out += ps(k) * (1 / factorial(static_cast<unsigned>(k)));
    return out;
}

/// c(ambient) / c(normal), truncated; rank is the difference.
inline ChernData whitney_quotient(const ChernData& ambient, const ChernData& normal)
{
    if (ambient.ring() != normal.ring()) fail(ErrorCode::RingMismatch, "quotient of bundles over different rings");
    if (normal.total.constant_term() != 1)
        fail(ErrorCode::DivisionInconsistent, "divisor total Chern class must have constant term 1");
    if (normal.rank > ambient.rank) fail(ErrorCode::InvalidArgument, "normal rank exceeds ambient rank");
    GradedClass y = normal.total - GradedClass::one(ambient.ring());
    // 1/(1+y) = sum (-y)^k
    std::vector<Rational> alternating;
    for (int k = 0; k <= ambient.ring()->truncation(); ++k) alternating.push_back(Rational(k % 2 ? -1 : 1));
    GradedClass inverse = apply_series(alternating, y);
    return {ambient.rank - normal.rank, ambient.total * inverse, ambient.flavor};
}

/// E tensor L for a line bundle with first Chern class x.
inline ChernData tensor_line_bundle(const ChernData& e, const GradedClass& x)
{
    PowerSums ps = newton_power_sums(e);
    PowerSums out;
    const RingHandle& ring = e.ring();
    for (int k = 1; k <= ps.size(); ++k) {
        // p_k(E (x) L) = sum_j binom(k, j) p_j(E) x^{k-j}, with p_0 = rank
        GradedClass acc = x.pow(static_cast<unsigned>(k)) * Rational(e.rank);
        for (int j = 1; j <= k; ++j) acc += binomial(k, j) * (ps(j) * x.pow(static_cast<unsigned>(k - j)));
        out.p.push_back(acc);
    }
    return chern_from_power_sums(out, e.rank, ring);
}

} // namespace sysbound
