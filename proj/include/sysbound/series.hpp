#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace sysbound::series
{

// Univariate truncated power series: coefficient k multiplies x^k.
using Coeffs = std::vector<Rational>;

inline Coeffs truncate(Coeffs a, std::size_t order)
{
    a.resize(order + 1, Rational(0));
    return a;
}

inline Coeffs multiply(const Coeffs& a, const Coeffs& b, std::size_t order)
{
    Coeffs out(order + 1, Rational(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

/// a / b by long division; b(0) must be nonzero.
inline Coeffs divide(const Coeffs& a, const Coeffs& b, std::size_t order)
{
    if (b.empty() || b[0] == 0) fail(ErrorCode::DivisionInconsistent, "series divisor has zero constant term");
    Coeffs q(order + 1, Rational(0));
    Coeffs rem = truncate(a, order);
    for (std::size_t k = 0; k <= order; ++k) {
        q[k] = rem[k] / b[0];
        if (q[k] == 0) continue;
        for (std::size_t j = 0; j < b.size() && k + j <= order; ++j) rem[k + j] -= q[k] * b[j];
    }
    return q;
}

inline Coeffs derivative(const Coeffs& a)
{
    Coeffs out;
    for (std::size_t k = 1; k < a.size(); ++k) out.push_back(a[k] * Rational(static_cast<long>(k)));
    return out;
}

/// log f for f(0) = 1, via log f = integral of f'/f.
inline Coeffs log(const Coeffs& f, std::size_t order)
{
    if (f.empty() || f[0] != 1) fail(ErrorCode::InvalidArgument, "series log needs constant term 1");
    Coeffs q = divide(derivative(f), f, order);
    Coeffs out(order + 1, Rational(0));
    for (std::size_t k = 1; k <= order; ++k) out[k] = q[k - 1] / Rational(static_cast<long>(k));
    return out;
}

/// (x/2)/sinh(x/2), the A-hat generating function.
inline Coeffs a_hat_generating(std::size_t order)
{
    Coeffs denom(order + 1, Rational(0));
    // sinh(x/2)/(x/2) = sum (x/2)^{2k} / (2k+1)!
    for (std::size_t k = 0; 2 * k <= order; ++k)
        denom[2 * k] = pow(Rational(1, 2), static_cast<unsigned>(2 * k)) / factorial(static_cast<unsigned>(2 * k + 1));
    return divide(Coeffs{1}, denom, order);
}

/// x/(1 - e^{-x}), the Todd generating function.
inline Coeffs todd_generating(std::size_t order)
{
    Coeffs denom(order + 1, Rational(0));
    // (1 - e^{-x})/x = sum (-1)^k x^k / (k+1)!
    for (std::size_t k = 0; k <= order; ++k)
        denom[k] = Rational(k % 2 ? -1 : 1) / factorial(static_cast<unsigned>(k + 1));
    return divide(Coeffs{1}, denom, order);
}

inline Coeffs exp_coefficients(std::size_t order)
{
    Coeffs out;
    for (std::size_t k = 0; k <= order; ++k) out.push_back(1 / factorial(static_cast<unsigned>(k)));
    return out;
}

} // namespace sysbound::series
