#pragma once

#include <string>

#include <gmpxx.h>

#include "rational.hpp"

namespace sysbound
{

/// Exact value q * pi^k. Canonical: q in lowest terms, k = 0 whenever q = 0.
struct PiScaled {
    Rational q = 0;
    int pi_exponent = 0;

    PiScaled() = default;
    PiScaled(Rational coeff, int k) : q(std::move(coeff)), pi_exponent(k)
    {
        q.canonicalize();
        if (q == 0) pi_exponent = 0;
    }

    friend PiScaled operator*(const PiScaled& a, const PiScaled& b)
    {
        return {a.q * b.q, a.pi_exponent + b.pi_exponent};
    }
    friend PiScaled operator/(const PiScaled& a, const PiScaled& b)
    {
        return {a.q / b.q, a.pi_exponent - b.pi_exponent};
    }
    friend bool operator==(const PiScaled& a, const PiScaled& b)
    {
        return a.q == b.q && a.pi_exponent == b.pi_exponent;
    }
    friend bool operator!=(const PiScaled& a, const PiScaled& b) { return !(a == b); }

    /// "q * pi^k", "q * pi" or "q".
    std::string to_string() const
    {
        std::string s = sysbound::to_string(q);
        if (pi_exponent == 0) return s;
        s += " * pi";
        if (pi_exponent != 1) s += "^" + std::to_string(pi_exponent);
        return s;
    }

    /// Decimal rendering with `digits` significant digits (at most 100).
    std::string approx(int digits) const
    {
        static const char* kPi =
            "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214";
        const unsigned long bits = static_cast<unsigned long>(digits) * 4 + 64;
        mpf_class pi(kPi, bits);
        mpf_class value(q, bits);
        mpf_class factor(1, bits);
        for (int i = 0; i < (pi_exponent < 0 ? -pi_exponent : pi_exponent); ++i) factor *= pi;
        if (pi_exponent < 0) value /= factor;
        else value *= factor;
        mp_exp_t exp10 = 0;
        std::string mant = value.get_str(exp10, 10, static_cast<std::size_t>(digits));
        if (mant.empty()) return "0";
        bool neg = mant[0] == '-';
        if (neg) mant.erase(0, 1);
        std::string out;
        if (exp10 <= 0) {
            out = "0." + std::string(static_cast<std::size_t>(-exp10), '0') + mant;
        } else if (static_cast<std::size_t>(exp10) >= mant.size()) {
            out = mant + std::string(static_cast<std::size_t>(exp10) - mant.size(), '0');
        } else {
            out = mant.substr(0, static_cast<std::size_t>(exp10)) + "." + mant.substr(static_cast<std::size_t>(exp10));
        }
        return neg ? "-" + out : out;
    }
};

inline PiScaled pi_times(const Rational& q, int k = 1) { return {q, k}; }

} // namespace sysbound
