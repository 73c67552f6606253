#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace sysbound
{

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational binomial(long n, long k)
{
    // generalized to negative upper index: binom(n, k) = n(n-1)...(n-k+1)/k!
    if (k < 0) return 0;
    Rational num = 1;
    for (long i = 0; i < k; ++i) num *= Rational(n - i);
    return num / factorial(static_cast<unsigned>(k));
}

inline Rational pow(const Rational& base, unsigned e)
{
    Rational r = 1;
    Rational b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

// Floor of a rational as a big integer.
inline Integer floor_div(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// Exact rational parsed from "p" or "p/q".
inline Rational parse_rational(const std::string& text)
{
    Rational q(text, 10);
    q.canonicalize();
    return q;
}

} // namespace sysbound
