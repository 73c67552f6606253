#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace sysbound
{

/// Dense univariate polynomial over Q; coefficient k multiplies t^k.
class Polynomial
{
public:
    Polynomial() = default;
    Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const Rational& q) { return Polynomial(std::vector<Rational>{q}); }
    static Polynomial variable() { return Polynomial(std::vector<Rational>{0, 1}); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational coefficient(int k) const
    {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
    }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& t) const
    {
        Rational v = 0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * t + c_[i];
        return v;
    }

    Polynomial derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
        return Polynomial(std::move(d));
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Rational& q)
    {
        std::vector<Rational> r = a.c_;
        for (auto& x : r) x *= q;
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Rational& q, const Polynomial& a) { return a * q; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(r));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const
    {
        Polynomial r = constant(1);
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    /// Euclidean division: *this = q * d + r with deg r < deg d.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const
    {
        if (d.is_zero()) fail(ErrorCode::InvalidArgument, "polynomial division by zero");
        std::vector<Rational> rem = c_;
        std::vector<Rational> q(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, Rational(0));
        for (std::size_t k = q.size(); k-- > 0;) {
            Rational f = rem[k + d.c_.size() - 1] / d.leading();
            q[k] = f;
            for (std::size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
        }
        return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
    }

    Polynomial monic() const { return is_zero() ? *this : *this * (1 / leading()); }

    /// Order of vanishing at t = point.
    int order_at(const Rational& point) const
    {
        if (is_zero()) return -1;
        Polynomial lin(std::vector<Rational>{-point, 1});
        Polynomial p = *this;
        int k = 0;
        while (true) {
            auto [q, r] = p.divmod(lin);
            if (!r.is_zero()) return k;
            p = q;
            ++k;
        }
    }

    std::string to_string(const std::string& var = "t") const
    {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = c_.size(); k-- > 0;) {
            if (c_[k] == 0) continue;
            Rational a = abs_value(c_[k]);
            os << (first ? (c_[k] < 0 ? "-" : "") : (c_[k] < 0 ? " - " : " + "));
            first = false;
            if (k == 0 || a != 1) os << sysbound::to_string(a);
            if (k > 0) {
                if (a != 1) os << '*';
                os << var;
                if (k > 1) os << '^' << k;
            }
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Lagrange interpolation through (x_i, y_i) with distinct x_i.
inline Polynomial interpolate(const std::vector<std::pair<Rational, Rational>>& pts)
{
    Polynomial out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Polynomial basis = Polynomial::constant(1);
        Rational denom = 1;
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            basis = basis * Polynomial(std::vector<Rational>{-pts[j].first, 1});
            denom *= pts[i].first - pts[j].first;
        }
        out = out + basis * (pts[i].second / denom);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact real-root isolation over Q via Sturm sequences.

namespace detail
{

inline std::vector<Polynomial> sturm_sequence(const Polynomial& p)
{
    std::vector<Polynomial> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        auto r = seq[seq.size() - 2].divmod(seq.back()).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

inline int sign_changes(const std::vector<Polynomial>& seq, const Rational& t)
{
    int changes = 0;
    int last = 0;
    for (const auto& q : seq) {
        int s = sgn(q(t));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

} // namespace detail

/// A real root of a square-free polynomial located either exactly (lo == hi)
/// or in an open interval (lo, hi) holding exactly one root.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

/// Square-free part p / gcd(p, p').
inline Polynomial square_free(const Polynomial& p)
{
    if (p.degree() <= 0) return p;
    Polynomial g = gcd(p, p.derivative());
    return p.divmod(g).first;
}

/// Roots of p in the half-open interval (lo, hi], each isolated.
inline std::vector<RootInterval> isolate_roots(const Polynomial& p, const Rational& lo, const Rational& hi)
{
    std::vector<RootInterval> out;
    if (p.degree() <= 0 || lo >= hi) return out;
    Polynomial sf = square_free(p);
    auto seq = detail::sturm_sequence(sf);
    auto count = [&](const Rational& a, const Rational& b) {
        return detail::sign_changes(seq, a) - detail::sign_changes(seq, b);
    };
    std::vector<std::pair<Rational, Rational>> stack{{lo, hi}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        int n = count(a, b); // roots in (a, b]
        if (n == 0) continue;
        if (n == 1) {
            if (sf(b) == 0) out.push_back({b, b});
            else out.push_back({a, b});
            continue;
        }
        Rational mid = (a + b) / 2;
        stack.push_back({a, mid});
        stack.push_back({mid, b});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.hi < y.hi; });
    return out;
}

/// Bisect an isolating interval of a square-free polynomial until its width
/// is below `width` (or the root is hit exactly).
inline RootInterval refine(const Polynomial& sf, RootInterval r, const Rational& width)
{
    while (!r.exact() && r.hi - r.lo >= width) {
        Rational mid = (r.lo + r.hi) / 2;
        int sm = sgn(sf(mid));
        if (sm == 0) return {mid, mid};
        if (sm == sgn(sf(r.hi))) r.hi = mid;
        else r.lo = mid;
    }
    return r;
}

/// Simplest fraction (smallest denominator) in the closed interval [lo, hi].
inline Rational simplest_rational_between(Rational lo, Rational hi)
{
    if (lo > hi) std::swap(lo, hi);
    Integer fl = floor_div(lo);
    if (Rational(fl) == lo) return lo;
    if (Rational(fl + 1) <= hi) return Rational(fl + 1);
    // lo and hi share the integer part; recurse on reciprocals of fractional parts
    Rational a = lo - Rational(fl);
    Rational b = hi - Rational(fl);
    Rational inner = simplest_rational_between(1 / b, 1 / a);
    return Rational(fl) + 1 / inner;
}

/// If the isolated root is rational, return it exactly.
inline std::optional<Rational> rational_root_in(const Polynomial& p, const RootInterval& r)
{
    if (r.exact()) return r.lo;
    Polynomial sf = square_free(p);
    // clear denominators: a rational root u/v has v dividing the leading integer coefficient
    Integer lcm_den = 1;
    for (const auto& c : sf.coefficients()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    Rational lead = sf.leading() * Rational(lcm_den);
    Integer lead_abs = abs(lead.get_num());
    Rational width = 1 / (Rational(lead_abs) * Rational(lead_abs) * 2);
    RootInterval t = refine(sf, r, width);
    if (t.exact()) return t.lo;
    Rational cand = simplest_rational_between(t.lo, t.hi);
    if (sf(cand) == 0) return cand;
    return std::nullopt;
}

} // namespace sysbound
