#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "char_classes.hpp"
#include "errors.hpp"
#include "graded_ring.hpp"
#include "lattice.hpp"
#include "rational.hpp"

namespace sysbound
{

/// Exact polynomial in x_1..x_r stored in the monomial basis.
class SymmetricPolynomial
{
public:
    using Exponents = std::vector<int>;

    SymmetricPolynomial() = default;
    explicit SymmetricPolynomial(int vars) : vars_(vars) {}

    static SymmetricPolynomial constant(int vars, const Rational& c)
    {
        SymmetricPolynomial p(vars);
        if (c != 0) p.terms_[Exponents(static_cast<std::size_t>(vars), 0)] = c;
        return p;
    }
    static SymmetricPolynomial variable(int vars, int i)
    {
        SymmetricPolynomial p(vars);
        Exponents e(static_cast<std::size_t>(vars), 0);
        e[static_cast<std::size_t>(i)] = 1;
        p.terms_[e] = 1;
        return p;
    }
    /// p_b = x_1^b + ... + x_r^b.
    static SymmetricPolynomial power_sum(int vars, int b)
    {
        SymmetricPolynomial p(vars);
        for (int i = 0; i < vars; ++i) {
            Exponents e(static_cast<std::size_t>(vars), 0);
            e[static_cast<std::size_t>(i)] = b;
            p.add(e, 1);
        }
        return p;
    }

    int vars() const { return vars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Exponents& e, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// Total degree when homogeneous, otherwise nullopt (zero has degree 0).
    std::optional<int> homogeneous_degree() const
    {
        std::optional<int> d;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            if (d && *d != s) return std::nullopt;
            d = s;
        }
        return d.value_or(0);
    }

    /// Invariance under the adjacent transpositions, which generate S_r.
    bool is_symmetric() const
    {
        for (int i = 0; i + 1 < vars_; ++i)
            if (swapped(i, i + 1) != *this) return false;
        return true;
    }

    SymmetricPolynomial swapped(int i, int j) const
    {
        SymmetricPolynomial out(vars_);
        for (auto e : terms_) {
            Exponents x = e.first;
            std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
            out.add(x, e.second);
        }
        return out;
    }

    Rational evaluate(const std::vector<Rational>& x) const
    {
        Rational s = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < e.size(); ++i) t *= sysbound::pow(x[i], static_cast<unsigned>(e[i]));
            s += t;
        }
        return s;
    }

    SymmetricPolynomial& operator+=(const SymmetricPolynomial& o)
    {
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    SymmetricPolynomial& operator-=(const SymmetricPolynomial& o)
    {
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    friend SymmetricPolynomial operator+(SymmetricPolynomial a, const SymmetricPolynomial& b) { return a += b; }
    friend SymmetricPolynomial operator-(SymmetricPolynomial a, const SymmetricPolynomial& b) { return a -= b; }
    friend SymmetricPolynomial operator*(const Rational& s, const SymmetricPolynomial& a)
    {
        SymmetricPolynomial out(a.vars_);
        for (const auto& [e, c] : a.terms_) out.add(e, s * c);
        return out;
    }
    friend SymmetricPolynomial operator*(const SymmetricPolynomial& a, const SymmetricPolynomial& b)
    {
        SymmetricPolynomial out(std::max(a.vars_, b.vars_));
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                out.add(e, ca * cb);
            }
        return out;
    }
    friend bool operator==(const SymmetricPolynomial& a, const SymmetricPolynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SymmetricPolynomial& a, const SymmetricPolynomial& b) { return !(a == b); }

    SymmetricPolynomial pow(unsigned k) const
    {
        SymmetricPolynomial out = constant(vars_, 1);
        for (unsigned i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    /// Exact quotient by (x_b - x_a); nullopt when the division leaves a remainder.
    std::optional<SymmetricPolynomial> divide_by_difference(int b, int a) const
    {
        const auto bi = static_cast<std::size_t>(b);
        const auto ai = static_cast<std::size_t>(a);
        // group by the power of x_b
        std::map<int, SymmetricPolynomial> by_power;
        int top = -1;
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            int p = rest[bi];
            rest[bi] = 0;
            auto [it, ins] = by_power.try_emplace(p, SymmetricPolynomial(vars_));
            it->second.add(rest, c);
            top = std::max(top, p);
        }
        SymmetricPolynomial xa = variable(vars_, a);
        SymmetricPolynomial out(vars_);
        SymmetricPolynomial carry(vars_);
        // synthetic division: q_{e-1} = c_e + x_a q_e
        for (int e = top; e >= 1; --e) {
            SymmetricPolynomial ce = by_power.count(e) ? by_power.at(e) : SymmetricPolynomial(vars_);
            carry = ce + xa * carry;
            for (const auto& [ex, c] : carry.terms_) {
                Exponents shifted = ex;
                shifted[bi] += e - 1;
                out.add(shifted, c);
            }
        }
        SymmetricPolynomial c0 = by_power.count(0) ? by_power.at(0) : SymmetricPolynomial(vars_);
        if (top < 0) return SymmetricPolynomial(vars_);
        SymmetricPolynomial rem = c0 + xa * carry;
        if (!rem.is_zero()) return std::nullopt;
        (void)ai;
        return out;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            std::string mono;
            for (std::size_t i = 0; i < it->first.size(); ++i) {
                if (it->first[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += "x" + std::to_string(i + 1);
                if (it->first[i] > 1) mono += "^" + std::to_string(it->first[i]);
            }
            if (!first) s += c < 0 ? " - " : " + ";
            else if (c < 0) s += "-";
            Rational a = abs_value(c);
            if (mono.empty()) s += sysbound::to_string(a);
            else if (a == 1) s += mono;
            else s += sysbound::to_string(a) + "*" + mono;
            first = false;
        }
        return s;
    }

private:
    int vars_ = 0;
    std::map<Exponents, Rational> terms_;
};

/// Orientation sign relating the localization sum to the Segre series:
/// localization_pushforward(1, r, b) = kSegreSign^b * s_b(prod (1 + x_i)).
/// Fixed by the (k, r, j) = (1, 2, 1) case, which yields -p_1 = s_1.
inline constexpr int kSegreSign = 1;

namespace detail
{

inline void k_subsets(int r, int k, std::vector<std::vector<int>>& out)
{
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i < r; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

inline SymmetricPolynomial vandermonde(int vars, const std::vector<int>& idx)
{
    SymmetricPolynomial v = SymmetricPolynomial::constant(vars, 1);
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b)
            v = v * (SymmetricPolynomial::variable(vars, idx[b]) - SymmetricPolynomial::variable(vars, idx[a]));
    return v;
}

} // namespace detail

/// sum over k-subsets I of (-sum_{i in I} x_i)^{q+j} / prod_{i in I, l not in I} (x_l - x_i),
/// q = k(r-k). Denominators are cleared by the full Vandermonde and removed by exact division.
inline SymmetricPolynomial localization_pushforward(int k, int r, int j)
{
    if (k < 1 || k >= r) fail(ErrorCode::InvalidArgument, "localization needs 1 <= k < r", "1 <= k < r");
    if (j < 0) fail(ErrorCode::InvalidArgument, "pushforward degree must be non-negative");
    if (r > 6 || j > 6) fail(ErrorCode::InvalidArgument, "localization limited to r <= 6 and j <= 6");
    const int q = k * (r - k);
    std::vector<std::vector<int>> subsets;
    detail::k_subsets(r, k, subsets);
    SymmetricPolynomial numerator(r);
    for (const auto& in : subsets) {
        std::vector<int> out;
        std::vector<bool> mark(static_cast<std::size_t>(r), false);
        for (int i : in) mark[static_cast<std::size_t>(i)] = true;
        for (int i = 0; i < r; ++i)
            if (!mark[static_cast<std::size_t>(i)]) out.push_back(i);
        // V = sign * D_I * V_I * V_out where D_I is the localization denominator
        int flips = 0;
        for (int i : in)
            for (int l : out)
                if (l < i) ++flips;
        SymmetricPolynomial sum(r);
        for (int i : in) sum -= SymmetricPolynomial::variable(r, i);
        SymmetricPolynomial term = sum.pow(static_cast<unsigned>(q + j)) * detail::vandermonde(r, in) *
                                   detail::vandermonde(r, out);
        if (flips % 2) numerator -= term;
        else numerator += term;
    }
    SymmetricPolynomial result = numerator;
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b) {
            auto quotient = result.divide_by_difference(b, a);
            if (!quotient)
                fail(ErrorCode::NonPolynomialResult,
                     "localization sum does not clear its Vandermonde denominator", "Gysin polynomiality");
            result = std::move(*quotient);
        }
    if (!result.is_symmetric()) fail(ErrorCode::NonPolynomialResult, "localization sum is not symmetric");
    auto deg = result.homogeneous_degree();
    if (!result.is_zero() && (!deg || *deg != j))
        fail(ErrorCode::NonPolynomialResult, "localization sum has the wrong degree");
    return result;
}

namespace detail
{

inline void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out)
{
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

/// Coefficients of a homogeneous symmetric polynomial of degree d <= r in the
/// power-sum basis p_lambda, keyed by partition (parts in decreasing order).
inline std::map<std::vector<int>, Rational> power_sum_expansion(const SymmetricPolynomial& f, int d)
{
    const int r = f.vars();
    if (d > r) fail(ErrorCode::TooFewVariables, "power sums up to degree d need at least d variables", "b <= r");
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    detail::partitions(d, d, cur, parts);
    const std::size_t m = parts.size();
    // monomial coordinates: exponent vector of a partition padded with zeros
    auto key = [&](const std::vector<int>& mu) {
        SymmetricPolynomial::Exponents e(static_cast<std::size_t>(r), 0);
        for (std::size_t i = 0; i < mu.size(); ++i) e[i] = mu[i];
        return e;
    };
    Mat a(m, Vec(m));
    Vec rhs(m);
    for (std::size_t col = 0; col < m; ++col) {
        SymmetricPolynomial pl = SymmetricPolynomial::constant(r, 1);
        for (int part : parts[col]) pl = pl * SymmetricPolynomial::power_sum(r, part);
        for (std::size_t row = 0; row < m; ++row) a[row][col] = pl.coefficient(key(parts[row]));
    }
    for (std::size_t row = 0; row < m; ++row) rhs[row] = f.coefficient(key(parts[row]));
    auto sol = linalg::solve(a, rhs);
    if (!sol) fail(ErrorCode::TooFewVariables, "power sums are dependent in this many variables", "b <= r");
    std::map<std::vector<int>, Rational> out;
    for (std::size_t i = 0; i < m; ++i)
        if ((*sol)[i] != 0) out[parts[i]] = (*sol)[i];
    // the expansion must reproduce f exactly
    SymmetricPolynomial check(r);
    for (const auto& [mu, c] : out) {
        SymmetricPolynomial pl = SymmetricPolynomial::constant(r, 1);
        for (int part : mu) pl = pl * SymmetricPolynomial::power_sum(r, part);
        check += c * pl;
    }
    if (check != f) fail(ErrorCode::ValidationError, "power-sum expansion does not reproduce the polynomial");
    return out;
}

/// Coefficient of p_b in P^{k,r}_b after setting p_1..p_{b-1} to zero.
inline Rational primitive_coefficient(int k, int r, int b)
{
    if (b < 1) fail(ErrorCode::InvalidArgument, "primitive degree must be positive");
    if (b > r) fail(ErrorCode::TooFewVariables, "primitive extraction needs b <= r variables", "b <= r");
    auto expansion = power_sum_expansion(localization_pushforward(k, r, b), b);
    auto it = expansion.find(std::vector<int>{b});
    return it == expansion.end() ? Rational(0) : it->second;
}

/// k((r-k)/r)^b + (r-k)(-k/r)^b.
inline Rational primitive_bracket(int k, int r, int b)
{
    return Rational(k) * sysbound::pow(make_rational(r - k, r), static_cast<unsigned>(b)) + Rational(r - k) * sysbound::pow(make_rational(-k, r), static_cast<unsigned>(b));
}

/// Proportionality factor between the primitive coefficient and the bracket;
/// nullopt when the bracket vanishes. At b = 1 the bracket is identically zero
/// because p_1 restricts to zero on x_1 + ... + x_r = 0, so no comparison is made.
inline std::optional<Rational> primitive_factor(int k, int r, int b)
{
    Rational bracket = primitive_bracket(k, r, b);
    Rational coeff = primitive_coefficient(k, r, b);
    if (b == 1) return std::nullopt;
    if (bracket == 0) {
        if (coeff != 0) fail(ErrorCode::ValidationError, "primitive coefficient nonzero where the bracket vanishes");
        return std::nullopt;
    }
    return coeff / bracket;
}

/// Segre class s_b(E): degree-2b component of c(E)^{-1}.
inline GradedClass segre_pushforward(const ChernData& chern, int b)
{
    validate(chern);
    if (b < 0 || 2 * b > chern.ring()->truncation())
        fail(ErrorCode::InvalidArgument, "Segre degree outside the truncation");
    GradedClass u = chern.total - GradedClass::one(chern.ring());
    std::vector<Rational> coeffs;
    for (int i = 0; i <= chern.ring()->truncation() / 2 + 1; ++i) coeffs.push_back(i % 2 ? -1 : 1);
    return apply_series(coeffs, u).component(2 * b);
}

} // namespace sysbound
