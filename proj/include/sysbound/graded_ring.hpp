#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace sysbound
{

enum class Parity { Even, Odd };

struct Generator {
    std::string name;
    int degree = 2; // real cohomological degree
    Parity parity = Parity::Even;
};

/// Exponent vector, one entry per generator. Ordered lexicographically.
using Monomial = std::vector<int>;
using Terms = std::map<Monomial, Rational>;

/// lhs -> sum of rhs terms; an empty rhs encodes lhs -> 0.
struct RewriteRule {
    Monomial lhs;
    Terms rhs;
};

struct RingPresentation {
    std::vector<Generator> generators;
    int truncation = 0; // real dimension of the fundamental class
    std::vector<int> exponent_caps; // -1 for "no cap"; odd generators are capped at 1 regardless
    std::vector<RewriteRule> rules;
    Terms pairing; // values on top-degree normal-form monomials
};

class GradedClass;

namespace detail
{

inline int monomial_degree(const std::vector<Generator>& gens, const Monomial& m)
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gens[i].degree;
    return d;
}

inline bool divides(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline void add_term(Terms& t, const Monomial& m, const Rational& c)
{
    if (c == 0) return;
    auto [it, inserted] = t.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) t.erase(it);
    }
}

} // namespace detail

/// A finitely presented truncated graded-commutative Q-algebra with
/// bounded-exponent normal forms and a top-degree pairing.
///
/// The normal form of every monomial up to the truncation degree is computed
/// once at construction, which doubles as the termination check for the
/// rewrite system.
class Ring : public std::enable_shared_from_this<Ring>
{
public:
    static std::shared_ptr<const Ring> make(RingPresentation presentation)
    {
        auto ring = std::shared_ptr<Ring>(new Ring(std::move(presentation)));
        ring->build();
        return ring;
    }

    const RingPresentation& presentation() const noexcept { return p_; }
    const std::vector<Generator>& generators() const noexcept { return p_.generators; }
    std::size_t generator_count() const noexcept { return p_.generators.size(); }
    int truncation() const noexcept { return p_.truncation; }

    std::optional<std::size_t> generator_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < p_.generators.size(); ++i)
            if (p_.generators[i].name == name) return i;
        return std::nullopt;
    }

    int degree(const Monomial& m) const { return detail::monomial_degree(p_.generators, m); }

    /// Normal form of an arbitrary monomial (zero beyond the truncation).
    const Terms& normal_form(const Monomial& m) const
    {
        static const Terms empty;
        auto it = nf_.find(m);
        return it == nf_.end() ? empty : it->second;
    }

    /// All normal-form monomials, grouped by degree.
    std::vector<Monomial> basis(int deg) const
    {
        std::vector<Monomial> out;
        for (const auto& [m, t] : nf_)
            if (degree(m) == deg && t.size() == 1 && t.begin()->first == m && t.begin()->second == 1)
                out.push_back(m);
        return out;
    }

    /// Graded-commutative product of two normal-form monomials, in normal form.
    Terms multiply(const Monomial& a, const Monomial& b) const
    {
        Monomial m(a.size());
        int sign = 1;
        int odd_after = 0; // odd exponent count in `a` to the right of the current position
        for (std::size_t i = a.size(); i-- > 0;) {
            m[i] = a[i] + b[i];
            if (p_.generators[i].parity == Parity::Odd && (b[i] % 2) && (odd_after % 2)) sign = -sign;
            if (p_.generators[i].parity == Parity::Odd) odd_after += a[i];
        }
        const Terms& nf = normal_form(m);
        if (sign == 1) return nf;
        Terms out;
        for (const auto& [mm, c] : nf) out.emplace(mm, -c);
        return out;
    }

    Rational pairing_value(const Monomial& m) const
    {
        auto it = p_.pairing.find(m);
        return it == p_.pairing.end() ? Rational(0) : it->second;
    }

    Monomial unit_monomial() const { return Monomial(p_.generators.size(), 0); }

    Monomial generator_monomial(std::size_t i) const
    {
        Monomial m = unit_monomial();
        m[i] = 1;
        return m;
    }

    std::string monomial_to_string(const Monomial& m) const
    {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!first) os << '*';
            first = false;
            os << p_.generators[i].name;
            if (m[i] > 1) os << '^' << m[i];
        }
        if (first) os << '1';
        return os.str();
    }

private:
    explicit Ring(RingPresentation p) : p_(std::move(p)) {}

    int cap(std::size_t i) const
    {
        if (p_.generators[i].parity == Parity::Odd) return 1;
        if (i < p_.exponent_caps.size() && p_.exponent_caps[i] >= 0) return p_.exponent_caps[i];
        return -1;
    }

    void validate() const
    {
        const auto& g = p_.generators;
        if (p_.truncation < 0) fail(ErrorCode::InvalidPresentation, "negative truncation");
        for (const auto& gen : g) {
            if (gen.degree <= 0)
                fail(ErrorCode::InvalidPresentation, "generator " + gen.name + " must have positive degree");
            const bool odd_degree = gen.degree % 2 != 0;
            if (odd_degree != (gen.parity == Parity::Odd))
                fail(ErrorCode::InvalidPresentation, "generator " + gen.name + " has parity inconsistent with its degree");
        }
        if (!p_.exponent_caps.empty() && p_.exponent_caps.size() != g.size())
            fail(ErrorCode::InvalidPresentation, "exponent cap list length mismatch");
        for (const auto& rule : p_.rules) {
            if (rule.lhs.size() != g.size())
                fail(ErrorCode::InvalidPresentation, "rule arity mismatch");
            const int d = detail::monomial_degree(g, rule.lhs);
            if (d == 0) fail(ErrorCode::InvalidPresentation, "rule with constant left-hand side");
            auto touches_odd = [&](const Monomial& m) {
                for (std::size_t i = 0; i < m.size(); ++i)
                    if (m[i] && g[i].parity == Parity::Odd) return true;
                return false;
            };
            if (touches_odd(rule.lhs))
                fail(ErrorCode::InvalidPresentation, "rewrite rules may only involve even generators");
            for (const auto& [m, c] : rule.rhs) {
                if (m.size() != g.size()) fail(ErrorCode::InvalidPresentation, "rule arity mismatch");
                if (detail::monomial_degree(g, m) != d)
                    fail(ErrorCode::InvalidPresentation,
                         "rule " + monomial_to_string(rule.lhs) + " -> " + monomial_to_string(m) + " is not degree-preserving");
                if (touches_odd(m))
                    fail(ErrorCode::InvalidPresentation, "rewrite rules may only involve even generators");
            }
        }
        bool nonzero = false;
        for (const auto& [m, c] : p_.pairing) {
            if (m.size() != g.size()) fail(ErrorCode::InvalidPresentation, "pairing monomial arity mismatch");
            if (detail::monomial_degree(g, m) != p_.truncation)
                fail(ErrorCode::InvalidPresentation, "pairing assigned to a monomial below top degree");
            if (c != 0) nonzero = true;
        }
        if (!nonzero) fail(ErrorCode::InvalidPresentation, "pairing functional vanishes identically");
    }

    void enumerate(std::size_t i, Monomial& m, int deg, std::vector<Monomial>& out) const
    {
        if (i == m.size()) {
            out.push_back(m);
            return;
        }
        const int step = p_.generators[i].degree;
        // one past the cap is still enumerated so that cap rules resolve to zero
        const int c = cap(i);
        for (int e = 0; deg + e * step <= p_.truncation; ++e) {
            if (c >= 0 && e > c + 1) break;
            m[i] = e;
            enumerate(i + 1, m, deg + e * step, out);
        }
        m[i] = 0;
    }

    Terms reduce(const Monomial& m, std::set<Monomial>& in_progress, std::size_t depth)
    {
        if (auto it = nf_.find(m); it != nf_.end()) return it->second;
        if (depth > kMaxRewriteDepth)
            fail(ErrorCode::NonTerminatingRewrite, "rewrite depth exceeded at " + monomial_to_string(m));
        if (!in_progress.insert(m).second)
            fail(ErrorCode::NonTerminatingRewrite, "rewrite cycle through " + monomial_to_string(m));

        Terms result;
        bool zero = degree(m) > p_.truncation;
        for (std::size_t i = 0; i < m.size() && !zero; ++i)
            if (cap(i) >= 0 && m[i] > cap(i)) zero = true;
        if (!zero) {
            const RewriteRule* hit = nullptr;
            for (const auto& rule : p_.rules)
                if (detail::divides(rule.lhs, m)) {
                    hit = &rule;
                    break;
                }
            if (!hit) {
                result.emplace(m, Rational(1));
            } else {
                Monomial rest(m.size());
                for (std::size_t i = 0; i < m.size(); ++i) rest[i] = m[i] - hit->lhs[i];
                for (const auto& [rm, c] : hit->rhs) {
                    Monomial next(m.size());
                    for (std::size_t i = 0; i < m.size(); ++i) next[i] = rm[i] + rest[i];
                    for (const auto& [nm, nc] : reduce(next, in_progress, depth + 1)) detail::add_term(result, nm, c * nc);
                }
            }
        }
        in_progress.erase(m);
        nf_.emplace(m, result);
        return result;
    }

    void build()
    {
        validate();
        std::vector<Monomial> all;
        Monomial m(p_.generators.size(), 0);
        enumerate(0, m, 0, all);
        std::set<Monomial> in_progress;
        for (const auto& mono : all) reduce(mono, in_progress, 0);
        // keep only monomials within the truncation in the table
        for (auto it = nf_.begin(); it != nf_.end();) {
            if (degree(it->first) > p_.truncation) it = nf_.erase(it);
            else ++it;
        }
        for (const auto& [pm, c] : p_.pairing) {
            const Terms& t = normal_form(pm);
            if (!(t.size() == 1 && t.begin()->first == pm))
                fail(ErrorCode::InvalidPresentation, "pairing assigned to non-normal monomial " + monomial_to_string(pm));
        }
    }

    static constexpr std::size_t kMaxRewriteDepth = 4096;

    RingPresentation p_;
    std::map<Monomial, Terms> nf_;
};

using RingHandle = std::shared_ptr<const Ring>;

inline RingHandle make_ring(RingPresentation presentation) { return Ring::make(std::move(presentation)); }

/// Element of a truncated graded ring: sparse normal-form terms with exact
/// rational coefficients. Zero coefficients are never stored.
class GradedClass
{
public:
    GradedClass() = default;
    explicit GradedClass(RingHandle ring) : ring_(std::move(ring)) {}

    static GradedClass scalar(RingHandle ring, const Rational& q)
    {
        GradedClass c(ring);
        detail::add_term(c.terms_, c.ring_->unit_monomial(), q);
        return c;
    }
    static GradedClass one(RingHandle ring) { return scalar(std::move(ring), 1); }
    static GradedClass generator(RingHandle ring, std::size_t i)
    {
        GradedClass c(ring);
        for (const auto& [m, q] : c.ring_->normal_form(c.ring_->generator_monomial(i))) detail::add_term(c.terms_, m, q);
        return c;
    }
    static GradedClass generator(RingHandle ring, const std::string& name)
    {
        auto idx = ring->generator_index(name);
        if (!idx) fail(ErrorCode::InvalidArgument, "unknown generator " + name);
        return generator(std::move(ring), *idx);
    }
    static GradedClass monomial(RingHandle ring, const Monomial& m, const Rational& q = 1)
    {
        GradedClass c(ring);
        for (const auto& [mm, cc] : c.ring_->normal_form(m)) detail::add_term(c.terms_, mm, q * cc);
        return c;
    }

    const RingHandle& ring() const noexcept { return ring_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Degree-d homogeneous component.
    GradedClass component(int d) const
    {
        GradedClass out(ring_);
        for (const auto& [m, c] : terms_)
            if (ring_->degree(m) == d) out.terms_.emplace(m, c);
        return out;
    }

    Rational constant_term() const { return ring_ ? coefficient(ring_->unit_monomial()) : Rational(0); }

    bool is_homogeneous(int d) const
    {
        return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return ring_->degree(t.first) == d; });
    }

    int max_degree() const
    {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, ring_->degree(m));
        return d;
    }

    GradedClass& operator+=(const GradedClass& o)
    {
        check_same(o);
        for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, c);
        return *this;
    }
    GradedClass& operator-=(const GradedClass& o)
    {
        check_same(o);
        for (const auto& [m, c] : o.terms_) detail::add_term(terms_, m, -c);
        return *this;
    }
    GradedClass& operator*=(const Rational& q)
    {
        if (q == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= q;
        return *this;
    }

    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator-(GradedClass a) { return a *= Rational(-1); }
    friend GradedClass operator*(GradedClass a, const Rational& q) { return a *= q; }
    friend GradedClass operator*(const Rational& q, GradedClass a) { return a *= q; }
    friend GradedClass operator+(GradedClass a, const Rational& q) { return a += scalar(a.ring_, q); }
    friend GradedClass operator+(const Rational& q, GradedClass a) { return a += scalar(a.ring_, q); }

    friend GradedClass operator*(const GradedClass& a, const GradedClass& b)
    {
        a.check_same(b);
        GradedClass out(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                if (a.ring_->degree(ma) + a.ring_->degree(mb) > a.ring_->truncation()) continue;
                const Rational cab = ca * cb;
                for (const auto& [m, c] : a.ring_->multiply(ma, mb)) detail::add_term(out.terms_, m, cab * c);
            }
        return out;
    }
    GradedClass& operator*=(const GradedClass& o) { return *this = *this * o; }

    friend bool operator==(const GradedClass& a, const GradedClass& b)
    {
        return a.ring_ == b.ring_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const GradedClass& a, const GradedClass& b) { return !(a == b); }

    GradedClass pow(unsigned k) const
    {
        GradedClass r = one(ring_);
        for (unsigned i = 0; i < k; ++i) {
            r = r * *this;
            if (r.is_zero()) break;
        }
        return r;
    }

    /// Ring-level Kronecker pairing: sum of pairing values over top-degree terms.
    Rational integrate() const
    {
        Rational s = 0;
        for (const auto& [m, c] : terms_)
            if (ring_->degree(m) == ring_->truncation()) s += c * ring_->pairing_value(m);
        return s;
    }

    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // highest degree first reads better for characteristic classes
        std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
        std::stable_sort(ordered.begin(), ordered.end(), [&](const auto& x, const auto& y) {
            return ring_->degree(x.first) < ring_->degree(y.first);
        });
        for (const auto& [m, c] : ordered) {
            Rational a = abs_value(c);
            const bool unit = ring_->degree(m) == 0;
            if (first) os << (c < 0 ? "-" : "");
            else os << (c < 0 ? " - " : " + ");
            first = false;
            if (unit) os << sysbound::to_string(a);
            else {
                if (a != 1) os << sysbound::to_string(a) << '*';
                os << ring_->monomial_to_string(m);
            }
        }
        return os.str();
    }

private:
    void check_same(const GradedClass& o) const
    {
        if (ring_ != o.ring_) fail(ErrorCode::RingMismatch, "classes belong to different rings");
    }

    RingHandle ring_;
    Terms terms_;
};

inline GradedClass mul(const GradedClass& a, const GradedClass& b) { return a * b; }

/// f(y) = sum_k coeffs[k] y^k for a class y without constant term; the
/// series is cut where powers of y vanish in the truncated ring.
inline GradedClass apply_series(const std::vector<Rational>& coeffs, const GradedClass& y)
{
    if (y.constant_term() != 0) fail(ErrorCode::InvalidArgument, "series argument must have no constant term");
    GradedClass out(y.ring());
    GradedClass power = GradedClass::one(y.ring());
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) power = power * y;
        if (power.is_zero()) break;
        if (coeffs[k] != 0) out += coeffs[k] * power;
    }
    return out;
}

/// Truncated exponential of a degree-2 class.
inline GradedClass exp_class(const GradedClass& x)
{
    if (!x.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "exp_class requires a homogeneous degree-2 class");
    const int terms = x.ring()->truncation() / 2 + 1;
    std::vector<Rational> coeffs;
    for (int k = 0; k <= terms; ++k) coeffs.push_back(1 / factorial(static_cast<unsigned>(k)));
    return apply_series(coeffs, x);
}

// ---------------------------------------------------------------------------
// Presentation builders shared by the catalog.

/// Q[H]/(H^{n+1}) with pairing <H^n> = degree, truncation 2n.
inline RingPresentation truncated_polynomial_presentation(const std::string& name, int n, const Rational& degree)
{
    RingPresentation p;
    p.generators = {{name, 2, Parity::Even}};
    p.truncation = 2 * n;
    p.exponent_caps = {n};
    p.pairing[{n}] = degree;
    return p;
}

namespace detail
{

/// Minimal monomials of a presentation lying above its truncation; each factor
/// of a tensor product must keep killing them once the truncation grows.
inline std::vector<Monomial> overflow_monomials(const RingPresentation& r)
{
    const std::size_t n = r.generators.size();
    std::vector<Monomial> out;
    Monomial m(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int deg) -> void {
        if (i == n) {
            if (deg <= r.truncation) return;
            for (std::size_t j = 0; j < n; ++j)
                if (m[j] > 0 && deg - r.generators[j].degree > r.truncation) return;
            out.push_back(m);
            return;
        }
        const int d = r.generators[i].degree;
        int cap = r.generators[i].parity == Parity::Odd ? 1 : -1;
        if (i < r.exponent_caps.size() && r.exponent_caps[i] >= 0) cap = cap < 0 ? r.exponent_caps[i] : std::min(cap, r.exponent_caps[i]);
        for (int e = 0; (cap < 0 || e <= cap) && deg + e * d <= r.truncation + d; ++e) {
            m[i] = e;
            self(self, i + 1, deg + e * d);
        }
        m[i] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

} // namespace detail

/// Tensor product presentation: generators and rules concatenated, truncation
/// added, pairing multiplied on top-degree monomials. Monomials above either
/// factor's truncation are killed by explicit rules.
inline RingPresentation tensor_presentation(const RingPresentation& a, const RingPresentation& b)
{
    RingPresentation p;
    p.generators = a.generators;
    p.generators.insert(p.generators.end(), b.generators.begin(), b.generators.end());
    p.truncation = a.truncation + b.truncation;
    const std::size_t na = a.generators.size();
    const std::size_t nb = b.generators.size();
    auto caps = [](const RingPresentation& r) {
        return r.exponent_caps.empty() ? std::vector<int>(r.generators.size(), -1) : r.exponent_caps;
    };
    p.exponent_caps = caps(a);
    auto cb = caps(b);
    p.exponent_caps.insert(p.exponent_caps.end(), cb.begin(), cb.end());
    auto lift_left = [&](const Monomial& m) {
        Monomial out(m);
        out.resize(na + nb, 0);
        return out;
    };
    auto lift_right = [&](const Monomial& m) {
        Monomial out(na, 0);
        out.insert(out.end(), m.begin(), m.end());
        return out;
    };
    for (const auto& r : a.rules) {
        RewriteRule rr{lift_left(r.lhs), {}};
        for (const auto& [m, c] : r.rhs) rr.rhs.emplace(lift_left(m), c);
        p.rules.push_back(std::move(rr));
    }
    for (const auto& r : b.rules) {
        RewriteRule rr{lift_right(r.lhs), {}};
        for (const auto& [m, c] : r.rhs) rr.rhs.emplace(lift_right(m), c);
        p.rules.push_back(std::move(rr));
    }
    for (const auto& m : detail::overflow_monomials(a)) p.rules.push_back({lift_left(m), {}});
    for (const auto& m : detail::overflow_monomials(b)) p.rules.push_back({lift_right(m), {}});
    for (const auto& [ma, ca] : a.pairing)
        for (const auto& [mb, cb2] : b.pairing) {
            Monomial m = ma;
            m.insert(m.end(), mb.begin(), mb.end());
            p.pairing[m] = ca * cb2;
        }
    return p;
}

/// Pullback of a class along the projection onto the first (left) or second
/// (right) factor of a tensor-product ring built by tensor_presentation.
inline GradedClass pull_back(const RingHandle& product, const GradedClass& a, bool left)
{
    const std::size_t na = a.ring()->generator_count();
    const std::size_t total = product->generator_count();
    GradedClass out(product);
    for (const auto& [m, c] : a.terms()) {
        Monomial lifted(total, 0);
        const std::size_t offset = left ? 0 : total - na;
        for (std::size_t i = 0; i < na; ++i) lifted[offset + i] = m[i];
        out += GradedClass::monomial(product, lifted, c);
    }
    return out;
}

} // namespace sysbound
