#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "char_classes.hpp"
#include "errors.hpp"
#include "graded_ring.hpp"

namespace sysbound
{

enum class Family {
    Point,
    Circle,
    Sphere,
    ProjectiveSpace,
    Quadric,
    CompleteIntersection,
    ProjectiveBundle,
    Blowup,
    Product,
    WeightedHypersurface,
    GrassmannianSection,
};

/// Generator of the dual of the nef cone, recorded by its intersection
/// numbers with each ring generator (zero on generators not of degree 2).
struct CurveClass {
    std::string name;
    std::vector<Rational> pairing;

    Rational operator()(const GradedClass& alpha) const
    {
        Rational s = 0;
        for (const auto& [m, c] : alpha.terms()) {
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] == 1 && alpha.ring()->degree(m) == alpha.ring()->generators()[i].degree)
                    s += c * pairing[i];
        }
        return s;
    }
};

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

struct Space {
    std::string name;
    Family family = Family::Point;
    int real_dim = 0;
    bool complex = false;

    RingHandle ring; // null for metadata-only spaces
    std::vector<std::string> base_names; // generator names before product de-duplication

    std::optional<ChernData> tangent;
    std::optional<GradedClass> a_hat; // explicit A-hat, also for non-complex factors
    std::optional<GradedClass> c1;
    GradedClass spin_c;
    std::optional<GradedClass> primitive_x;
    std::optional<GradedClass> odd_xi;

    int b2 = 0;
    std::optional<int> fano_index;
    std::optional<bool> kahler_einstein;

    // Nef cone (two rays at most) and the dual generators used for thresholds.
    std::vector<GradedClass> nef_rays;
    std::vector<CurveClass> curves;

    // Family parameters.
    std::vector<std::vector<int>> multidegrees;
    std::vector<int> ambient;
    std::vector<int> bundle_degrees;
    int genus = 0;
    SpacePtr left;
    SpacePtr right;

    int complex_dim() const { return real_dim / 2; }
    bool metadata_only() const { return !ring; }

    const RingHandle& require_ring() const
    {
        if (!ring) fail(ErrorCode::MetadataOnlySpace, name + " carries index data only; no cohomology ring", "ring presentation");
        return ring;
    }

    GradedClass generator(const std::string& n) const { return GradedClass::generator(require_ring(), n); }

    Rational integrate(const GradedClass& a) const
    {
        if (a.ring() != require_ring()) fail(ErrorCode::RingMismatch, "class does not belong to " + name);
        return a.integrate();
    }
};

namespace detail
{

inline Space ring_space(std::string name, Family family, int real_dim, RingPresentation pres)
{
    Space s;
    s.name = std::move(name);
    s.family = family;
    s.real_dim = real_dim;
    for (const auto& g : pres.generators) s.base_names.push_back(g.name);
    s.ring = make_ring(std::move(pres));
    s.spin_c = GradedClass(s.ring);
    return s;
}

/// Fill tangent-derived fields of a complex space: A-hat, c1, spin^c = c1.
inline void set_complex_tangent(Space& s, ChernData tangent)
{
    validate(tangent);
    s.complex = true;
    s.a_hat = sysbound::a_hat(tangent);
    s.c1 = tangent.c(1);
    s.spin_c = *s.c1;
    s.tangent = std::move(tangent);
}

inline std::vector<Rational> curve_values(const RingHandle& ring, const std::map<std::string, Rational>& values)
{
    std::vector<Rational> out(ring->generator_count(), Rational(0));
    for (const auto& [n, v] : values) {
        auto idx = ring->generator_index(n);
        if (!idx) fail(ErrorCode::InvalidArgument, "unknown generator " + n);
        out[*idx] = v;
    }
    return out;
}

inline std::string join_ints(const std::vector<int>& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

} // namespace detail

inline Space projective_space(int n)
{
    if (n < 1) fail(ErrorCode::ValidationError, "CP(n) needs n >= 1", "n >= 1");
    Space s = detail::ring_space("CP(" + std::to_string(n) + ")", Family::ProjectiveSpace, 2 * n,
                                 truncated_polynomial_presentation("H", n, 1));
    GradedClass h = s.generator("H");
    detail::set_complex_tangent(s, {n, (h + Rational(1)).pow(static_cast<unsigned>(n + 1)), Flavor::Complex});
    s.primitive_x = h;
    s.b2 = 1;
    s.fano_index = n + 1;
    s.kahler_einstein = true;
    s.nef_rays = {h};
    s.curves = {{"line", detail::curve_values(s.ring, {{"H", 1}})}};
    return s;
}

/// Smooth complete intersection in a product of projective spaces; rows of
/// `multidegrees` are equations, columns are ambient factors.
inline Space complete_intersection(const std::vector<std::vector<int>>& multidegrees, const std::vector<int>& ambient)
{
    const std::size_t m = ambient.size();
    if (m == 0) fail(ErrorCode::ValidationError, "complete intersection needs an ambient space");
    for (int N : ambient)
        if (N < 1) fail(ErrorCode::ValidationError, "ambient projective spaces need dimension >= 1");
    const int r = static_cast<int>(multidegrees.size());
    for (const auto& row : multidegrees) {
        if (row.size() != m) fail(ErrorCode::ValidationError, "multidegree row length must match the number of ambient factors");
        bool nonzero = false;
        for (int d : row) {
            if (d < 0) fail(ErrorCode::ValidationError, "multidegrees must be nonnegative");
            nonzero = nonzero || d > 0;
        }
        if (!nonzero) fail(ErrorCode::ValidationError, "each equation needs a nonzero multidegree");
    }
    const int total_n = std::accumulate(ambient.begin(), ambient.end(), 0);
    if (r > total_n) fail(ErrorCode::EmptyIntersection, "more equations than ambient dimensions", "codimension <= ambient dimension");
    const int dim = total_n - r;
    if (dim < 1) fail(ErrorCode::ValidationError, "complete intersection must have dimension >= 1");

    std::vector<Generator> gens;
    for (std::size_t i = 0; i < m; ++i) gens.push_back({m == 1 ? "H" : "H" + std::to_string(i + 1), 2, Parity::Even});

    RingPresentation amb;
    amb.generators = gens;
    amb.truncation = 2 * total_n;
    amb.exponent_caps = ambient;
    amb.pairing[Monomial(ambient.begin(), ambient.end())] = 1;
    RingHandle amb_ring = make_ring(amb);

    GradedClass fundamental = GradedClass::one(amb_ring);
    for (const auto& row : multidegrees) {
        GradedClass eq(amb_ring);
        for (std::size_t i = 0; i < m; ++i)
            if (row[i]) eq += Rational(row[i]) * GradedClass::generator(amb_ring, i);
        fundamental = fundamental * eq;
    }

    RingPresentation pres;
    pres.generators = gens;
    pres.truncation = 2 * dim;
    pres.exponent_caps = ambient;
    {
        // enumerate top-degree monomials within the caps
        std::vector<Monomial> tops;
        Monomial cur(m, 0);
        auto rec = [&](auto&& self, std::size_t i, int left) -> void {
            if (i == m) {
                if (left == 0) tops.push_back(cur);
                return;
            }
            for (int e = 0; e <= std::min(left, ambient[i]); ++e) {
                cur[i] = e;
                self(self, i + 1, left - e);
            }
            cur[i] = 0;
        };
        rec(rec, 0, dim);
        for (const auto& t : tops) {
            Rational v = (GradedClass::monomial(amb_ring, t) * fundamental).integrate();
            if (v != 0) pres.pairing[t] = v;
        }
    }
    if (pres.pairing.empty()) fail(ErrorCode::EmptyIntersection, "complete intersection has degree zero");

    std::string name = "CI(degrees=[";
    for (std::size_t a = 0; a < multidegrees.size(); ++a) name += (a ? "," : "") + detail::join_ints(multidegrees[a]);
    name += "]; ambient=" + detail::join_ints(ambient) + ")";

    Space s = detail::ring_space(name, Family::CompleteIntersection, 2 * dim, pres);
    s.multidegrees = multidegrees;
    s.ambient = ambient;

    GradedClass amb_total = GradedClass::one(s.ring);
    for (std::size_t i = 0; i < m; ++i)
        amb_total = amb_total * (GradedClass::generator(s.ring, i) + Rational(1)).pow(static_cast<unsigned>(ambient[i] + 1));
    GradedClass normal_total = GradedClass::one(s.ring);
    for (const auto& row : multidegrees) {
        GradedClass eq(s.ring);
        for (std::size_t i = 0; i < m; ++i)
            if (row[i]) eq += Rational(row[i]) * GradedClass::generator(s.ring, i);
        normal_total = normal_total * (eq + Rational(1));
    }
    ChernData tangent = whitney_quotient({total_n, amb_total, Flavor::Complex}, {r, normal_total, Flavor::Complex});
    detail::set_complex_tangent(s, tangent);

    // -K_X = sum_i (N_i + 1 - sum_a d_ai) H_i
    std::vector<int> k_coeff(m);
    for (std::size_t i = 0; i < m; ++i) {
        int sum = 0;
        for (const auto& row : multidegrees) sum += row[i];
        k_coeff[i] = ambient[i] + 1 - sum;
    }

    if (dim >= 3) s.b2 = static_cast<int>(m);
    else if (dim == 1) s.b2 = 1;
    else s.b2 = static_cast<int>(Rational(s.integrate(tangent.c(2)) - 2).get_num().get_si()); // b1 = 0 for complete intersections

    for (std::size_t i = 0; i < m; ++i) s.nef_rays.push_back(GradedClass::generator(s.ring, i));
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> v(m, Rational(0));
        v[i] = 1;
        s.curves.push_back({"C" + std::to_string(i + 1), v});
    }
    if (m == 1) {
        s.primitive_x = GradedClass::generator(s.ring, 0);
        if (k_coeff[0] > 0) s.fano_index = k_coeff[0];
    }
    return s;
}

inline Space quadric(int n)
{
    if (n < 2) fail(ErrorCode::ValidationError, "Q(n) needs n >= 2", "n >= 2");
    Space s = complete_intersection({{2}}, {n + 1});
    s.name = "Q(" + std::to_string(n) + ")";
    s.family = Family::Quadric;
    s.fano_index = n;
    s.kahler_einstein = true;
    if (n == 2) s.b2 = 2;
    return s;
}

inline Space point()
{
    RingPresentation p;
    p.truncation = 0;
    p.pairing[Monomial{}] = 1;
    Space s = detail::ring_space("pt", Family::Point, 0, std::move(p));
    s.a_hat = GradedClass::one(s.ring);
    return s;
}

inline Space circle()
{
    RingPresentation p;
    p.generators = {{"theta", 1, Parity::Odd}};
    p.truncation = 1;
    p.pairing[Monomial{1}] = 1;
    Space s = detail::ring_space("S1", Family::Circle, 1, std::move(p));
    s.a_hat = GradedClass::one(s.ring);
    s.odd_xi = s.generator("theta");
    return s;
}

/// Round sphere S^k: stably trivial tangent bundle, A-hat = 1, spin.
inline Space sphere(int k)
{
    if (k < 1) fail(ErrorCode::ValidationError, "S(k) needs k >= 1", "k >= 1");
    if (k == 1) return circle();
    RingPresentation p;
    p.generators = {{"x", k, k % 2 ? Parity::Odd : Parity::Even}};
    p.truncation = k;
    p.exponent_caps = {1};
    p.pairing[Monomial{1}] = 1;
    Space s = detail::ring_space("S(" + std::to_string(k) + ")", Family::Sphere, k, std::move(p));
    s.a_hat = GradedClass::one(s.ring);
    if (k == 2) {
        s.primitive_x = s.generator("x");
        s.b2 = 1;
    }
    return s;
}

/// P(E) for E = O(d_1) + ... + O(d_n) over a genus-g curve, with xi = c1(O(1))
/// in the quotient convention and f the fiber class.
inline Space proj_bundle_over_curve(const std::vector<int>& degrees, int genus)
{
    const int n = static_cast<int>(degrees.size());
    if (n < 2) fail(ErrorCode::ValidationError, "projective bundle needs rank >= 2", "n >= 2");
    if (genus < 0) fail(ErrorCode::ValidationError, "genus must be nonnegative");
    const int e = std::accumulate(degrees.begin(), degrees.end(), 0);
    const int dmin = *std::min_element(degrees.begin(), degrees.end());

    RingPresentation p;
    p.generators = {{"xi", 2, Parity::Even}, {"f", 2, Parity::Even}};
    p.truncation = 2 * n;
    p.exponent_caps = {-1, 1};
    RewriteRule rule{{n, 0}, {}};
    if (e != 0) rule.rhs[{n - 1, 1}] = e;
    p.rules.push_back(rule);
    p.pairing[{n - 1, 1}] = 1;

    Space s = detail::ring_space("PB(degrees=" + detail::join_ints(degrees) + "; genus=" + std::to_string(genus) + ")",
                                 Family::ProjectiveBundle, 2 * n, std::move(p));
    s.bundle_degrees = degrees;
    s.genus = genus;
    GradedClass xi = s.generator("xi");
    GradedClass f = s.generator("f");
    // T_X = pi^* T_B + (pi^* E^dual (x) O(1) - O)
    GradedClass total = f * Rational(2 - 2 * genus) + Rational(1);
    for (int d : degrees) total = total * (xi - Rational(d) * f + Rational(1));
    detail::set_complex_tangent(s, {n, total, Flavor::Complex});
    s.b2 = 2;
    s.nef_rays = {f, xi - Rational(dmin) * f};
    s.curves = {{"fiber line", detail::curve_values(s.ring, {{"xi", 1}, {"f", 0}})},
                {"section", detail::curve_values(s.ring, {{"xi", dmin}, {"f", 1}})}};
    return s;
}

/// Blowup of a point on a Picard-rank-one base V with hyperplane class H
/// (degree <H^n> on V) and -K_V = i_V H. Only c1 is recorded.
inline Space blowup_of(const Space& base)
{
    if (base.metadata_only()) fail(ErrorCode::MetadataOnlySpace, "cannot blow up a metadata-only space");
    if (base.b2 != 1 || !base.primitive_x || !base.fano_index || !base.c1)
        fail(ErrorCode::PreconditionUnmet, "blowup requires a Fano base with b2 = 1 and a primitive class", "b2(V) = 1");
    const int n = base.complex_dim();
    if (n < 2) fail(ErrorCode::ValidationError, "blowup of a point needs dimension >= 2", "n >= 2");
    const Rational deg = base.integrate(base.primitive_x->pow(static_cast<unsigned>(n)));

    RingPresentation p;
    p.generators = {{"H", 2, Parity::Even}, {"E", 2, Parity::Even}};
    p.truncation = 2 * n;
    p.exponent_caps = {n, n};
    p.rules.push_back({{1, 1}, {}});
    p.pairing[{n, 0}] = deg;
    p.pairing[{0, n}] = (n + 1) % 2 ? -1 : 1;

    const bool is_cp = base.family == Family::ProjectiveSpace;
    Space s = detail::ring_space(is_cp ? "BlP(" + std::to_string(n) + ")" : "Bl(" + base.name + ")", Family::Blowup,
                                 2 * n, std::move(p));
    GradedClass h = s.generator("H");
    GradedClass ex = s.generator("E");
    s.complex = true;
    s.c1 = Rational(*base.fano_index) * h - Rational(n - 1) * ex;
    s.spin_c = *s.c1;
    s.b2 = 2;
    s.nef_rays = {h, h - ex};
    s.curves = {{"exceptional line", detail::curve_values(s.ring, {{"H", 0}, {"E", -1}})},
                {"strict transform of a line", detail::curve_values(s.ring, {{"H", 1}, {"E", 1}})}};
    s.left = std::make_shared<const Space>(base);
    return s;
}

inline Space blowup_point(int n)
{
    if (n < 2) fail(ErrorCode::ValidationError, "BlP(n) needs n >= 2", "n >= 2");
    return blowup_of(projective_space(n));
}

inline Space product(const Space& x, const Space& y)
{
    if (x.metadata_only() || y.metadata_only())
        fail(ErrorCode::MetadataOnlySpace, "products need ring presentations on both factors");
    RingPresentation pres = tensor_presentation(x.ring->presentation(), y.ring->presentation());
    std::vector<std::string> base = x.base_names;
    base.insert(base.end(), y.base_names.begin(), y.base_names.end());
    std::map<std::string, int> count, seen;
    for (const auto& b : base) ++count[b];
    for (std::size_t i = 0; i < base.size(); ++i)
        pres.generators[i].name = count[base[i]] > 1 ? base[i] + std::to_string(++seen[base[i]]) : base[i];

    std::string name = x.name + " * " + y.name;
    if (x.family == Family::Point) name = y.name;
    else if (y.family == Family::Point) name = x.name;
    Space s = detail::ring_space(name, Family::Product, x.real_dim + y.real_dim, std::move(pres));
    s.base_names = base;
    s.left = std::make_shared<const Space>(x);
    s.right = std::make_shared<const Space>(y);

    auto lx = [&](const GradedClass& a) { return pull_back(s.ring, a, true); };
    auto ry = [&](const GradedClass& a) { return pull_back(s.ring, a, false); };
    if (x.tangent && y.tangent) {
        ChernData t = direct_sum({x.tangent->rank, lx(x.tangent->total), x.tangent->flavor},
                                 {y.tangent->rank, ry(y.tangent->total), y.tangent->flavor});
        s.tangent = t;
        s.complex = x.complex && y.complex;
    }
    if (x.a_hat && y.a_hat) s.a_hat = lx(*x.a_hat) * ry(*y.a_hat);
    if (x.c1 && y.c1) s.c1 = lx(*x.c1) + ry(*y.c1);
    s.spin_c = lx(x.spin_c) + ry(y.spin_c);
    if (x.odd_xi && !y.odd_xi) s.odd_xi = lx(*x.odd_xi);
    if (y.odd_xi && !x.odd_xi) s.odd_xi = ry(*y.odd_xi);
    s.b2 = x.b2 + y.b2;
    if (x.primitive_x && y.b2 == 0) s.primitive_x = lx(*x.primitive_x);
    if (y.primitive_x && x.b2 == 0) s.primitive_x = ry(*y.primitive_x);
    if (x.b2 + y.b2 == 1 && x.fano_index && y.family == Family::Point) s.fano_index = x.fano_index;
    // the Kähler cone of a product of two Picard-rank-one factors
    if (x.nef_rays.size() == 1 && y.nef_rays.size() == 1 && x.b2 == 1 && y.b2 == 1) {
        s.nef_rays = {lx(x.nef_rays[0]), ry(y.nef_rays[0])};
        auto lift = [&](const CurveClass& c, bool left) {
            std::vector<Rational> v(s.ring->generator_count(), Rational(0));
            const std::size_t off = left ? 0 : x.ring->generator_count();
            for (std::size_t i = 0; i < c.pairing.size(); ++i) v[off + i] = c.pairing[i];
            return CurveClass{c.name + (left ? " (left)" : " (right)"), v};
        };
        s.curves = {lift(x.curves[0], true), lift(y.curves[0], false)};
    } else if (x.b2 == 0 || y.b2 == 0) {
        const Space& carrier = x.b2 == 0 ? y : x;
        const bool left = x.b2 != 0;
        for (const auto& ray : carrier.nef_rays) s.nef_rays.push_back(left ? lx(ray) : ry(ray));
        for (const auto& c : carrier.curves) {
            std::vector<Rational> v(s.ring->generator_count(), Rational(0));
            const std::size_t off = left ? 0 : x.ring->generator_count();
            for (std::size_t i = 0; i < c.pairing.size(); ++i) v[off + i] = c.pairing[i];
            s.curves.push_back({c.name, v});
        }
    }
    return s;
}

/// Replace the spin^c class c by c + 2k x.
inline Space twist_spin_c(const Space& x, int k)
{
    if (!x.primitive_x || x.b2 != 1)
        fail(ErrorCode::NoPrimitiveClass, x.name + " has no primitive degree-2 generator", "b2(X) = 1");
    Space s = x;
    s.spin_c = x.spin_c + Rational(2 * k) * *x.primitive_x;
    if (k != 0) s.name = x.name + " twist(" + std::to_string(k) + ")";
    return s;
}

/// Weighted hypersurface X_d in P(weights): index data only.
inline Space weighted_hypersurface(const std::vector<int>& weights, int degree)
{
    if (weights.size() < 3) fail(ErrorCode::ValidationError, "weighted hypersurface needs at least three weights");
    for (int w : weights)
        if (w < 1) fail(ErrorCode::ValidationError, "weights must be positive");
    if (degree < 1) fail(ErrorCode::ValidationError, "degree must be positive");
    Space s;
    s.name = "WP(weights=" + detail::join_ints(weights) + "; degree=" + std::to_string(degree) + ")";
    s.family = Family::WeightedHypersurface;
    const int n = static_cast<int>(weights.size()) - 2;
    s.real_dim = 2 * n;
    s.complex = true;
    s.b2 = 1;
    s.ambient = weights;
    s.multidegrees = {{degree}};
    const int index = std::accumulate(weights.begin(), weights.end(), 0) - degree;
    if (index > 0) s.fano_index = index;
    return s;
}

/// Linear section G(2,5) cap P^{n+3} of dimension n (3 <= n <= 6): index data only.
inline Space grassmannian_section(int n)
{
    if (n < 3 || n > 6) fail(ErrorCode::ValidationError, "G25(n) needs 3 <= n <= 6", "3 <= n <= 6");
    Space s;
    s.name = "G25(" + std::to_string(n) + ")";
    s.family = Family::GrassmannianSection;
    s.real_dim = 2 * n;
    s.complex = true;
    s.b2 = 1;
    s.fano_index = n - 1;
    s.kahler_einstein = (n == 3 || n == 6);
    return s;
}

} // namespace sysbound
