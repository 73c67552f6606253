#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catalog.hpp"
#include "errors.hpp"
#include "graded_ring.hpp"
#include "polynomial.hpp"

namespace sysbound
{

/// (c1 . alpha^{n-1})^n / (alpha^n)^{n-1}.
inline Rational phi(const Space& x, const GradedClass& alpha)
{
    x.require_ring();
    if (!x.c1) fail(ErrorCode::MissingTangentData, x.name + " has no first Chern class");
    if (!alpha.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "phi needs a degree-2 class");
    const int n = x.real_dim / 2;
    GradedClass pw = alpha.pow(static_cast<unsigned>(n - 1));
    Rational num = x.integrate(*x.c1 * pw);
    Rational den = x.integrate(alpha * pw);
    if (den == 0) fail(ErrorCode::DegenerateClass, "alpha^n = 0", "alpha^n != 0");
    return pow(num, static_cast<unsigned>(n)) / pow(den, static_cast<unsigned>(n - 1));
}

struct PhiSup {
    bool unbounded = false;
    std::optional<GradedClass> witness; // nef class with alpha^n = 0 when unbounded
    bool exact = false;
    Rational value;  // the supremum when exact
    Rational lower;  // enclosure of the supremum
    Rational upper;
    Rational t;      // maximizer (or its enclosure midpoint) on the segment
    bool attained = true;
    GradedClass maximizer;
};

namespace detail
{

/// Bound on |f(t) - f(mid)| over [lo, hi].
inline Rational variation_bound(const Polynomial& f, const Rational& lo, const Rational& hi)
{
    Rational r = std::max(abs_value(lo), abs_value(hi));
    Rational b = 0;
    for (int k = 1; k <= f.degree(); ++k)
        b += Rational(k) * abs_value(f.coefficient(k)) * pow(r, static_cast<unsigned>(k - 1));
    return b * (hi - lo);
}

/// Divide out (t - t0)^k.
inline Polynomial deflate(Polynomial f, const Rational& t0, int k)
{
    Polynomial lin(std::vector<Rational>{-t0, 1});
    for (int i = 0; i < k; ++i) f = f.divmod(lin).first;
    return f;
}

} // namespace detail

/// Supremum of phi over the nef cone of a Picard-rank <= 2 catalog space.
inline PhiSup phi_sup(const Space& x)
{
    x.require_ring();
    if (!x.c1) fail(ErrorCode::MissingTangentData, x.name + " has no first Chern class");
    if (x.nef_rays.empty() || x.nef_rays.size() > 2)
        fail(ErrorCode::UnsupportedRank, x.name + " has no rank <= 2 nef cone description", "Picard rank <= 2");
    const int n = x.real_dim / 2;
    PhiSup out;
    if (x.nef_rays.size() == 1) {
        out.exact = true;
        out.value = out.lower = out.upper = phi(x, x.nef_rays[0]);
        out.t = 0;
        out.maximizer = x.nef_rays[0];
        return out;
    }
    const GradedClass& r1 = x.nef_rays[0];
    const GradedClass& r2 = x.nef_rays[1];
    auto at = [&](const Rational& t) { return (Rational(1) - t) * r1 + t * r2; };
    // N(t) = c1 . alpha(t)^{n-1}, D(t) = alpha(t)^n, recovered by exact interpolation
    std::vector<std::pair<Rational, Rational>> np, dp;
    for (int k = 0; k <= n; ++k) {
        Rational t = make_rational(k, n);
        GradedClass a = at(t);
        GradedClass pw = a.pow(static_cast<unsigned>(n - 1));
        np.push_back({t, x.integrate(*x.c1 * pw)});
        dp.push_back({t, x.integrate(a * pw)});
    }
    Polynomial num = interpolate(np);
    Polynomial den = interpolate(dp);
    auto phi_at = [&](const Rational& t) -> Rational {
        return pow(num(t), static_cast<unsigned>(n)) / pow(den(t), static_cast<unsigned>(n - 1));
    };

    for (const auto& root : isolate_roots(den, 0, 1))
        if (root.hi < 1 || !root.exact())
            fail(ErrorCode::DegenerateClass, "alpha^n vanishes inside the nef cone of " + x.name);

    struct Candidate {
        Rational lower, upper, t;
        bool exact, attained;
    };
    std::vector<Candidate> cands;
    for (const Rational& t0 : {Rational(0), Rational(1)}) {
        if (den(t0) != 0) {
            Rational v = phi_at(t0);
            cands.push_back({v, v, t0, true, true});
            continue;
        }
        const int q = den.order_at(t0);
        const int p = num.is_zero() ? -1 : num.order_at(t0);
        if (p < 0) continue; // phi vanishes identically
        // leading behaviour of phi as t -> t0 from inside the segment
        Polynomial nr = detail::deflate(num, t0, p);
        Polynomial dr = detail::deflate(den, t0, q);
        Rational lead = pow(nr(t0), static_cast<unsigned>(n)) / pow(dr(t0), static_cast<unsigned>(n - 1));
        // (t - t0)^{np - (n-1)q}: inward direction flips the sign at t0 = 1 for odd exponent
        const long e = static_cast<long>(n) * p - static_cast<long>(n - 1) * q;
        int dir_sign = (t0 == 1 && (std::labs(e) % 2 == 1)) ? -1 : 1;
        if (e < 0 && sgn(lead) * dir_sign > 0) {
            out.unbounded = true;
            out.witness = at(t0);
            out.t = t0;
            return out;
        }
        if (e == 0) {
            Rational v = lead;
            cands.push_back({v, v, t0, true, false});
        }
    }

    // interior critical points: n N' D - (n-1) N D' = 0
    Polynomial g = Rational(n) * num.derivative() * den - Rational(n - 1) * num * den.derivative();
    if (!g.is_zero()) {
        for (auto root : isolate_roots(g, 0, 1)) {
            if (root.exact() && (root.lo == 0 || root.lo == 1)) continue;
            if (auto rr = rational_root_in(g, root)) {
                if (*rr <= 0 || *rr >= 1) continue;
                Rational v = phi_at(*rr);
                cands.push_back({v, v, *rr, true, true});
                continue;
            }
            Polynomial sf = square_free(g);
            RootInterval tight = refine(sf, root, Rational(1, Integer(1) << 80));
            Rational lo = std::max(tight.lo, Rational(0));
            Rational hi = std::min(tight.hi, Rational(1));
            Rational mid = (lo + hi) / 2;
            Rational nm = num(mid), dm = den(mid);
            Rational vn = detail::variation_bound(num, lo, hi);
            Rational vd = detail::variation_bound(den, lo, hi);
            Rational n_hi = abs_value(nm) + vn;
            Rational d_lo = dm - vd;
            Rational upper = d_lo > 0 ? Rational(pow(n_hi, static_cast<unsigned>(n)) / pow(d_lo, static_cast<unsigned>(n - 1)))
                                      : Rational(phi_at(mid) + 1);
            cands.push_back({phi_at(mid), upper, mid, false, true});
        }
    }
    if (cands.empty()) {
        out.exact = true;
        out.value = out.lower = out.upper = 0;
        return out;
    }
    auto best = std::max_element(cands.begin(), cands.end(),
                                 [](const Candidate& a, const Candidate& b) { return a.lower < b.lower; });
    out.exact = best->exact;
    out.lower = best->lower;
    out.upper = best->exact ? best->lower : best->upper;
    for (const auto& c : cands)
        if (c.upper > out.upper && &c != &*best) {
            out.exact = false;
            out.upper = c.upper;
        }
    out.value = best->lower;
    out.t = best->t;
    out.attained = best->attained;
    out.maximizer = at(best->t);
    return out;
}

/// r(alpha) = max over dual generators C of (c1 . C)/(alpha . C).
inline Rational nef_threshold(const Space& x, const GradedClass& alpha)
{
    x.require_ring();
    if (!x.c1) fail(ErrorCode::MissingTangentData, x.name + " has no first Chern class");
    if (x.curves.empty()) fail(ErrorCode::UnsupportedRank, x.name + " has no dual cone description");
    if (!alpha.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "nef threshold needs a degree-2 class");
    std::optional<Rational> best;
    for (const auto& c : x.curves) {
        Rational ac = c(alpha);
        if (ac <= 0) fail(ErrorCode::DegenerateClass, "alpha is not in the open Kähler cone", "alpha ample");
        Rational v = c(*x.c1) / ac;
        if (!best || v > *best) best = v;
    }
    return *best;
}

/// s(alpha) = c1 . alpha^{n-1} / alpha^n, checked against r(alpha).
inline Rational s_alpha(const Space& x, const GradedClass& alpha)
{
    x.require_ring();
    if (!x.c1) fail(ErrorCode::MissingTangentData, x.name + " has no first Chern class");
    if (!alpha.is_homogeneous(2)) fail(ErrorCode::NotDegreeTwo, "s(alpha) needs a degree-2 class");
    const int n = x.real_dim / 2;
    GradedClass pw = alpha.pow(static_cast<unsigned>(n - 1));
    Rational den = x.integrate(alpha * pw);
    if (den == 0) fail(ErrorCode::DegenerateClass, "alpha^n = 0", "alpha^n != 0");
    Rational s = x.integrate(*x.c1 * pw) / den;
    if (!x.curves.empty()) {
        Rational r = nef_threshold(x, alpha);
        if (s > r) fail(ErrorCode::BoundViolated, "s(alpha) = " + to_string(s) + " exceeds r(alpha) = " + to_string(r));
    }
    return s;
}

struct BundleProfile {
    Rational sys;      // min{a, b} for genus 0, a otherwise
    Rational s;        // s(alpha)
    Rational product;  // sys * s
};

inline BundleProfile bundle_systole_profile(const std::vector<int>& degrees, int genus, const Rational& a, const Rational& b)
{
    if (a <= 0 || b <= 0) fail(ErrorCode::InvalidArgument, "a and b must be positive", "a, b > 0");
    if (genus == 0) {
        if (degrees.empty() || degrees[0] != 0 || !std::is_sorted(degrees.begin(), degrees.end()))
            fail(ErrorCode::InvalidNormalization, "genus-0 bundles must be normalized as 0 = d1 <= d2 <= ...",
                 "0 = d1 <= d2 <= ... <= dn");
    }
    Space x = proj_bundle_over_curve(degrees, genus);
    GradedClass alpha = a * x.generator("xi") + b * x.generator("f");
    const int n = static_cast<int>(degrees.size());
    Rational e = 0;
    for (int d : degrees) e += d;
    GradedClass pw = alpha.pow(static_cast<unsigned>(n - 1));
    Rational an = x.integrate(alpha * pw);
    Rational c1a = x.integrate(*x.c1 * pw);
    const Rational closed_an = pow(a, static_cast<unsigned>(n - 1)) * (a * e + Rational(n) * b);
    const Rational closed_c1 =
        pow(a, static_cast<unsigned>(n - 2)) * (Rational(n - 1) * (a * e + Rational(n) * b) - Rational(2 * genus - 2) * a);
    if (an != closed_an || c1a != closed_c1)
        fail(ErrorCode::BoundViolated, "ring intersection numbers disagree with the projective-bundle closed forms");
    Rational s = s_alpha(x, alpha);
    Rational sys = genus == 0 ? std::min(a, b) : a;
    return {sys, s, sys * s};
}

struct ProfileSup {
    Rational sup;
    Rational x;
    int e = 0;
};

/// sup over x > 0, e >= 0 of min{1, x}(n - 1 + 2/(e + n x)).
inline ProfileSup bundle_profile_sup(int n)
{
    if (n < 2) fail(ErrorCode::InvalidArgument, "bundle_profile_sup needs n >= 2");
    auto f = [n](const Rational& x, int e) -> Rational {
        return std::min(Rational(1), x) * (Rational(n - 1) + Rational(2) / (Rational(e) + Rational(n) * x));
    };
    ProfileSup best{f(1, 0), 1, 0};
    for (int e = 0; e <= 8; ++e) {
        for (int k = 1; k <= 64; ++k) {
            Rational x = make_rational(k, 16);
            Rational v = f(x, e);
            if (v > best.sup) best = {v, x, e};
            // monotone branches: increasing in x below 1, decreasing above
            Rational slope = x < 1 ? Rational(Rational(n - 1) + Rational(2 * e) / pow(Rational(e) + Rational(n) * x, 2))
                                   : Rational(Rational(-2 * n) / pow(Rational(e) + Rational(n) * x, 2));
            if ((x < 1 && slope <= 0) || (x > 1 && slope >= 0))
                fail(ErrorCode::BoundViolated, "profile is not monotone on its branches");
        }
        // along x = 1 the profile decreases in e
        if (e > 0 && f(1, e) >= f(1, e - 1)) fail(ErrorCode::BoundViolated, "profile is not decreasing in e");
    }
    if (best.sup != Rational(n - 1) + make_rational(2, n) || best.x != 1 || best.e != 0)
        fail(ErrorCode::BoundViolated, "profile supremum differs from n - 1 + 2/n");
    return best;
}

struct FactorContraction {
    int factor = 0;            // 1-based
    bool k_negative = false;   // sum_a d_ai <= N_i
    int fiber_dim = 0;         // N_i - r
    int minus_k_coefficient = 0;
};

struct ContractionReport {
    int dim = 0;
    bool positive_multidegrees = true;
    std::vector<FactorContraction> factors;
    bool fano = false;
    int max_systole_order = 0; // min_i (N_i - r)
};

inline ContractionReport multiproj_contractions(const std::vector<int>& ambient, const std::vector<std::vector<int>>& multidegrees)
{
    const int r = static_cast<int>(multidegrees.size());
    int total = 0;
    for (int nn : ambient) total += nn;
    for (const auto& row : multidegrees)
        if (row.size() != ambient.size())
            fail(ErrorCode::ValidationError, "multidegree row length must match the number of ambient factors");
    ContractionReport rep;
    rep.dim = total - r;
    if (rep.dim < 3) fail(ErrorCode::DimensionTooLow, "Lefschetz description needs dim X >= 3", "dim X >= 3");
    rep.fano = true;
    rep.max_systole_order = -1;
    for (std::size_t i = 0; i < ambient.size(); ++i) {
        int sum = 0;
        for (const auto& row : multidegrees) {
            sum += row[i];
            if (row[i] <= 0) rep.positive_multidegrees = false;
        }
        FactorContraction fc{static_cast<int>(i) + 1, sum <= ambient[i], ambient[i] - r, ambient[i] + 1 - sum};
        rep.fano = rep.fano && fc.k_negative;
        rep.max_systole_order = rep.max_systole_order < 0 ? fc.fiber_dim : std::min(rep.max_systole_order, fc.fiber_dim);
        rep.factors.push_back(fc);
    }
    if (!rep.fano) rep.max_systole_order = 0;
    return rep;
}

} // namespace sysbound
