// Acceptance gate: one PASS/FAIL line per criterion, details indented below.
// Usage: acceptance [--expect-fail N]...  (exit 0 iff the failing set equals the expected set)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sysbound/sysbound.hpp"

using namespace sysbound;

namespace
{

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void check(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            if (notes.size() < 40) notes.push_back("failed: " + what);
        }
    }
    void note(const std::string& s) { notes.push_back(s); }
};

std::string str(const Rational& q) { return to_string(q); }
std::string str(const PiScaled& p) { return p.to_string(); }

int fano_ci_index(const std::vector<int>& degrees, int ambient)
{
    int s = 0;
    for (int d : degrees) s += d;
    return ambient + 1 - s;
}

/// Fano complete intersections of dimension <= 6 in a single projective space.
std::vector<std::pair<std::vector<int>, int>> fano_cis()
{
    std::vector<std::pair<std::vector<int>, int>> out;
    for (const auto& degs : std::vector<std::vector<int>>{{3}, {4}, {2, 2}, {2, 3}, {2, 2, 2}})
        for (int n = 1; n <= 6; ++n) {
            const int amb = n + static_cast<int>(degs.size());
            if (fano_ci_index(degs, amb) >= 1) out.push_back({degs, amb});
        }
    return out;
}

/// Complete intersection of hypersurfaces of the given degrees in CP^ambient.
Space ci(const std::vector<int>& degrees, int ambient)
{
    std::vector<std::vector<int>> rows;
    for (int d : degrees) rows.push_back({d});
    return complete_intersection(rows, {ambient});
}

// 1 -------------------------------------------------------------------------
Outcome todd_genus_criterion()
{
    Outcome o;
    int count = 0;
    for (int n = 1; n <= 8; ++n, ++count) o.check(todd_genus(projective_space(n)) == 1, "CP(" + std::to_string(n) + ")");
    for (int n = 2; n <= 8; ++n, ++count) o.check(todd_genus(quadric(n)) == 1, "Q(" + std::to_string(n) + ")");
    for (const auto& [degs, amb] : fano_cis()) {
        Space x = ci(degs, amb);
        Rational td = todd_genus(x);
        o.check(td == 1, x.name + " gives " + str(td));
        ++count;
    }
    o.note(std::to_string(count) + " Fano spaces checked");
    return o;
}

// 2 -------------------------------------------------------------------------
Outcome length_criterion()
{
    Outcome o;
    for (int n = 2; n <= 6; ++n) {
        o.check(length(projective_space(n)) == n + 1, "length CP(" + std::to_string(n) + ")");
        o.check(length(quadric(n)) == n, "length Q(" + std::to_string(n) + ")");
    }
    for (int n = 3; n <= 6; ++n) {
        Space x3 = complete_intersection({{3}}, {n + 1});
        Space x4 = complete_intersection({{4}}, {n + 1});
        o.check(length(x3) == n - 1, x3.name);
        o.check(length(x4) == n - 2, x4.name);
        o.check(x3.fano_index == n - 1 && x4.fano_index == n - 2, "Fano index metadata in dimension " + std::to_string(n));
    }
    return o;
}

// 3 -------------------------------------------------------------------------
Outcome sharp_constants_criterion()
{
    Outcome o;
    int evaluated = 0;
    auto expect = [&](const Space& x, const Space& nf, BoundKind k, long value) {
        PiScaled got = systolic_bound(x, nf, k);
        o.check(got == PiScaled(Rational(value), 1),
                std::string(bound_name(k)) + " on " + x.name + " x " + nf.name + ": " + str(got) + " vs " + std::to_string(value) + " * pi");
        ++evaluated;
    };
    std::vector<std::pair<Space, long>> fano; // (X, i_X) with b2 = 1
    for (int n = 1; n <= 8; ++n) fano.push_back({projective_space(n), n + 1});
    for (int n = 3; n <= 8; ++n) fano.push_back({quadric(n), n});
    for (const auto& [degs, amb] : fano_cis()) {
        Space x = ci(degs, amb);
        if (x.real_dim >= 6) fano.push_back({x, fano_ci_index(degs, amb)});
    }
    const std::vector<Space> factors = {point(), circle()};
    for (const auto& [x, ix] : fano) {
        const long n = x.real_dim / 2;
        expect(x, point(), BoundKind::Kahler, 4 * n * (n + 1));
        if (x.family != Family::ProjectiveSpace) expect(x, point(), BoundKind::KahlerRefined, 4 * n * n);
        if (x.family == Family::CompleteIntersection) expect(x, point(), BoundKind::NonBundle, 4 * (n * (n - 1) + 2));
        for (const auto& nf : factors) {
            const long h = nf.real_dim / 2;
            expect(x, nf, BoundKind::SpinCProduct, 4 * (n + h) * (n + 1));
            expect(x, nf, BoundKind::FanoIndex, 4 * (n + h) * ix);
        }
    }
    // hypotheses are enforced rather than silently evaluated
    int refused = 0;
    auto refuses = [&](const std::function<void()>& f) {
        try {
            f();
        } catch (const Error&) {
            ++refused;
            return true;
        }
        return false;
    };
    o.check(refuses([] { systolic_bound(projective_space(3), point(), BoundKind::KahlerRefined); }), "refined on CP(3)");
    o.check(refuses([] { systolic_bound(quadric(4), point(), BoundKind::NonBundle); }), "non-bundle on Q(4)");
    o.check(refuses([] { systolic_bound(blowup_point(3), point(), BoundKind::FanoIndex); }), "Fano index on BlP(3)");
    o.note(std::to_string(evaluated) + " constants evaluated, " + std::to_string(refused) + " hypothesis violations refused");
    return o;
}

// 4, 5 ----------------------------------------------------------------------
KahlerClass pi_h(const Space& x) { return {PiScaled(1, 1), x.generator("H")}; }

Outcome curvature_volume_criterion()
{
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        Space x = projective_space(n);
        o.check(avg_scalar_curvature(x, pi_h(x)) == PiScaled(4 * n * (n + 1), 0), "scalar curvature of " + x.name);
        o.check(volume(x, pi_h(x)) == PiScaled(Rational(1) / factorial(static_cast<unsigned>(n)), n), "volume of " + x.name);
    }
    for (int n = 2; n <= 8; ++n) {
        Space q = quadric(n);
        o.check(avg_scalar_curvature(q, pi_h(q)) == PiScaled(4 * n * n, 0), "scalar curvature of " + q.name);
    }
    return o;
}

Outcome gromov_width_criterion()
{
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        Space x = projective_space(n);
        PiScaled w = gromov_width_bound(x, pi_h(x));
        o.check(w == PiScaled(make_rational(2 * n, n + 1), 1), x.name + ": " + str(w));
    }
    return o;
}

// 6 -------------------------------------------------------------------------
Outcome cone_criterion()
{
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
        PhiSup s = phi_sup(projective_space(n));
        o.check(s.exact && !s.unbounded && s.value == pow(Rational(n + 1), static_cast<unsigned>(n)),
                "phi_sup CP(" + std::to_string(n) + ")");
    }
    for (int n = 2; n <= 6; ++n) {
        Space b = blowup_point(n);
        PhiSup s = phi_sup(b);
        o.check(s.unbounded && s.witness && *s.witness == b.generator("H") - b.generator("E"), "unbounded witness on " + b.name);
    }
    for (int n = 2; n <= 6; ++n) {
        ProfileSup p = bundle_profile_sup(n);
        o.check(p.sup == Rational(n - 1) + make_rational(2, n) && p.x == 1 && p.e == 0,
                "profile sup n = " + std::to_string(n) + ": " + str(p.sup));
    }
    return o;
}

// 7 -------------------------------------------------------------------------
Outcome parity_sweep_criterion()
{
    Outcome o;
    std::vector<Space> xs;
    for (int n = 1; n <= 6; ++n) xs.push_back(projective_space(n));
    for (int n = 3; n <= 6; ++n) xs.push_back(quadric(n));
    for (const auto& [degs, amb] : fano_cis())
        if (amb - static_cast<int>(degs.size()) >= 2) xs.push_back(ci(degs, amb));
    for (int n = 1; n <= 4; ++n)
        for (int k : {-1, 1, 2}) xs.push_back(twist_spin_c(projective_space(n), k));
    for (int n = 3; n <= 5; ++n) xs.push_back(twist_spin_c(quadric(n), 1));
    const std::vector<Space> ns = {point(), circle()};
    int products = 0;
    for (const auto& x : xs) {
        const int lx = length(x);
        o.check(lx <= x.real_dim / 2 + 1, "length bound on " + x.name);
        for (const auto& nf : ns) {
            if (x.real_dim % 2 == 1 && nf.real_dim % 2 == 1) continue;
            Space m = product(x, nf);
            const int lm = length(m);
            o.check(lm <= lx, "length(" + m.name + ") = " + std::to_string(lm) + " > " + std::to_string(lx));
            o.check(lm <= m.real_dim / 2 + 1, "parity window on " + m.name);
            ++products;
        }
    }
    o.check(products >= 50, "at least 50 products");
    o.note(std::to_string(products) + " products X x N checked");
    return o;
}

// 8 -------------------------------------------------------------------------
using IMat = std::vector<std::vector<long>>;

long idet(const IMat& m)
{
    const std::size_t n = m.size();
    if (n == 1) return m[0][0];
    long s = 0;
    for (std::size_t j = 0; j < n; ++j) {
        IMat minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<long> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        s += (j % 2 ? -1 : 1) * m[0][j] * idet(minor);
    }
    return s;
}

/// Shortest nonzero squared length of the lattice spanned by the columns of b,
/// scanning a coordinate box with the membership test adj(B) y = 0 mod det(B).
long brute_lambda1(const IMat& b)
{
    const std::size_t r = b.size();
    const long det = idet(b);
    IMat adj(r, std::vector<long>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            IMat minor;
            for (std::size_t a = 0; a < r; ++a) {
                if (a == i) continue;
                std::vector<long> row;
                for (std::size_t c = 0; c < r; ++c)
                    if (c != j) row.push_back(b[a][c]);
                minor.push_back(row);
            }
            adj[j][i] = ((i + j) % 2 ? -1 : 1) * idet(minor);
        }
    long cap = -1;
    for (std::size_t j = 0; j < r; ++j) {
        long s = 0;
        for (std::size_t i = 0; i < r; ++i) s += b[i][j] * b[i][j];
        cap = cap < 0 ? s : std::min(cap, s);
    }
    const long box = static_cast<long>(std::floor(std::sqrt(static_cast<double>(cap))));
    long best = cap;
    std::vector<long> y(r, -box);
    while (true) {
        long n2 = 0;
        for (long v : y) n2 += v * v;
        if (n2 > 0 && n2 < best) {
            bool member = true;
            for (std::size_t i = 0; i < r && member; ++i) {
                long s = 0;
                for (std::size_t k = 0; k < r; ++k) s += adj[i][k] * y[k];
                member = s % det == 0;
            }
            if (member) best = n2;
        }
        std::size_t k = 0;
        while (k < r && y[k] == box) y[k++] = -box;
        if (k == r) break;
        ++y[k];
    }
    return best;
}

Outcome lattice_criterion()
{
    Outcome o;
    std::mt19937 rng(20240601);
    std::uniform_int_distribution<long> entry(-5, 5);
    std::uniform_int_distribution<int> rank(2, 4);
    std::vector<int> hist(10, 0);
    Rational worst_transfer = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t r = static_cast<std::size_t>(rank(rng));
        IMat b;
        do {
            b.assign(r, std::vector<long>(r));
            for (auto& row : b)
                for (auto& x : row) x = entry(rng);
        } while (idet(b) == 0);
        Mat basis;
        for (const auto& row : b) {
            Vec v;
            for (long x : row) v.push_back(Rational(x));
            basis.push_back(v);
        }
        NormedLattice l = make_euclidean_lattice(basis, linalg::identity(r));
        const Rational lambda1(brute_lambda1(b));
        const std::string tag = "lattice " + std::to_string(trial) + " (rank " + std::to_string(r) + ")";
        ReducedDualBasis rb = reduced_dual_basis(l);
        o.check(rb.lambda1 == lambda1, tag + ": lambda_1^2 " + str(rb.lambda1) + " vs oracle " + str(lambda1));
        const Integer det = detail::int_determinant(rb.change);
        o.check(det == 1 || det == -1, tag + ": change of basis not unimodular");
        const Rational r4(static_cast<long>(r * r * r * r));
        Rational worst = 0;
        for (const auto& nv : rb.dual_norm) {
            o.check(nv * lambda1 <= r4, tag + ": |u|_*^2 lambda_1^2 = " + str(nv * lambda1));
            worst = std::max(worst, Rational(nv * lambda1));
        }
        // achieved constant |u|_* lambda_1 / r^2 in [0, 1]
        const double ratio = std::sqrt(Rational(worst / r4).get_d());
        hist[static_cast<std::size_t>(std::min(9, static_cast<int>(ratio * 10)))]++;
        TransferenceResult t = transference_check(l);
        o.check(t.lambda1_sq == lambda1, tag + ": transference lambda_1 disagrees with oracle");
        o.check(t.product_sq <= Rational(static_cast<long>(r * r)), tag + ": transference");
        worst_transfer = std::max(worst_transfer, Rational(t.product_sq / Rational(static_cast<long>(r * r))));
    }
    o.note("histogram of max_i |u_i|_* lambda_1 / r^2 over 200 lattices:");
    for (std::size_t i = 0; i < hist.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  [%.1f, %.1f) %4d ", static_cast<double>(i) / 10, static_cast<double>(i + 1) / 10, hist[i]);
        o.note(buf + std::string(static_cast<std::size_t>(hist[i] / 4), '#'));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "largest lambda_1 lambda_r(dual) / r: %.4f", std::sqrt(worst_transfer.get_d()));
    o.note(buf);
    return o;
}

// 9 -------------------------------------------------------------------------
Outcome pushforward_criterion()
{
    Outcome o;
    o.check(localization_pushforward(1, 2, 1) == Rational(-1) * SymmetricPolynomial::power_sum(2, 1), "P(1,2,1) = -p1");
    int sums = 0;
    for (int r = 2; r <= 5; ++r)
        for (int k = 1; k < r; ++k)
            for (int j = 0; j <= 4; ++j) {
                try {
                    localization_pushforward(k, r, j);
                    ++sums;
                } catch (const Error& e) {
                    o.check(false, std::string("polynomiality at (") + std::to_string(k) + "," + std::to_string(r) + "," +
                                       std::to_string(j) + "): " + e.what());
                }
            }
    o.note(std::to_string(sums) + " localization sums cleared their denominators");
    // stated law: primitive_coefficient(k, 2k, b) = 0 iff b even
    bool stated = true, bracket_law = true;
    std::string table;
    for (int k = 1; k <= 3; ++k)
        for (int b = 1; b <= 6; ++b) {
            if (b > 2 * k) continue; // b <= r is required to isolate p_b
            const Rational c = primitive_coefficient(k, 2 * k, b);
            const bool zero = c == 0;
            if (zero != (b % 2 == 0)) stated = false;
            if (b >= 2 && zero != (primitive_bracket(k, 2 * k, b) == 0)) bracket_law = false;
            table += " (" + std::to_string(k) + "," + std::to_string(b) + ")=" + str(c);
        }
    o.note("coefficients (k,b) at r = 2k:" + table);
    o.note(std::string("zero exactly where the bracket k(1/2)^b(1+(-1)^b) vanishes (odd b >= 2): ") +
           (bracket_law ? "yes" : "no"));
    o.check(stated, "stated vanishing law (zero iff b even) contradicts the computed coefficients: "
                    "they vanish for odd b, matching the bracket, not for even b");
    return o;
}

// 10 ------------------------------------------------------------------------
GradedClass random_class(const RingHandle& ring, std::mt19937& rng)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    GradedClass out(ring);
    for (int d = 0; d <= ring->truncation(); ++d)
        for (const auto& m : ring->basis(d)) out += GradedClass::monomial(ring, m, coeff(rng));
    return out;
}

Outcome identity_criterion()
{
    Outcome o;
    std::vector<Space> catalog;
    for (int n = 1; n <= 6; ++n) catalog.push_back(projective_space(n));
    for (int n = 2; n <= 6; ++n) catalog.push_back(quadric(n));
    for (const auto& [degs, amb] : fano_cis()) catalog.push_back(ci(degs, amb));
    catalog.push_back(complete_intersection({{4}}, {3}));
    catalog.push_back(complete_intersection({{1, 1}}, {2, 2}));
    catalog.push_back(complete_intersection({{1, 1}}, {3, 3}));
    for (int g = 0; g <= 2; ++g) catalog.push_back(proj_bundle_over_curve({0, 1, 3}, g));
    catalog.push_back(product(projective_space(1), projective_space(2)));
    int tangents = 0;
    for (const auto& x : catalog) {
        if (!x.tangent) continue;
        const ChernData& t = *x.tangent;
        o.check(todd(t) == exp_class(t.c(1) * Rational(1, 2)) * a_hat(t), "Todd identity on " + x.name);
        ++tangents;
    }
    o.note(std::to_string(tangents) + " tangent bundles satisfy Td = e^{c1/2} A-hat");

    std::vector<Space> small;
    for (int n = 1; n <= 3; ++n) small.push_back(projective_space(n));
    small.push_back(quadric(2));
    small.push_back(quadric(3));
    small.push_back(complete_intersection({{3}}, {3}));
    small.push_back(complete_intersection({{4}}, {3}));
    small.push_back(proj_bundle_over_curve({0, 2}, 1));
    small.push_back(complete_intersection({{1, 1}}, {2, 2}));
    small.push_back(circle());
    small.push_back(sphere(2));
    small.push_back(sphere(3));
    std::mt19937 rng(99);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        const Space& x = small[pick(rng)];
        const Space& y = small[pick(rng)];
        Space p = product(x, y);
        const std::string tag = p.name;
        GradedClass a = random_class(x.ring, rng), b = random_class(y.ring, rng);
        o.check(p.integrate(pull_back(p.ring, a, true) * pull_back(p.ring, b, false)) == x.integrate(a) * y.integrate(b),
                "Kunneth on " + tag);
        GradedClass ax = pull_back(p.ring, *x.a_hat, true), ay = pull_back(p.ring, *y.a_hat, false);
        o.check(*p.a_hat == ax * ay, "stored A-hat of " + tag);
        o.check(p.a_hat->integrate() == x.a_hat->integrate() * y.a_hat->integrate(), "A-hat genus of " + tag);
        if (x.tangent && y.tangent) {
            o.check(a_hat(*p.tangent) == ax * ay, "A-hat of the product tangent bundle " + tag);
            o.check(todd_genus(p) == todd_genus(x) * todd_genus(y), "Todd genus of " + tag);
        }
    }
    o.note("50 random product pairs checked");

    Space cp2 = projective_space(2);
    GradedClass h = cp2.generator("H");
    std::vector<std::pair<Rational, Rational>> pts;
    for (int k = 0; k < 6; ++k)
        pts.push_back({Rational(k), cp2.integrate(exp_class(Rational(k) * h) * todd(*cp2.tangent))});
    Polynomial interp = interpolate(pts);
    Polynomial hp = hilbert_polynomial(cp2, h);
    o.check(interp == hp, "Hilbert polynomial of CP(2) vs interpolation: " + hp.to_string() + " vs " + interp.to_string());
    o.check(interp.degree() == 2, "interpolant has degree 2");
    return o;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> expected_failures;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) expected_failures.insert(std::atoi(argv[++i]));
        else {
            std::cerr << "usage: acceptance [--expect-fail N]...\n";
            return 2;
        }
    }
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Todd genus of Fano families", todd_genus_criterion},
        {"length values", length_criterion},
        {"sharp systolic constants", sharp_constants_criterion},
        {"scalar curvature and volume", curvature_volume_criterion},
        {"Gromov width", gromov_width_criterion},
        {"cone optimization", cone_criterion},
        {"parity sweep over products", parity_sweep_criterion},
        {"lattice suite", lattice_criterion},
        {"Grassmann pushforward", pushforward_criterion},
        {"identity suite", identity_criterion},
    };
    std::set<int> failed;
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) failed.insert(id);
        char head[160];
        std::snprintf(head, sizeof head, "[%s] %2d %s (%.2fs)", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), secs);
        std::cout << head << "\n";
        for (const auto& n : o.notes) std::cout << "       " << n << "\n";
    }
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << criteria.size() - failed.size() << "/" << criteria.size() << " criteria passed in " << total << "s\n";
    if (failed != expected_failures) {
        std::cout << "failing set differs from the expected set\n";
        return 1;
    }
    if (!failed.empty()) std::cout << "all failures are the documented expected ones\n";
    return 0;
}
