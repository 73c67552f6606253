#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace sysbound
{

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>; // row-major
using IntVec = std::vector<Integer>;
using IntMat = std::vector<IntVec>;

namespace linalg
{

inline Mat identity(std::size_t n)
{
    Mat m(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat transpose(const Mat& a)
{
    if (a.empty()) return {};
    Mat t(a[0].size(), Vec(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
    return t;
}

inline Mat multiply(const Mat& a, const Mat& b)
{
    Mat c(a.size(), Vec(b.empty() ? 0 : b[0].size(), Rational(0)));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < b[k].size(); ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline Vec apply(const Mat& a, const Vec& v)
{
    Vec out(a.size(), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
    return out;
}

inline Rational dot(const Vec& a, const Vec& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

/// v^T q v.
inline Rational quad(const Mat& q, const Vec& v) { return dot(v, linalg::apply(q, v)); }

inline Rational determinant(Mat a)
{
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return det;
}

inline std::optional<Mat> inverse(Mat a)
{
    const std::size_t n = a.size();
    Mat inv = identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational piv = a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

/// Solve a x = b; nullopt when a is singular.
inline std::optional<Vec> solve(const Mat& a, const Vec& b)
{
    auto inv = inverse(a);
    if (!inv) return std::nullopt;
    return linalg::apply(*inv, b);
}

inline std::size_t rank(Mat a)
{
    std::size_t rk = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rk < rows; ++c) {
        std::size_t p = rk;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rk]);
        for (std::size_t r = rk + 1; r < rows; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rk][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rk][k];
        }
        ++rk;
    }
    return rk;
}

inline Mat to_rational(const IntMat& m)
{
    Mat out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (const auto& x : m[i]) out[i].push_back(Rational(x));
    return out;
}

inline Integer round_nearest(const Rational& q)
{
    // floor(q + 1/2)
    return floor_div(q + Rational(1, 2));
}

/// Column j of a row-major matrix.
inline Vec column(const Mat& m, std::size_t j)
{
    Vec v;
    for (const auto& row : m) v.push_back(row[j]);
    return v;
}

} // namespace linalg

enum class NormKind { Euclidean, Polytope };

/// Rank-r lattice generated by the columns of `basis` in Q^r, with either the
/// Euclidean norm of an ambient Gram matrix or the Minkowski functional of a
/// centrally symmetric polytope.
struct NormedLattice {
    Mat basis;
    NormKind kind = NormKind::Euclidean;
    Mat gram;                 // ambient Gram matrix (Euclidean)
    std::vector<Vec> vertices; // unit-ball vertices (polytope)
    std::vector<Vec> facets;   // facet normals a with unit ball {a . y <= 1}

    int rank() const { return static_cast<int>(basis.size()); }
    Vec vector_of(const IntVec& z) const
    {
        Vec zr;
        for (const auto& x : z) zr.push_back(Rational(x));
        return linalg::apply(basis, zr);
    }
};

namespace detail
{

inline void check_rank(std::size_t r)
{
    if (r > 5) fail(ErrorCode::RankTooLarge, "lattice rank " + std::to_string(r) + " exceeds 5", "rank <= 5");
    if (r == 0) fail(ErrorCode::ValidationError, "lattice rank must be positive");
}

inline void check_square(const Mat& m, std::size_t r, const char* what)
{
    if (m.size() != r) fail(ErrorCode::ValidationError, std::string(what) + " must be square of size rank");
    for (const auto& row : m)
        if (row.size() != r) fail(ErrorCode::ValidationError, std::string(what) + " must be square of size rank");
}

/// Facet normals of a full-dimensional symmetric polytope given by vertices.
inline std::vector<Vec> facet_normals(const std::vector<Vec>& verts, std::size_t r)
{
    std::set<Vec> out;
    std::vector<std::size_t> idx(r);
    auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == r) {
            Mat a;
            for (std::size_t i : idx) a.push_back(verts[i]);
            auto sol = linalg::solve(a, Vec(r, Rational(1)));
            if (!sol) return;
            for (const auto& v : verts)
                if (linalg::dot(*sol, v) > 1) return;
            out.insert(*sol);
            return;
        }
        for (std::size_t i = start; i < verts.size(); ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return {out.begin(), out.end()};
}

} // namespace detail

inline NormedLattice make_euclidean_lattice(Mat basis, Mat gram)
{
    const std::size_t r = basis.size();
    detail::check_rank(r);
    detail::check_square(basis, r, "basis");
    detail::check_square(gram, r, "Gram matrix");
    if (linalg::determinant(basis) == 0) fail(ErrorCode::ValidationError, "lattice basis is singular");
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (gram[i][j] != gram[j][i]) fail(ErrorCode::ValidationError, "Gram matrix is not symmetric");
    for (std::size_t k = 1; k <= r; ++k) {
        Mat minor(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) minor[i][j] = gram[i][j];
        if (linalg::determinant(minor) <= 0) fail(ErrorCode::ValidationError, "Gram matrix is not positive definite");
    }
    NormedLattice l;
    l.basis = std::move(basis);
    l.gram = std::move(gram);
    l.kind = NormKind::Euclidean;
    return l;
}

inline NormedLattice make_polytope_lattice(Mat basis, std::vector<Vec> vertices)
{
    const std::size_t r = basis.size();
    detail::check_rank(r);
    detail::check_square(basis, r, "basis");
    if (linalg::determinant(basis) == 0) fail(ErrorCode::ValidationError, "lattice basis is singular");
    std::set<Vec> vs(vertices.begin(), vertices.end());
    for (const auto& v : vertices) {
        if (v.size() != r) fail(ErrorCode::ValidationError, "vertex dimension mismatch");
        Vec neg = v;
        for (auto& x : neg) x = -x;
        if (!vs.count(neg)) fail(ErrorCode::ValidationError, "polytope vertex list is not closed under negation");
    }
    if (linalg::rank(Mat(vertices.begin(), vertices.end())) != r)
        fail(ErrorCode::ValidationError, "polytope is not full-dimensional");
    NormedLattice l;
    l.basis = std::move(basis);
    l.kind = NormKind::Polytope;
    l.vertices = {vs.begin(), vs.end()};
    l.facets = detail::facet_normals(l.vertices, r);
    return l;
}

/// Squared norm (Euclidean) or norm (polytope) of an ambient vector.
inline Rational norm_value(const NormedLattice& l, const Vec& y)
{
    if (l.kind == NormKind::Euclidean) return linalg::quad(l.gram, y);
    Rational best = 0;
    for (const auto& a : l.facets) best = std::max(best, linalg::dot(a, y));
    return best;
}

/// Dual lattice with the dual norm: inverse-transpose basis, inverse Gram or polar polytope.
inline NormedLattice dual_lattice(const NormedLattice& l)
{
    auto inv = linalg::inverse(l.basis);
    if (!inv) fail(ErrorCode::ValidationError, "lattice basis is singular");
    NormedLattice d;
    d.basis = linalg::transpose(*inv);
    d.kind = l.kind;
    if (l.kind == NormKind::Euclidean) {
        d.gram = *linalg::inverse(l.gram);
    } else {
        d.vertices = l.facets;
        d.facets = l.vertices;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Enumeration and reduction over an integer coefficient quadratic form.

namespace detail
{

/// q(z) = sum_i d_i (z_i + sum_{j>i} mu_ij z_j)^2.
struct Decomposition {
    Vec d;
    Mat mu;
};

inline Decomposition decompose(const Mat& q)
{
    const std::size_t n = q.size();
    Mat a = q;
    Decomposition out{Vec(n), Mat(n, Vec(n, Rational(0)))};
    for (std::size_t i = 0; i < n; ++i) {
        out.d[i] = a[i][i];
        if (out.d[i] <= 0) fail(ErrorCode::ValidationError, "quadratic form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) out.mu[i][j] = a[i][j] / a[i][i];
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = i + 1; k < n; ++k) a[j][k] -= out.mu[i][j] * a[i][k];
    }
    return out;
}

/// All nonzero integer z with z^T q z <= bound.
inline std::vector<IntVec> enumerate_short(const Mat& q, const Rational& bound)
{
    const std::size_t n = q.size();
    Decomposition dec = decompose(q);
    std::vector<IntVec> out;
    IntVec z(n);
    auto rec = [&](auto&& self, std::size_t level, const Rational& budget) -> void {
        // level counts down from n to 1; index i = level - 1
        const std::size_t i = level - 1;
        Rational c = 0;
        for (std::size_t j = i + 1; j < n; ++j) c -= dec.mu[i][j] * Rational(z[j]);
        Rational x = budget / dec.d[i];
        double span = std::sqrt(std::max(0.0, x.get_d()));
        Integer lo = floor_div(c - Rational(span) - 2);
        Integer hi = floor_div(c + Rational(span) + 2);
        for (Integer k = lo; k <= hi; ++k) {
            Rational diff = Rational(k) - c;
            Rational used = dec.d[i] * diff * diff;
            if (used > budget) continue;
            z[i] = k;
            if (i == 0) {
                bool nonzero = false;
                for (const auto& zz : z) nonzero = nonzero || zz != 0;
                if (nonzero) out.push_back(z);
            } else {
                self(self, level - 1, budget - used);
            }
        }
        z[i] = 0;
    };
    rec(rec, n, bound);
    return out;
}

inline Mat gram_of(const Mat& q, const IntMat& t)
{
    Mat tr = linalg::to_rational(t);
    return linalg::multiply(linalg::transpose(tr), linalg::multiply(q, tr));
}

/// Gram-Schmidt data (squared lengths, coefficients) for the columns of t under q.
inline std::pair<Vec, Mat> gram_schmidt(const Mat& g)
{
    const std::size_t n = g.size();
    Vec b(n);
    Mat mu(n, Vec(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            Rational s = g[i][j];
            for (std::size_t k = 0; k < j; ++k) s -= mu[j][k] * mu[i][k] * b[k];
            mu[i][j] = s / b[j];
        }
        Rational s = g[i][i];
        for (std::size_t k = 0; k < i; ++k) s -= mu[i][k] * mu[i][k] * b[k];
        b[i] = s;
    }
    return {b, mu};
}

inline void add_column(IntMat& t, std::size_t dst, std::size_t src, const Integer& f)
{
    for (auto& row : t) row[dst] += f * row[src];
}

inline void swap_columns(IntMat& t, std::size_t a, std::size_t b)
{
    for (auto& row : t) std::swap(row[a], row[b]);
}

inline IntMat int_identity(std::size_t n)
{
    IntMat m(n, IntVec(n, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Size reduction of column k against columns < k.
inline void size_reduce(const Mat& q, IntMat& t, std::size_t k)
{
    for (std::size_t j = k; j-- > 0;) {
        auto [b, mu] = gram_schmidt(gram_of(q, t));
        Integer f = linalg::round_nearest(mu[k][j]);
        if (f != 0) add_column(t, k, j, -f);
    }
}

/// Exact LLL (delta = 3/4); returns the unimodular coefficient transform.
inline IntMat lll(const Mat& q)
{
    const std::size_t n = q.size();
    IntMat t = int_identity(n);
    std::size_t k = 1;
    while (k < n) {
        size_reduce(q, t, k);
        auto [b, mu] = gram_schmidt(gram_of(q, t));
        if (b[k] >= (Rational(3, 4) - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
            ++k;
        } else {
            swap_columns(t, k, k - 1);
            k = std::max<std::size_t>(k - 1, 1);
        }
    }
    return t;
}

/// Unimodular matrix whose first column is the primitive vector z.
inline IntMat complete_to_unimodular(IntVec z)
{
    const std::size_t n = z.size();
    IntMat u = int_identity(n);
    // reduce z to e_1 by row operations W; track U = W^{-1} via inverse column ops
    while (true) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n; ++i)
            if (z[i] != 0 && (piv == n || abs(z[i]) < abs(z[piv]))) piv = i;
        if (piv == n) fail(ErrorCode::InvalidArgument, "zero vector cannot be completed to a basis");
        bool done = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == piv || z[i] == 0) continue;
            done = false;
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), z[i].get_mpz_t(), z[piv].get_mpz_t());
            z[i] -= f * z[piv]; // row_i -= f row_piv
            add_column(u, piv, i, f); // U <- U R^{-1}
        }
        if (done) {
            if (abs(z[piv]) != 1) fail(ErrorCode::InvalidArgument, "vector is not primitive");
            if (piv != 0) {
                std::swap(z[piv], z[0]);
                swap_columns(u, piv, 0);
            }
            if (z[0] < 0) {
                z[0] = -z[0];
                for (auto& row : u) row[0] = -row[0];
            }
            return u;
        }
    }
}

/// Korkine-Zolotarev reduction: each Gram-Schmidt vector is a shortest
/// vector of its projected lattice, and the basis is size-reduced.
inline IntMat kz_reduce(const Mat& q)
{
    const std::size_t n = q.size();
    IntMat t = lll(q);
    for (std::size_t i = 0; i < n; ++i) {
        Mat g = gram_of(q, t);
        const std::size_t m = n - i;
        // projected Gram on columns i..n-1: Schur complement against 0..i-1
        Mat p(m, Vec(m));
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) p[a][b] = g[i + a][i + b];
        if (i > 0) {
            Mat g11(i, Vec(i)), g12(i, Vec(m)), g21(m, Vec(i));
            for (std::size_t a = 0; a < i; ++a)
                for (std::size_t b = 0; b < i; ++b) g11[a][b] = g[a][b];
            for (std::size_t a = 0; a < i; ++a)
                for (std::size_t b = 0; b < m; ++b) g12[a][b] = g[a][i + b];
            g21 = linalg::transpose(g12);
            Mat corr = linalg::multiply(g21, linalg::multiply(*linalg::inverse(g11), g12));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) p[a][b] -= corr[a][b];
        }
        Rational bound = p[0][0];
        for (std::size_t a = 0; a < m; ++a) bound = std::min(bound, p[a][a]);
        auto cands = enumerate_short(p, bound);
        const IntVec* best = nullptr;
        Rational best_v;
        for (const auto& z : cands) {
            Vec zr;
            for (const auto& x : z) zr.push_back(Rational(x));
            Rational v = linalg::quad(p, zr);
            if (!best || v < best_v || (v == best_v && z > *best)) {
                best = &z;
                best_v = v;
            }
        }
        IntMat u = complete_to_unimodular(*best);
        // t[:, i:] = t[:, i:] u
        IntMat nt = t;
        for (std::size_t row = 0; row < n; ++row)
            for (std::size_t c = 0; c < m; ++c) {
                Integer s = 0;
                for (std::size_t k = 0; k < m; ++k) s += t[row][i + k] * u[k][c];
                nt[row][i + c] = s;
            }
        t = std::move(nt);
    }
    for (std::size_t k = 1; k < n; ++k) size_reduce(q, t, k);
    return t;
}

inline Integer int_determinant(const IntMat& m) { return linalg::determinant(linalg::to_rational(m)).get_num(); }

} // namespace detail

/// Coefficient quadratic form of a Euclidean lattice: B^T G B.
inline Mat coefficient_form(const NormedLattice& l)
{
    const Mat& g = l.kind == NormKind::Euclidean ? l.gram : linalg::identity(l.basis.size());
    return linalg::multiply(linalg::transpose(l.basis), linalg::multiply(g, l.basis));
}

struct MinimaResult {
    std::vector<Rational> lambda; // squared values for Euclidean norms
    std::vector<IntVec> vectors;  // coefficient vectors attaining them
    bool squared = true;
};

/// All successive minima by exhaustive enumeration inside a certified radius:
/// the largest norm of an LLL-reduced basis vector bounds lambda_r.
inline MinimaResult successive_minima(const NormedLattice& l)
{
    const std::size_t r = l.basis.size();
    detail::check_rank(r);
    Mat q = coefficient_form(l);
    IntMat t = detail::lll(q);
    Rational radius = 0;
    for (std::size_t j = 0; j < r; ++j) {
        IntVec z;
        for (std::size_t i = 0; i < r; ++i) z.push_back(t[i][j]);
        radius = std::max(radius, norm_value(l, l.vector_of(z)));
    }
    Rational euclid_bound = radius;
    if (l.kind == NormKind::Polytope) {
        // unit ball inside the Euclidean ball of radius rho
        Rational rho2 = 0;
        for (const auto& v : l.vertices) rho2 = std::max(rho2, linalg::dot(v, v));
        euclid_bound = rho2 * radius * radius;
    }
    auto cands = detail::enumerate_short(q, euclid_bound);
    std::vector<std::pair<Rational, IntVec>> scored;
    for (auto& z : cands) {
        Rational v = norm_value(l, l.vector_of(z));
        if (v <= radius) scored.push_back({v, std::move(z)});
    }
    std::sort(scored.begin(), scored.end());
    MinimaResult out;
    out.squared = l.kind == NormKind::Euclidean;
    Mat span;
    for (const auto& [v, z] : scored) {
        Mat trial = span;
        Vec zr;
        for (const auto& x : z) zr.push_back(Rational(x));
        trial.push_back(zr);
        if (linalg::rank(trial) > span.size()) {
            span = std::move(trial);
            out.lambda.push_back(v);
            out.vectors.push_back(z);
            if (span.size() == r) break;
        }
    }
    if (out.lambda.size() != r) fail(ErrorCode::BoundViolated, "enumeration radius failed to capture r independent vectors");
    return out;
}

inline Rational successive_minimum(const NormedLattice& l, int j)
{
    if (j < 1 || j > l.rank()) fail(ErrorCode::InvalidArgument, "successive minimum index out of range", "1 <= j <= r");
    return successive_minima(l).lambda[static_cast<std::size_t>(j - 1)];
}

struct TransferenceResult {
    Rational lambda1_sq;      // lambda_1(L)^2
    Rational dual_lambda_r_sq; // lambda_r(L*)^2
    Rational product_sq;
    bool holds = false;       // product <= r
};

inline TransferenceResult transference_check(const NormedLattice& l)
{
    if (l.kind != NormKind::Euclidean) fail(ErrorCode::InvalidArgument, "transference check needs a Euclidean norm");
    const int r = l.rank();
    TransferenceResult t;
    t.lambda1_sq = successive_minima(l).lambda.front();
    t.dual_lambda_r_sq = successive_minima(dual_lattice(l)).lambda.back();
    t.product_sq = t.lambda1_sq * t.dual_lambda_r_sq;
    t.holds = t.product_sq <= Rational(r * r);
    if (!t.holds) fail(ErrorCode::BoundViolated, "lambda_1 * lambda_r(dual) exceeds the rank");
    return t;
}

/// Inscribed ellipsoid {y : y^T M y <= 1} of a symmetric polytope with the
/// sandwich ratio rho2 = max over vertices of v^T M v (ideally <= r).
struct Euclideanization {
    Mat metric;
    Rational rho2;
};

inline Euclideanization inscribed_ellipsoid(const NormedLattice& l)
{
    const std::size_t r = l.basis.size();
    const auto& pts = l.facets; // polar vertices; enclosing ellipsoid of these is polar to the inscribed one
    const std::size_t m = pts.size();
    std::vector<std::vector<double>> a(m, std::vector<double>(r));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < r; ++i) a[j][i] = pts[j][i].get_d();
    std::vector<double> u(m, 1.0 / static_cast<double>(m));
    auto weighted = [&](const std::vector<double>& w) {
        Mat x(r, Vec(r, Rational(0)));
        for (std::size_t j = 0; j < m; ++j) {
            if (w[j] == 0) continue;
            Rational wj(w[j]);
            for (std::size_t p = 0; p < r; ++p)
                for (std::size_t q = 0; q < r; ++q) x[p][q] += wj * pts[j][p] * pts[j][q];
        }
        return x;
    };
    // Khachiyan iterations for the minimum-volume centred enclosing ellipsoid
    for (int it = 0; it < 20000; ++it) {
        std::vector<std::vector<double>> x(r, std::vector<double>(r, 0.0));
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t p = 0; p < r; ++p)
                for (std::size_t q = 0; q < r; ++q) x[p][q] += u[j] * a[j][p] * a[j][q];
        // invert x in double
        std::vector<std::vector<double>> inv(r, std::vector<double>(r, 0.0));
        for (std::size_t i = 0; i < r; ++i) inv[i][i] = 1.0;
        for (std::size_t c = 0; c < r; ++c) {
            std::size_t p = c;
            for (std::size_t k = c + 1; k < r; ++k)
                if (std::fabs(x[k][c]) > std::fabs(x[p][c])) p = k;
            std::swap(x[p], x[c]);
            std::swap(inv[p], inv[c]);
            double piv = x[c][c];
            for (std::size_t k = 0; k < r; ++k) {
                x[c][k] /= piv;
                inv[c][k] /= piv;
            }
            for (std::size_t k = 0; k < r; ++k) {
                if (k == c) continue;
                double f = x[k][c];
                for (std::size_t q = 0; q < r; ++q) {
                    x[k][q] -= f * x[c][q];
                    inv[k][q] -= f * inv[c][q];
                }
            }
        }
        std::size_t jmax = 0;
        double mmax = -1;
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0;
            for (std::size_t p = 0; p < r; ++p)
                for (std::size_t q = 0; q < r; ++q) s += a[j][p] * inv[p][q] * a[j][q];
            if (s > mmax) {
                mmax = s;
                jmax = j;
            }
        }
        const double rr = static_cast<double>(r);
        if (mmax <= rr * (1 + 1e-12)) break;
        double step = (mmax - rr) / (rr * (mmax - 1));
        for (auto& w : u) w *= (1 - step);
        u[jmax] += step;
    }
    Mat x = weighted(u);
    Mat xinv = *linalg::inverse(x);
    Rational mval = 0;
    for (const auto& p : pts) mval = std::max(mval, linalg::quad(xinv, p));
    // all polar vertices lie in {z : z^T (xinv / mval) z <= 1}; its polar is {y : y^T (mval x) y <= 1}
    Euclideanization e;
    e.metric = x;
    for (auto& row : e.metric)
        for (auto& v : row) v *= mval;
    e.rho2 = 0;
    for (const auto& v : l.vertices) e.rho2 = std::max(e.rho2, linalg::quad(e.metric, v));
    return e;
}

struct ReducedDualBasis {
    std::vector<Vec> u;              // dual vectors in ambient dual coordinates
    std::vector<Rational> dual_norm; // squared for Euclidean norms
    Rational lambda1;                // lambda_1(L), squared for Euclidean norms
    bool squared = true;
    IntMat change;                   // coefficients on the canonical dual basis
    Rational achieved;               // max_i ||u_i||_* lambda_1 (squared when Euclidean)
    Rational bound;                  // r^2 (r^4 when squared)
    std::optional<Rational> sandwich_rho2;
};

inline ReducedDualBasis reduced_dual_basis(const NormedLattice& l)
{
    const std::size_t r = l.basis.size();
    detail::check_rank(r);
    NormedLattice dual = dual_lattice(l);
    ReducedDualBasis out;
    out.squared = l.kind == NormKind::Euclidean;
    Mat dual_form;
    if (l.kind == NormKind::Euclidean) {
        dual_form = coefficient_form(dual);
    } else {
        Euclideanization e = inscribed_ellipsoid(l);
        out.sandwich_rho2 = e.rho2;
        Mat dual_metric = *linalg::inverse(e.metric);
        dual_form = linalg::multiply(linalg::transpose(dual.basis), linalg::multiply(dual_metric, dual.basis));
    }
    out.change = detail::kz_reduce(dual_form);
    const Integer det = detail::int_determinant(out.change);
    if (det != 1 && det != -1) fail(ErrorCode::BoundViolated, "reduced dual basis is not unimodular");
    out.lambda1 = successive_minima(l).lambda.front();
    out.bound = out.squared ? Rational(static_cast<long>(r * r * r * r)) : Rational(static_cast<long>(r * r));
    out.achieved = 0;
    for (std::size_t j = 0; j < r; ++j) {
        IntVec z;
        for (std::size_t i = 0; i < r; ++i) z.push_back(out.change[i][j]);
        Vec v = dual.vector_of(z);
        Rational nv = norm_value(dual, v);
        out.u.push_back(v);
        out.dual_norm.push_back(nv);
        out.achieved = std::max(out.achieved, Rational(nv * out.lambda1));
    }
    if (out.achieved > out.bound)
        fail(ErrorCode::BoundViolated, "dual basis vector exceeds r^2 / lambda_1");
    return out;
}

} // namespace sysbound
