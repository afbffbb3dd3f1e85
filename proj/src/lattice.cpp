#include "baker/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace baker {
namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 cross(const Vec2& o, const Vec2& a, const Vec2& b) {
    i128 v = static_cast<i128>(a[0] - o[0]) * (b[1] - o[1]) -
             static_cast<i128>(a[1] - o[1]) * (b[0] - o[0]);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

i64 gcd_abs(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// positive remainder representative of a mod m, m > 0
i64 pos_mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// solve x*a = 1 (mod m), gcd(a, m) = 1, 0 <= x < m
i64 inv_mod(i64 a, i64 m) {
    i64 t0 = 0, t1 = 1, r0 = m, r1 = pos_mod(a, m);
    while (r1 != 0) {
        i64 q = r0 / r1;
        std::swap(t0 -= q * t1, t1);
        std::swap(r0 -= q * r1, r1);
    }
    return pos_mod(t0, m);
}

}  // namespace

LatticePolygon newton_polygon(std::vector<Vec2> support) {
    if (support.empty()) throw PreconditionError("empty support has no Newton polygon");
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    LatticePolygon P;
    if (support.size() == 1) {
        P.vertices = support;
        P.dim = 0;
        return P;
    }

    // monotone chain; sorted order doubles as the lexicographic start
    std::vector<Vec2> hull;
    auto build = [&](auto begin, auto end) {
        std::size_t base = hull.size();
        for (auto it = begin; it != end; ++it) {
            while (hull.size() >= base + 2 &&
                   cross(hull[hull.size() - 2], hull[hull.size() - 1], *it) <= 0)
                hull.pop_back();
            hull.push_back(*it);
        }
    };
    build(support.begin(), support.end());
    hull.pop_back();
    build(support.rbegin(), support.rend());
    hull.pop_back();

    if (hull.size() == 2 || hull.empty()) {
        // collinear support: keep the two extreme points
        P.vertices = {support.front(), support.back()};
        P.dim = 1;
    } else {
        P.vertices = hull;
        P.dim = 2;
    }

    auto make_edge = [](const Vec2& a, const Vec2& b) {
        Edge e;
        e.a = a;
        e.b = b;
        i64 dx = b[0] - a[0], dy = b[1] - a[1];
        i64 g = gcd_abs(dx, dy);
        Vec2 step{dx / g, dy / g};
        e.normal = {-step[1], step[0]};  // interior lies left of a->b
        e.lattice_length = g;
        for (i64 r = 0; r <= g; ++r) e.lattice_points.push_back({a[0] + r * step[0], a[1] + r * step[1]});
        return e;
    };

    if (P.dim == 1) {
        P.edges.push_back(make_edge(P.vertices[0], P.vertices[1]));
        P.edges.push_back(make_edge(P.vertices[1], P.vertices[0]));
    } else {
        for (std::size_t i = 0; i < P.vertices.size(); ++i)
            P.edges.push_back(make_edge(P.vertices[i], P.vertices[(i + 1) % P.vertices.size()]));
    }
    return P;
}

std::int64_t polygon_area2(const LatticePolygon& P) {
    if (P.dim < 2) return 0;
    i128 s = 0;
    for (std::size_t i = 0; i < P.vertices.size(); ++i) {
        const Vec2& a = P.vertices[i];
        const Vec2& b = P.vertices[(i + 1) % P.vertices.size()];
        s += static_cast<i128>(a[0]) * b[1] - static_cast<i128>(a[1]) * b[0];
    }
    return static_cast<i64>(s);
}

std::int64_t boundary_lattice_count(const LatticePolygon& P) {
    if (P.dim == 0) return 1;
    if (P.dim == 1) return P.edges[0].lattice_length + 1;
    i64 total = 0;
    for (const Edge& e : P.edges) total += e.lattice_length;
    return total;
}

std::int64_t interior_lattice_count(const LatticePolygon& P) {
    if (P.dim < 2) return 0;
    i64 x0 = P.vertices[0][0], x1 = x0, y0 = P.vertices[0][1], y1 = y0;
    for (const Vec2& v : P.vertices) {
        x0 = std::min(x0, v[0]);
        x1 = std::max(x1, v[0]);
        y0 = std::min(y0, v[1]);
        y1 = std::max(y1, v[1]);
    }
    i64 count = 0;
    for (i64 x = x0 + 1; x < x1; ++x)
        for (i64 y = y0 + 1; y < y1; ++y) {
            bool inside = true;
            for (std::size_t i = 0; i < P.vertices.size() && inside; ++i)
                inside = cross(P.vertices[i], P.vertices[(i + 1) % P.vertices.size()], {x, y}) > 0;
            if (inside) ++count;
        }
    return count;
}

Vec2 delta_of_beta(const Vec2& beta) {
    if (gcd_abs(beta[0], beta[1]) != 1)
        throw PreconditionError("beta must be a primitive vector");
    if (beta[0] == 0) return {beta[1], 0};  // beta = (0, ±1)
    i64 m = beta[0] < 0 ? -beta[0] : beta[0];
    i64 d1 = inv_mod(beta[1], m);  // smallest nonnegative with d1*b2 = 1 mod |b1|
    i64 d2 = (d1 * beta[1] - 1) / beta[0];
    return {d1, d2};
}

Vec2 delta_of_beta(const Vec2& beta, const DeltaOverrides& ov) {
    auto it = ov.table.find(beta);
    if (it == ov.table.end()) return delta_of_beta(beta);
    const Vec2& d = it->second;
    if (d[0] * beta[1] - d[1] * beta[0] != 1)
        throw PreconditionError("delta override does not complete beta unimodularly");
    return d;
}

MatZ mat_identity(std::size_t k) {
    MatZ A;
    A.rows.assign(k, std::vector<i64>(k, 0));
    for (std::size_t i = 0; i < k; ++i) A.rows[i][i] = 1;
    return A;
}

MatZ mat_mul(const MatZ& A, const MatZ& B) {
    std::size_t n = A.size(), m = B.rows.empty() ? 0 : B.rows[0].size(), k = B.size();
    MatZ C;
    C.rows.assign(n, std::vector<i64>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (A.rows[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                C.rows[i][j] += A.rows[i][l] * B.rows[l][j];
        }
    return C;
}

std::int64_t mat_det(const MatZ& A) {
    // fraction-free elimination
    std::size_t n = A.size();
    std::vector<std::vector<i128>> M(n, std::vector<i128>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = A.rows[i][j];
    i128 prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && M[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(M[r], M[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
        prev = M[k][k];
    }
    return static_cast<i64>(sign * M[n - 1][n - 1]);
}

MatZ mat_inverse_unimodular(const MatZ& A) {
    i64 det = mat_det(A);
    if (det != 1 && det != -1)
        throw PreconditionError("matrix is not unimodular");
    std::size_t n = A.size();
    MatZ inv;
    inv.rows.assign(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MatZ minor;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::vector<i64> row;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) row.push_back(A.rows[r][c]);
                minor.rows.push_back(std::move(row));
            }
            i64 cof = n == 1 ? 1 : mat_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            inv.rows[j][i] = cof * det;  // det = 1/det here
        }
    return inv;
}

std::vector<std::int64_t> mat_apply(const MatZ& A, const std::vector<std::int64_t>& v) {
    std::vector<i64> out(A.size(), 0);
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += A.rows[i][j] * v[j];
    return out;
}

MatZ matrix_attached(const std::vector<std::int64_t>& v, const DeltaOverrides& ov) {
    std::size_t n = v.size();
    if (n < 2) throw PreconditionError("matrix completion needs dimension at least 2");
    i64 g_all = 0;
    for (i64 x : v) g_all = gcd_abs(g_all, x);
    if (g_all != 1) throw PreconditionError("vector must be primitive");

    if (n == 2) {
        Vec2 beta{v[0], v[1]};
        Vec2 d = delta_of_beta(beta, ov);
        MatZ M;
        M.rows = {{d[0], d[1]}, {v[0], v[1]}};
        return M;
    }

    std::vector<i64> u(v.begin(), v.end() - 1);
    i64 g = 0;
    for (i64 x : u) g = gcd_abs(g, x);
    MatZ M;
    M.rows.assign(n, std::vector<i64>(n, 0));
    if (g == 0) {
        // v = (0,...,0,±1)
        for (std::size_t i = 0; i + 2 < n; ++i) M.rows[i][i] = 1;
        M.rows[n - 2][n - 2] = v[n - 1];  // keeps det = +1 for both signs
        M.rows[n - 1][n - 1] = v[n - 1];
        return M;
    }
    std::vector<i64> w(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] / g;
    MatZ Mp = matrix_attached(w, ov);
    // rows: first n-2 rows of Mp zero-extended; (b*w, a); v.
    // det = b*v_n - a*g = 1 with 0 <= b < g (and b = 0, a = -1 when g = 1)
    i64 vn = v[n - 1];
    i64 b = g == 1 ? 0 : inv_mod(vn, g);
    i64 a = (b * vn - 1) / g;
    for (std::size_t i = 0; i + 2 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) M.rows[i][j] = Mp.rows[i][j];
    for (std::size_t j = 0; j + 1 < n; ++j) M.rows[n - 2][j] = b * w[j];
    M.rows[n - 2][n - 1] = a;
    for (std::size_t j = 0; j < n; ++j) M.rows[n - 1][j] = v[j];
    return M;
}

MatZ matrix_attached(const std::vector<std::int64_t>& v) {
    return matrix_attached(v, DeltaOverrides{});
}

MatZ compose_block(const MatZ& B, const MatZ& M) {
    if (B.size() != 2) throw PreconditionError("block must be 2x2");
    std::size_t k = M.size();
    if (k < 2) throw PreconditionError("matrix must be at least 2x2");
    MatZ big = mat_identity(k);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) big.rows[k - 2 + i][k - 2 + j] = B.rows[i][j];
    return mat_mul(big, M);
}

}  // namespace baker
