#include "baker/resolution.hpp"

#include <algorithm>
#include <numeric>

namespace baker {
namespace {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// ---- bivariate polynomials, y-major with univariate-in-x entries ----

using Biv = std::vector<UniPoly>;

void biv_trim(Biv& a) {
    while (!a.empty() && up_is_zero(a.back())) a.pop_back();
}

int biv_degy(const Biv& a) { return static_cast<int>(a.size()) - 1; }

bool biv_is_zero(const Biv& a) { return a.empty(); }

Biv biv_of(const FieldTower& T, const MultiLaurent& f) {
    Biv a = ml_coeffs_in(T, f, 1);
    biv_trim(a);
    return a;
}

bool biv_is_unit(const Biv& a) {
    return a.size() == 1 && up_degree(a[0]) == 0;
}

Biv biv_scale(const FieldTower& T, const Biv& a, const UniPoly& u) {
    Biv r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(up_mul(T, c, u));
    biv_trim(r);
    return r;
}

Biv biv_sub(const FieldTower& T, const Biv& a, const Biv& b) {
    Biv r = a;
    if (b.size() > r.size()) r.resize(b.size(), up_zero(r.empty() ? 1 : r[0].level));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = up_sub(T, r[i], b[i]);
    biv_trim(r);
    return r;
}

UniPoly biv_content(const FieldTower& T, const Biv& a) {
    UniPoly g = up_zero();
    for (const auto& c : a) g = up_gcd(T, g, c);
    return g;
}

Biv biv_primpart(const FieldTower& T, const Biv& a) {
    UniPoly g = biv_content(T, a);
    if (up_degree(g) <= 0) return a;  // the gcd is monic, so a constant content is 1
    Biv r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(up_quo(T, c, g));
    return r;
}

// pseudo-remainder of a by b in y
Biv biv_prem(const FieldTower& T, Biv a, const Biv& b) {
    int db = biv_degy(b);
    while (biv_degy(a) >= db) {
        int da = biv_degy(a);
        Biv r = biv_scale(T, a, b.back());
        Biv s(static_cast<std::size_t>(da - db), up_zero(a[0].level));
        for (const auto& c : b) s.push_back(up_mul(T, c, a.back()));
        a = biv_sub(T, r, s);
        if (biv_degy(a) >= da) a.resize(static_cast<std::size_t>(da));  // defensive
        biv_trim(a);
        if (biv_is_zero(a)) break;
    }
    return a;
}

// full gcd in k[x][y]: content gcd times the primitive-sequence gcd
Biv biv_gcd(const FieldTower& T, Biv a, Biv b) {
    biv_trim(a);
    biv_trim(b);
    if (biv_is_zero(a)) return b;
    if (biv_is_zero(b)) return a;
    UniPoly cg = up_gcd(T, biv_content(T, a), biv_content(T, b));
    Biv u = biv_primpart(T, a), v = biv_primpart(T, b);
    if (biv_degy(u) < biv_degy(v)) std::swap(u, v);
    while (!biv_is_zero(v) && biv_degy(v) >= 1) {
        Biv r = biv_prem(T, u, v);
        u = std::move(v);
        v = biv_primpart(T, r);
    }
    Biv g = biv_degy(v) == 0 ? Biv{up_from_ints(T, {1})} : biv_primpart(T, u);
    // leading normalization keeps the result reproducible
    g = biv_scale(T, g, up_make(T, g.back().level, {T.inv(up_lead(T, g.back()))}));
    return biv_scale(T, g, cg);
}

// exact division, valid whenever b divides a
Biv biv_exact_div(const FieldTower& T, Biv a, const Biv& b) {
    int db = biv_degy(b);
    Biv q(a.size(), up_zero(a.empty() ? 1 : a[0].level));
    while (!biv_is_zero(a) && biv_degy(a) >= db) {
        int k = biv_degy(a) - db;
        UniPoly t = up_quo(T, a.back(), b.back());
        q[static_cast<std::size_t>(k)] = t;
        Biv s(static_cast<std::size_t>(k), up_zero(a[0].level));
        for (const auto& c : b) s.push_back(up_mul(T, c, t));
        a = biv_sub(T, a, s);
    }
    biv_trim(q);
    return q;
}

// resultant with respect to y via fraction-free elimination of the Sylvester matrix
UniPoly biv_resultant_y(const FieldTower& T, const Biv& a, const Biv& b) {
    int da = biv_degy(a), db = biv_degy(b);
    if (da < 0 || db < 0) return up_zero();
    if (da == 0) return up_pow(T, a[0], static_cast<unsigned>(db));
    if (db == 0) return up_pow(T, b[0], static_cast<unsigned>(da));
    std::size_t n = static_cast<std::size_t>(da + db);
    unsigned lv = std::lcm(a[0].level, b[0].level);
    std::vector<std::vector<UniPoly>> M(n, std::vector<UniPoly>(n, up_zero(lv)));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) M[i][i + j] = a[static_cast<std::size_t>(da - j)];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) M[db + i][i + j] = b[static_cast<std::size_t>(db - j)];

    UniPoly prev = up_from_ints(T, {1});
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (up_is_zero(M[k][k])) {
            std::size_t r = k + 1;
            while (r < n && up_is_zero(M[r][k])) ++r;
            if (r == n) return up_zero();
            std::swap(M[r], M[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                UniPoly t = up_sub(T, up_mul(T, M[i][j], M[k][k]), up_mul(T, M[i][k], M[k][j]));
                M[i][j] = up_quo(T, t, prev);
            }
        prev = M[k][k];
    }
    return negate ? up_neg(T, M[n - 1][n - 1]) : M[n - 1][n - 1];
}

// ---- arithmetic in k[x]/(m) for irreducible m ----

UniPoly q_inv(const FieldTower& T, const UniPoly& a, const UniPoly& m) {
    UniPoly r0 = m, r1 = up_rem(T, a, m);
    UniPoly t0 = up_zero(m.level), t1 = up_from_ints(T, {1});
    while (!up_is_zero(r1)) {
        UniPoly q, r;
        up_divrem(T, r0, r1, q, r);
        UniPoly t = up_sub(T, t0, up_mul(T, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (up_degree(r0) != 0) throw PreconditionError("inverse modulo a reducible polynomial");
    return up_rem(T, up_scale(T, t0, T.inv(up_lead(T, r0))), m);
}

using QPoly = std::vector<UniPoly>;  // y-polynomial with residues mod m as coefficients

QPoly q_reduce(const FieldTower& T, const Biv& a, const UniPoly& m) {
    QPoly r;
    r.reserve(a.size());
    for (const auto& c : a) r.push_back(up_rem(T, c, m));
    while (!r.empty() && up_is_zero(r.back())) r.pop_back();
    return r;
}

QPoly qp_rem(const FieldTower& T, QPoly a, const QPoly& b, const UniPoly& m) {
    UniPoly linv = q_inv(T, b.back(), m);
    while (a.size() >= b.size()) {
        UniPoly f = up_rem(T, up_mul(T, a.back(), linv), m);
        std::size_t off = a.size() - b.size();
        for (std::size_t i = 0; i + 1 < b.size(); ++i)
            a[off + i] = up_rem(T, up_sub(T, a[off + i], up_mul(T, f, b[i])), m);
        a.pop_back();
        while (!a.empty() && up_is_zero(a.back())) a.pop_back();
    }
    return a;
}

QPoly qp_gcd(const FieldTower& T, QPoly a, QPoly b, const UniPoly& m) {
    while (!b.empty()) {
        QPoly r = qp_rem(T, a, b, m);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        UniPoly linv = q_inv(T, a.back(), m);
        for (auto& c : a) c = up_rem(T, up_mul(T, c, linv), m);
    }
    return a;
}

// ---- witness search ----

FqElem elem_at(const FieldTower& T, unsigned level, u64 idx) {
    std::size_t len = static_cast<std::size_t>(T.base_degree()) * level;
    std::vector<u64> coords(len, 0);
    for (std::size_t i = len; i-- > 0;) {
        coords[i] = idx % T.p();
        idx /= T.p();
    }
    return T.make(level, coords);
}

// smallest monic irreducible, not X, keeping every listed polynomial nonzero mod m
UniPoly find_modulus(const FieldTower& T, unsigned level, const std::vector<UniPoly>& avoid) {
    u64 nelem;
    try {
        nelem = T.level_size(level);
    } catch (const GuardError&) {
        nelem = UINT64_MAX;
    }
    for (unsigned d = 1; d <= 64; ++d) {
        std::vector<u64> dig(d, 0);
        for (;;) {
            std::vector<FqElem> coeffs;
            coeffs.reserve(d + 1);
            for (unsigned i = 0; i < d; ++i) coeffs.push_back(elem_at(T, level, dig[d - 1 - i]));
            coeffs.push_back(T.one(level));
            UniPoly m = up_make(T, level, std::move(coeffs));
            bool ok = !(d == 1 && T.is_zero(up_coeff(T, m, 0))) && is_irreducible(T, m);
            if (ok)
                for (const auto& u : avoid)
                    if (up_is_zero(up_rem(T, u, m))) {
                        ok = false;
                        break;
                    }
            if (ok) return m;
            std::size_t pos = d;
            while (pos-- > 0) {
                if (++dig[pos] < nelem) break;
                dig[pos] = 0;
                if (pos == 0) goto next_degree;
            }
        }
    next_degree:;
    }
    throw GuardError("no admissible modulus found");
}

// strip monomial factors x^s y^t; zeros in the torus are unaffected
void biv_strip_monomials(const FieldTower& T, Biv& a) {
    biv_trim(a);
    if (biv_is_zero(a)) return;
    while (up_is_zero(a.front())) a.erase(a.begin());
    std::size_t t = SIZE_MAX;
    for (const auto& c : a) {
        if (up_is_zero(c)) continue;
        std::size_t z = 0;
        while (z < c.c.size() && T.is_zero(c.c[z])) ++z;
        t = std::min(t, z);
    }
    if (t == 0 || t == SIZE_MAX) return;
    for (auto& c : a) {
        if (up_is_zero(c)) continue;
        c.c.erase(c.c.begin(), c.c.begin() + static_cast<std::ptrdiff_t>(t));
    }
}

std::optional<SingularWitness> witness_on_curve(const FieldTower& T, unsigned level, Biv P,
                                                const std::string& detail) {
    biv_strip_monomials(T, P);
    if (biv_is_unit(P)) return std::nullopt;
    if (biv_degy(P) == 0) {
        auto fs = factor(T, P[0]);
        for (const auto& [m, mult] : fs)
            if (!(up_degree(m) == 1 && T.is_zero(up_coeff(T, m, 0))))
                return SingularWitness{m, {}, true, detail};
        return std::nullopt;
    }
    UniPoly m = find_modulus(T, level, {P[0], P.back()});
    QPoly locus = q_reduce(T, P, m);
    return SingularWitness{m, locus, false, detail};
}

std::optional<SingularWitness> find_common_zero(const FieldTower& T, unsigned level,
                                                std::vector<Biv> polys) {
    for (auto& P : polys) {
        biv_strip_monomials(T, P);
        if (biv_is_unit(P)) return std::nullopt;
        if (biv_is_zero(P)) throw PreconditionError("zero polynomial in common-zero search");
    }
    if (polys.size() == 1) return witness_on_curve(T, level, polys[0], "locus of common vanishing");

    // shared factor: split off its zero set, then recurse on the quotients
    Biv H = biv_gcd(T, polys[0], polys[1]);
    if (!biv_is_unit(H)) {
        std::vector<Biv> with_h{H};
        for (std::size_t i = 2; i < polys.size(); ++i) with_h.push_back(polys[i]);
        if (auto w = find_common_zero(T, level, with_h)) return w;
        Biv q0 = biv_exact_div(T, polys[0], H);
        Biv q1 = biv_exact_div(T, polys[1], H);
        std::vector<Biv> rest{q0, q1};
        for (std::size_t i = 2; i < polys.size(); ++i) rest.push_back(polys[i]);
        for (auto& P : rest) {
            biv_strip_monomials(T, P);
            if (biv_is_unit(P)) return std::nullopt;
        }
        return find_common_zero(T, level, rest);
    }

    // coprime leading pair: x-candidates come from elimination
    UniPoly cand;
    if (biv_degy(polys[0]) == 0)
        cand = polys[0][0];
    else if (biv_degy(polys[1]) == 0)
        cand = polys[1][0];
    else
        cand = biv_resultant_y(T, polys[0], polys[1]);
    if (up_is_zero(cand)) throw PreconditionError("vanishing resultant for a coprime pair");
    if (up_degree(cand) == 0) return std::nullopt;

    for (const auto& [m, mult] : factor(T, cand)) {
        if (up_degree(m) == 1 && T.is_zero(up_coeff(T, m, 0))) continue;  // x = 0 is off the torus
        bool all_zero = true;
        QPoly g;
        for (const auto& P : polys) {
            QPoly r = q_reduce(T, P, m);
            if (r.empty()) continue;
            g = all_zero ? r : qp_gcd(T, g, r, m);
            all_zero = false;
            if (g.empty()) break;  // residues share no factor
        }
        if (all_zero) return SingularWitness{m, {}, true, "vertical line of common vanishing"};
        if (g.empty()) continue;
        std::size_t shift = 0;
        while (shift < g.size() && up_is_zero(g[shift])) ++shift;
        g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(shift));
        if (g.size() >= 2) return SingularWitness{m, g, false, "isolated common zero"};
    }
    return std::nullopt;
}

// ---- chart helpers ----

UniPoly eval_at_x(const FieldTower& T, const MultiLaurent& f, const FqElem& a) {
    auto rows = ml_coeffs_in(T, f, 1);
    std::vector<FqElem> coeffs;
    coeffs.reserve(rows.size());
    unsigned lv = std::lcm(f.level, a.level);
    for (const auto& r : rows) coeffs.push_back(up_eval(T, up_lift(T, r, lv), T.embed(a, lv)));
    return up_make(T, lv, std::move(coeffs));
}

i64 max_y_exponent(const MultiLaurent& f) {
    i64 d = 0;
    for (const auto& [e, c] : f.terms) d = std::max(d, e[1]);
    return d;
}

i64 trailing_zero_count(const FieldTower& T, const UniPoly& f) {
    i64 d = 0;
    while (d <= up_degree(f) && T.is_zero(up_coeff(T, f, static_cast<unsigned>(d)))) ++d;
    return d;
}

MatZ two_rows(const Vec2& delta, const Vec2& beta) {
    MatZ M;
    M.rows = {{delta[0], delta[1]}, {beta[0], beta[1]}};
    return M;
}

NodeStatus classify(const FieldTower& T, const MultiLaurent& working, const RootReport& roots) {
    bool any_multiple = false, any_singular = false;
    for (const auto& orb : roots.orbits) {
        if (orb.multiplicity < 2) continue;
        any_multiple = true;
        if (!chart_point_regular(T, working, orb.representative)) any_singular = true;
    }
    if (!any_multiple) return NodeStatus::OuterRegular;
    return any_singular ? NodeStatus::SingularSingularPoint : NodeStatus::SingularRegularPoint;
}

ChartNode make_chart(const FieldTower& T, int id, int parent, unsigned level, const Vec2& beta,
                     const Vec2& delta, MultiLaurent working) {
    ChartNode n;
    n.id = id;
    n.parent = parent;
    n.level = level;
    n.beta = beta;
    n.delta = delta;
    n.working = std::move(working);
    n.restrict_x = ml_eval_y0(T, n.working);
    n.zero_mult = trailing_zero_count(T, n.restrict_x);
    n.roots = roots_in_closure(T, n.restrict_x, true);
    n.status = classify(T, n.working, n.roots);
    return n;
}

// attach the full-chart matrix and ideal generators to a child
void attach_full_data(const FieldTower& T, const ChartNode& parent, ChartNode& child,
                      const FqElem& root, std::int64_t corr) {
    int m = static_cast<int>(parent.matrix.size());  // parent coordinate count
    MultiLaurent G = ml_zero(1, m);
    std::vector<i64> e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(m - 2)] = 1;
    ml_add_term(T, G, e, T.one());
    ml_add_term(T, G, std::vector<i64>(static_cast<std::size_t>(m), 0), T.neg(root));
    if (corr > 0) {
        std::vector<i64> ec(static_cast<std::size_t>(m), 0);
        ec[static_cast<std::size_t>(m - 1)] = corr;
        ml_add_term(T, G, ec, T.one());
    }

    MultiLaurent back = ml_monomial_map(T, G, mat_inverse_unimodular(parent.matrix));
    std::vector<i64> c(static_cast<std::size_t>(m), 0);
    bool first = true;
    for (const auto& [ex, cf] : back.terms) {
        for (int i = 0; i < m; ++i)
            c[static_cast<std::size_t>(i)] =
                first ? ex[static_cast<std::size_t>(i)]
                      : std::min(c[static_cast<std::size_t>(i)], ex[static_cast<std::size_t>(i)]);
        first = false;
    }
    for (auto& v : c) v = -v;
    std::vector<i64> nvec = mat_apply(parent.matrix, c);

    MatZ alpha = mat_identity(static_cast<std::size_t>(m + 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            alpha.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                parent.matrix.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int i = 0; i < m; ++i)
        alpha.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)] =
            nvec[static_cast<std::size_t>(i)];
    child.matrix = compose_block(two_rows(child.delta, child.beta), alpha);

    // parent generators pick up Y -> X_new^{d2} Y^{b2}; the new one cuts X_new^{d1} Y^{b1} = G
    MatZ R;
    R.rows.assign(static_cast<std::size_t>(m + 1), std::vector<i64>(static_cast<std::size_t>(m), 0));
    for (int i = 0; i + 1 < m; ++i) R.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    R.rows[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)] = child.delta[1];
    R.rows[static_cast<std::size_t>(m)][static_cast<std::size_t>(m - 1)] = child.beta[1];

    for (const auto& g : parent.generators) {
        MultiLaurent mapped = ml_monomial_map(T, g, R);
        ml_clear_denominators(mapped);
        child.generators.push_back(std::move(mapped));
    }
    MultiLaurent fresh = ml_zero(G.level, m + 1);
    std::vector<i64> mono(static_cast<std::size_t>(m + 1), 0);
    mono[static_cast<std::size_t>(m - 1)] = child.delta[0];
    mono[static_cast<std::size_t>(m)] = child.beta[0];
    ml_add_term(T, fresh, mono, T.one(G.level));
    fresh = ml_sub(T, fresh, ml_monomial_map(T, G, R));
    ml_clear_denominators(fresh);
    child.generators.push_back(std::move(fresh));
}

}  // namespace

std::string status_token(NodeStatus s) {
    switch (s) {
        case NodeStatus::OuterRegular: return "outer-regular";
        case NodeStatus::SingularRegularPoint: return "outer-singular-regular-point";
        case NodeStatus::SingularSingularPoint: return "outer-singular-singular-point";
    }
    return "unknown";
}

bool chart_point_regular(const FieldTower& T, const MultiLaurent& working, const FqElem& a) {
    UniPoly rx = ml_eval_y0(T, working);
    unsigned lv = std::lcm(rx.level, a.level);
    FqElem dx = up_eval(T, up_lift(T, up_derivative(T, rx), lv), T.embed(a, lv));
    auto rows = ml_coeffs_in(T, working, 1);
    FqElem dy = T.zero(lv);
    if (rows.size() > 1) dy = up_eval(T, up_lift(T, rows[1], lv), T.embed(a, lv));
    return !(T.is_zero(dx) && T.is_zero(dy));
}

ExpansionStep expansion_step(const FieldTower& T, const MultiLaurent& working, const FqElem& root) {
    ExpansionStep s;
    s.root = root;
    if (up_is_zero(eval_at_x(T, working, root))) s.correction = max_y_exponent(working) + 1;
    s.shifted = ml_shift_x(T, working, root, s.correction);
    s.polygon = newton_polygon(ml_support2(s.shifted));
    for (const Edge& e : s.polygon.edges)
        if (e.normal[0] >= 1 && e.normal[1] >= 1) s.child_edges.push_back(e);
    std::sort(s.child_edges.begin(), s.child_edges.end(),
              [](const Edge& a, const Edge& b) { return a.normal < b.normal; });
    if (s.child_edges.empty())
        throw PreconditionError("expansion found no admissible edge; the curve is not smooth in the torus");
    return s;
}

Forest run_resolution(const FieldTower& T, const MultiLaurent& f, const ResolutionOptions& opt) {
    if (ml_is_zero(f)) throw PreconditionError("the zero polynomial does not define a curve");
    Forest F;
    F.input = ml_monomial_substitute(T, f, mat_identity(2)).g;
    F.polygon = newton_polygon(ml_support2(F.input));
    if (F.polygon.dim == 0) {
        F.terminated = true;
        return F;
    }

    for (const Edge& e : F.polygon.edges) {
        Vec2 delta = delta_of_beta(e.normal, opt.overrides);
        MatZ M = two_rows(delta, e.normal);
        auto img = ml_monomial_substitute(T, F.input, M);
        ChartNode node = make_chart(T, static_cast<int>(F.nodes.size()), -1, 1, e.normal, delta,
                                    std::move(img.g));
        if (opt.mode == ChartMode::FullCharts) {
            node.matrix = M;
            node.generators = {node.working};
        }
        F.nodes.push_back(std::move(node));
    }

    for (std::size_t i = 0; i < F.nodes.size(); ++i) {
        const auto orbits = F.nodes[i].roots.orbits;  // copy: the vector below reallocates
        for (std::size_t oi = 0; oi < orbits.size(); ++oi) {
            if (orbits[oi].multiplicity < 2) continue;
            if (F.nodes[i].level >= opt.max_iterations)
                throw GuardError("resolution did not terminate within the iteration limit");
            ExpansionStep step = expansion_step(T, F.nodes[i].working, orbits[oi].representative);
            std::vector<int> kids;
            for (const Edge& e : step.child_edges) {
                Vec2 delta = delta_of_beta(e.normal, opt.overrides);
                auto img = ml_monomial_substitute(T, step.shifted, two_rows(delta, e.normal));
                ChartNode child = make_chart(T, static_cast<int>(F.nodes.size()),
                                             static_cast<int>(i), F.nodes[i].level + 1, e.normal,
                                             delta, std::move(img.g));
                child.origin_root = orbits[oi];
                child.correction = step.correction;
                if (opt.mode == ChartMode::FullCharts)
                    attach_full_data(T, F.nodes[i], child, orbits[oi].representative,
                                     step.correction);
                kids.push_back(child.id);
                F.nodes.push_back(std::move(child));
            }
            F.nodes[i].children.insert(F.nodes[i].children.end(), kids.begin(), kids.end());
            F.nodes[i].expansions.emplace_back(oi, std::move(kids));
        }
    }

    F.terminated = true;
    for (const auto& n : F.nodes) F.depth = std::max(F.depth, n.level);
    return F;
}

std::vector<BoundaryPlace> places_at_infinity(const Forest& F) {
    if (!F.terminated) throw PreconditionError("the chart forest is not finished");
    std::vector<BoundaryPlace> out;
    for (const auto& n : F.nodes)
        for (std::size_t oi = 0; oi < n.roots.orbits.size(); ++oi) {
            const auto& orb = n.roots.orbits[oi];
            if (orb.multiplicity != 1) continue;
            BoundaryPlace p;
            p.node = n.id;
            p.orbit_index = oi;
            p.chain_degree = n.working.level;
            p.residue_degree = n.working.level * orb.orbit_size;
            out.push_back(p);
        }
    return out;
}

std::vector<DivisorPoints> divisor_points(const FieldTower& T, const Forest& F) {
    std::vector<DivisorPoints> out;
    for (const Edge& e : F.polygon.edges) {
        DivisorPoints d;
        d.normal = e.normal;
        d.restriction = ml_edge_restriction(T, F.input, e);
        d.roots = roots_in_closure(T, d.restriction, true);
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<RegularityRow> regularity_report(const Forest& F) {
    std::vector<RegularityRow> rows;
    for (unsigned lv = 1; lv <= F.depth; ++lv) {
        RegularityRow r;
        r.level = lv;
        r.outer_regular = true;
        r.curve_regular = true;
        for (const auto& n : F.nodes) {
            if (n.level != lv) continue;
            if (n.status != NodeStatus::OuterRegular) r.outer_regular = false;
            if (n.status == NodeStatus::SingularSingularPoint) {
                r.curve_regular = false;
                r.singular_nodes.push_back(n.id);
            }
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

GenusReport genus_report(const Forest& F) {
    GenusReport g;
    g.dim = F.polygon.dim;
    g.interior = interior_lattice_count(F.polygon);
    g.boundary = boundary_lattice_count(F.polygon);
    g.area2 = polygon_area2(F.polygon);
    g.arithmetic_genus = g.interior;
    return g;
}

std::vector<std::string> orbit_audit(const FieldTower& T, const Forest& F) {
    std::vector<std::string> bad;
    auto complain = [&](int id, const std::string& what) {
        bad.push_back("node " + std::to_string(id) + ": " + what);
    };
    for (const auto& n : F.nodes) {
        if (!up_equal(T, n.restrict_x, ml_eval_y0(T, n.working)))
            complain(n.id, "stored restriction disagrees with the working polynomial");
        if (n.zero_mult != trailing_zero_count(T, n.restrict_x))
            complain(n.id, "stored zero multiplicity is wrong");
        if (!ml_is_zero(n.working)) {
            i64 mx = 0, my = 0;
            bool first = true;
            for (const auto& [e, c] : n.working.terms) {
                mx = first ? e[0] : std::min(mx, e[0]);
                my = first ? e[1] : std::min(my, e[1]);
                first = false;
            }
            if (mx != 0 || my != 0) complain(n.id, "working polynomial keeps monomial content");
        }

        i64 counted = n.zero_mult;
        for (const auto& orb : n.roots.orbits) {
            counted += static_cast<i64>(orb.orbit_size) * orb.multiplicity;
            unsigned lv = std::lcm(n.restrict_x.level, orb.representative.level);
            UniPoly lifted = up_lift(T, n.restrict_x, lv);
            auto members = orbit_members(T, orb, n.restrict_x.level);
            if (members.size() != orb.orbit_size)
                complain(n.id, "orbit member count disagrees with its size");
            for (const auto& mem : members)
                if (!T.is_zero(up_eval(T, lifted, T.embed(mem, lv))))
                    complain(n.id, "claimed root does not vanish");
            UniPoly lin = up_make(T, lv, {T.neg(T.embed(orb.representative, lv)), T.one(lv)});
            UniPoly power = up_pow(T, lin, orb.multiplicity);
            if (!up_is_zero(up_rem(T, lifted, power)))
                complain(n.id, "multiplicity claim fails exact division");
            else if (up_is_zero(up_rem(T, lifted, up_mul(T, power, lin))))
                complain(n.id, "multiplicity claim undercounts");
        }
        if (counted != up_degree(n.restrict_x))
            complain(n.id, "orbit sizes and multiplicities miss the restriction degree");

        std::vector<bool> expanded(n.roots.orbits.size(), false);
        for (const auto& [oi, kids] : n.expansions) {
            expanded[oi] = true;
            if (n.roots.orbits[oi].multiplicity < 2)
                complain(n.id, "a simple root was expanded");
            if (kids.empty()) complain(n.id, "an expansion produced no charts");
            ExpansionStep step = expansion_step(T, n.working, n.roots.orbits[oi].representative);
            if (step.child_edges.size() != kids.size()) {
                complain(n.id, "expansion edge count changed on replay");
                continue;
            }
            for (std::size_t k = 0; k < kids.size(); ++k) {
                const ChartNode& ch = F.nodes[static_cast<std::size_t>(kids[k])];
                if (ch.parent != n.id || ch.level != n.level + 1)
                    complain(n.id, "child linkage is inconsistent");
                if (ch.beta[0] < 1 || ch.beta[1] < 1)
                    complain(n.id, "child edge normal is not strictly positive");
                UniPoly along = ml_edge_restriction(T, step.shifted, step.child_edges[k]);
                std::vector<FqElem> xd(static_cast<std::size_t>(ch.zero_mult), T.zero(along.level));
                xd.push_back(T.one(along.level));
                if (!up_equal(T, ch.restrict_x, up_mul(T, along, up_make(T, along.level, xd))))
                    complain(ch.id, "restriction does not match the parent edge polynomial");
            }
        }
        for (std::size_t oi = 0; oi < n.roots.orbits.size(); ++oi)
            if (n.roots.orbits[oi].multiplicity >= 2 && !expanded[oi] && F.terminated)
                complain(n.id, "a multiple root was never expanded");
    }
    return bad;
}

SmoothnessReport smoothness_check(const FieldTower& T, const MultiLaurent& f) {
    if (ml_is_zero(f)) throw PreconditionError("the zero polynomial does not define a curve");
    MultiLaurent A = ml_monomial_substitute(T, f, mat_identity(2)).g;
    if (A.terms.size() == 1) return {true, std::nullopt};  // unit: empty curve

    std::vector<Biv> polys{biv_of(T, A)};
    for (int var = 0; var < 2; ++var) {
        MultiLaurent d = ml_partial_scaled(T, A, var);
        if (ml_is_zero(d)) continue;  // vanishes identically; adds no condition
        MultiLaurent s = ml_monomial_substitute(T, d, mat_identity(2)).g;
        if (s.terms.size() == 1) return {true, std::nullopt};  // a unit never vanishes
        polys.push_back(biv_of(T, s));
    }
    auto w = find_common_zero(T, A.level, std::move(polys));
    return {!w.has_value(), w};
}

NondegeneracyReport nondegeneracy_check(const FieldTower& T, const MultiLaurent& f) {
    NondegeneracyReport rep;
    rep.smooth = smoothness_check(T, f);
    MultiLaurent norm = ml_monomial_substitute(T, f, mat_identity(2)).g;
    LatticePolygon P = newton_polygon(ml_support2(norm));
    bool edges_ok = true;
    for (const Edge& e : P.edges) {
        UniPoly r = ml_edge_restriction(T, norm, e);
        UniPoly dr = up_derivative(T, r);
        bool sf = !up_is_zero(dr) && up_degree(up_gcd(T, r, dr)) == 0;
        if (up_degree(r) == 0) sf = true;
        rep.edges.push_back({e.normal, sf});
        edges_ok = edges_ok && sf;
    }
    rep.nondegenerate = rep.smooth.smooth && edges_ok;
    return rep;
}

}  // namespace baker
