#include <algorithm>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "baker/document.hpp"

// acceptance gate: one line per criterion, nonzero exit when any fails

using namespace baker;
using i64 = std::int64_t;

namespace {

struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return s >> 33;
    }
    std::uint64_t next(std::uint64_t n) { return next() % n; }
};

std::vector<unsigned> residue_degrees(const Forest& F) {
    std::vector<unsigned> out;
    for (const auto& p : places_at_infinity(F)) out.push_back(p.residue_degree);
    std::sort(out.begin(), out.end());
    return out;
}

std::string show(const std::vector<unsigned>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

std::string intro_example() {
    FieldTower T(3, 1);
    MultiLaurent f = ml_parse(T, "(x^2+1)^2+y-y^3");
    Forest F = run_resolution(T, f, ResolutionOptions{});
    auto audit = orbit_audit(T, F);
    if (!audit.empty()) return audit.front();
    auto res = residue_degrees(F);
    if (res != std::vector<unsigned>{1, 2, 3}) return "residue degrees " + show(res);
    GenusReport g = genus_report(F);
    if (g.interior != 3 || g.arithmetic_genus != 3) return "genus";
    auto rows = regularity_report(F);
    if (rows.size() != 2) return "tower depth";
    if (!rows[0].curve_regular || rows[0].outer_regular) return "level 1 regularity";
    if (!rows[1].outer_regular) return "level 2 regularity";
    UniPoly q = up_from_ints(T, {1, 0, 1});
    if (!up_equal(T, F.nodes[0].restrict_x, up_mul(T, q, q))) return "bottom edge restriction";
    auto nd = nondegeneracy_check(T, f);
    if (!nd.smooth.smooth || nd.nondegenerate) return "degeneracy profile";
    return {};
}

std::string worked_example() {
    FieldTower T(2, 1);
    MultiLaurent f = ml_parse(T, "x^4+1+y^2+y^3");
    ResolutionOptions opt;
    opt.overrides.table[{1, 2}] = {1, 1};
    opt.overrides.table[{1, 1}] = {1, 0};
    Forest F = run_resolution(T, f, opt);
    if (F.nodes.size() != 6 || F.depth != 4) return "tower shape";
    auto working_is = [&](int id, const char* text) {
        return ml_equal(T, F.nodes[static_cast<std::size_t>(id)].working, ml_parse(T, text));
    };
    if (!working_is(3, "1+x*y^2+x^2")) return "level 2 chart";
    if (!working_is(4, "1+x*y+x^2")) return "level 3 chart";
    if (!working_is(5, "1+x+x*y")) return "level 4 chart";
    const NodeStatus want[6] = {NodeStatus::SingularSingularPoint, NodeStatus::OuterRegular,
                                NodeStatus::OuterRegular,          NodeStatus::SingularSingularPoint,
                                NodeStatus::SingularRegularPoint,  NodeStatus::OuterRegular};
    for (int i = 0; i < 6; ++i)
        if (F.nodes[static_cast<std::size_t>(i)].status != want[i])
            return "status of chart " + std::to_string(i);
    auto res = residue_degrees(F);
    if (res != std::vector<unsigned>{1, 1, 3}) return "residue degrees " + show(res);
    if (genus_report(F).arithmetic_genus != 3) return "genus";
    auto rows = regularity_report(F);
    const bool curve[4] = {false, false, true, true};
    for (int i = 0; i < 4; ++i) {
        if (rows[static_cast<std::size_t>(i)].curve_regular != curve[i])
            return "curve regularity at level " + std::to_string(i + 1);
        if (rows[static_cast<std::size_t>(i)].outer_regular != (i == 3))
            return "outer regularity at level " + std::to_string(i + 1);
    }
    auto audit = orbit_audit(T, F);
    if (!audit.empty()) return audit.front();

    opt.mode = ChartMode::FullCharts;
    Forest G = run_resolution(T, f, opt);
    MatZ m2{{{1, 0, 0}, {0, 1, 1}, {0, 1, 2}}};
    MatZ m3{{{1, 0, 0, 0}, {0, 1, 1, 1}, {0, 1, 2, 2}, {0, 1, 2, 3}}};
    if (!(G.nodes[3].matrix == m2)) return "level 2 chart matrix";
    if (!(G.nodes[4].matrix == m3)) return "level 3 chart matrix";
    MultiLaurent fresh = ml_zero(1, 3);
    ml_add_term(T, fresh, {0, 0, 0}, T.one());
    ml_add_term(T, fresh, {0, 1, 1}, T.one());
    ml_add_term(T, fresh, {1, 0, 0}, T.one());
    if (G.nodes[3].generators.size() != 2 || !ml_equal(T, G.nodes[3].generators[1], fresh))
        return "fresh ideal generator";
    for (const auto& n : G.nodes) {
        if (n.matrix.size() != n.level + 1) return "matrix size";
        i64 d = mat_det(n.matrix);
        if (d != 1 && d != -1) return "matrix determinant";
        if (n.generators.size() != n.level) return "generator count";
    }
    return {};
}

std::string exceptional_quartics() {
    FieldTower T2(2, 1);
    MultiLaurent f2 = ml_parse(T2, "(x+y)^4+(x*y)^2+x*y*(x+y+1)+(x+y+1)^2");
    ResolutionOptions opt;
    opt.overrides.table[{1, 0}] = {-1, -1};
    opt.overrides.table[{-1, -1}] = {0, 1};
    Forest F = run_resolution(T2, f2, opt);
    auto audit = orbit_audit(T2, F);
    if (!audit.empty()) return audit.front();
    if (F.nodes.size() != 6 || F.depth != 2) return "first tower shape";
    MultiLaurent chart = ml_parse(T2, "(x^2+x+1)^2+x*(x+1)*y+(x^2+x+1)*y^2+y^4");
    for (int i = 0; i < 3; ++i) {
        const auto& n = F.nodes[static_cast<std::size_t>(i)];
        if (!ml_equal(T2, n.working, chart)) return "edge chart " + std::to_string(i);
        if (n.status != NodeStatus::SingularRegularPoint)
            return "edge chart status " + std::to_string(i);
    }
    auto rows = regularity_report(F);
    if (!rows[0].curve_regular || rows[0].outer_regular) return "first level 1 regularity";
    auto res = residue_degrees(F);
    if (res != std::vector<unsigned>{2, 2, 2}) return "first residue degrees " + show(res);
    if (genus_report(F).arithmetic_genus != 3) return "first genus";
    auto nd2 = nondegeneracy_check(T2, f2);
    if (!nd2.smooth.smooth || nd2.nondegenerate) return "first degeneracy profile";
    for (const auto& e : nd2.edges)
        if (e.squarefree) return "first boundary factors";

    FieldTower T3(3, 1);
    MultiLaurent f3 = ml_parse(T3, "(x^2+1)^2+y-y^3");
    auto nd3 = nondegeneracy_check(T3, f3);
    if (!nd3.smooth.smooth || nd3.nondegenerate) return "second degeneracy profile";
    for (const auto& e : nd3.edges) {
        bool bottom = e.normal == Vec2{0, 1};
        if (e.squarefree == bottom) return "second boundary factors";
    }
    Forest F3 = run_resolution(T3, f3, ResolutionOptions{});
    if (!regularity_report(F3)[0].curve_regular) return "second level 1 regularity";
    if (genus_report(F3).interior != 3) return "second interior count";
    return {};
}

std::string superelliptic_sweep() {
    Lcg rng(0x5ca1ab1e);
    const std::uint64_t ps[3] = {3, 5, 7};
    int done = 0;
    while (done < 54) {
        std::uint64_t p = ps[rng.next(3)];
        unsigned s = 2 + static_cast<unsigned>(rng.next(4));
        if (s % p == 0) continue;
        FieldTower T(p, 1);
        unsigned deg = 1 + static_cast<unsigned>(rng.next(6));
        unsigned trail = static_cast<unsigned>(rng.next(3));
        if (trail > deg) trail = 0;
        std::vector<FqElem> cs(deg + 1, T.zero());
        for (unsigned i = trail; i <= deg; ++i)
            cs[i] = T.from_int(static_cast<i64>(rng.next(p)));
        cs[deg] = T.from_int(1 + static_cast<i64>(rng.next(p - 1)));
        cs[trail] = T.from_int(1 + static_cast<i64>(rng.next(p - 1)));
        UniPoly h = up_make(T, 1, cs);
        auto bad = superelliptic_cross_check(T, s, h);
        if (!bad.empty())
            return "p=" + std::to_string(p) + " s=" + std::to_string(s) + " h=" +
                   up_render(T, h, "x") + ": " + bad.front();
        ++done;
    }
    return {};
}

std::string nondegenerate_sweep() {
    Lcg rng(0xdecade);
    const std::uint64_t ps[3] = {2, 3, 5};
    int done = 0, attempts = 0;
    while (done < 100) {
        if (++attempts > 5000)
            return "only " + std::to_string(done) + " nondegenerate draws in 5000 attempts";
        std::uint64_t p = ps[rng.next(3)];
        FieldTower T(p, 1);
        MultiLaurent f = ml_zero(1, 2);
        for (i64 i = 0; i <= 3; ++i)
            for (i64 j = 0; j <= 3; ++j)
                if (rng.next(2))
                    ml_add_term(T, f, {i, j}, T.from_int(1 + static_cast<i64>(rng.next(p - 1))));
        if (ml_is_zero(f)) continue;
        if (newton_polygon(ml_support2(f)).dim != 2) continue;
        if (!nondegeneracy_check(T, f).nondegenerate) continue;
        Forest F = run_resolution(T, f, ResolutionOptions{});
        std::string tag = " (p=" + std::to_string(p) + ", f=" + ml_render(T, f) + ")";
        if (F.depth != 1) return "tower depth" + tag;
        std::size_t orbit_total = 0;
        for (const auto& n : F.nodes) {
            if (n.status != NodeStatus::OuterRegular) return "chart status" + tag;
            unsigned root_count = 0;
            for (const auto& orb : n.roots.orbits) {
                if (orb.multiplicity != 1) return "root multiplicity" + tag;
                root_count += orb.orbit_size;
            }
            if (root_count + n.zero_mult != static_cast<unsigned>(up_degree(n.restrict_x)))
                return "root count" + tag;
            orbit_total += n.roots.orbits.size();
        }
        auto places = places_at_infinity(F);
        if (places.size() != orbit_total) return "place count" + tag;
        for (const auto& pl : places) {
            const auto& orb = F.nodes[static_cast<std::size_t>(pl.node)].roots.orbits[pl.orbit_index];
            if (pl.residue_degree != orb.orbit_size || pl.chain_degree != 1)
                return "place degrees" + tag;
        }
        auto audit = orbit_audit(T, F);
        if (!audit.empty()) return audit.front() + tag;
        GenusReport g = genus_report(F);
        if (g.area2 != 2 * g.interior + g.boundary - 2) return "lattice count identity" + tag;
        ++done;
    }
    return {};
}

std::string override_invariance() {
    FieldTower T(2, 1);
    MultiLaurent f = ml_parse(T, "x^4+1+y^2+y^3");
    std::vector<DeltaOverrides> tables(3);
    tables[1].table = {{{1, 2}, {1, 1}}, {{1, 1}, {1, 0}}};
    tables[2].table = {{{1, 2}, {3, 5}},
                       {{1, 1}, {2, 1}},
                       {{0, 1}, {1, 5}},
                       {{1, 0}, {5, -1}},
                       {{-3, -4}, {5, 7}}};
    std::vector<unsigned> base;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        ResolutionOptions opt;
        opt.overrides = tables[i];
        Forest F = run_resolution(T, f, opt);
        auto audit = orbit_audit(T, F);
        if (!audit.empty()) return audit.front();
        auto res = residue_degrees(F);
        if (i == 0)
            base = res;
        else if (res != base)
            return "residue degrees moved under table " + std::to_string(i);
        if (genus_report(F).arithmetic_genus != 3) return "genus moved";
    }

    FieldTower T5(5, 1);
    MultiLaurent conic = ml_parse(T5, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3");
    DeltaOverrides tilt;
    tilt.table = {{{0, 1}, {1, 7}}, {{2, 1}, {3, 1}}, {{3, 1}, {4, 1}}};
    std::vector<unsigned> first;
    for (int pass = 0; pass < 2; ++pass) {
        ResolutionOptions opt;
        if (pass == 1) opt.overrides = tilt;
        Forest F = run_resolution(T5, conic, opt);
        auto audit = orbit_audit(T5, F);
        if (!audit.empty()) return audit.front();
        auto res = residue_degrees(F);
        if (pass == 0)
            first = res;
        else if (res != first)
            return "conic residue degrees moved";
    }
    if (first != std::vector<unsigned>(6, 1)) return "conic residue degrees " + show(first);
    return {};
}

std::string termination_and_guards() {
    FieldTower T5(5, 1);
    MultiLaurent conic = ml_parse(T5, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3");
    Forest F = run_resolution(T5, conic, ResolutionOptions{});
    if (!F.terminated || F.depth != 2 || F.nodes.size() != 6) return "conic tower shape";
    for (const auto& n : F.nodes)
        if ((n.parent == 0) != (n.correction == 3)) return "conic shift correction";
    if (residue_degrees(F) != std::vector<unsigned>(6, 1)) return "conic residue degrees";
    if (genus_report(F).interior != 1) return "conic genus";
    auto audit = orbit_audit(T5, F);
    if (!audit.empty()) return audit.front();

    FieldTower T2(2, 1);
    Forest E = run_resolution(T2, ml_parse(T2, "x^4+x^2+1+y"), ResolutionOptions{});
    if (residue_degrees(E) != std::vector<unsigned>{1, 1, 2}) return "extension residue degrees";

    ResolutionOptions capped;
    capped.max_iterations = 5;
    bool tripped = false;
    try {
        run_resolution(T2, ml_parse(T2, "x^2+y^2"), capped);
    } catch (const GuardError&) {
        tripped = true;
    }
    if (!tripped) return "iteration guard";

    Forest M = run_resolution(T2, ml_parse(T2, "x^2*y"), ResolutionOptions{});
    if (!M.terminated || !M.nodes.empty() || !places_at_infinity(M).empty())
        return "monomial completion";

    bool rejected = false;
    try {
        run_resolution(T2, ml_zero(1, 2), ResolutionOptions{});
    } catch (const PreconditionError&) {
        rejected = true;
    }
    if (!rejected) return "zero input guard";
    return {};
}

std::string kernel_properties() {
    Lcg rng(0xca11ab);
    int cases = 0;
    const std::uint64_t primes[4] = {2, 3, 5, 11};

    for (int t = 0; t < 40; ++t) {
        std::uint64_t p = primes[rng.next(4)];
        FieldTower T(p, 1);
        unsigned lvl = 1 + static_cast<unsigned>(rng.next(3));
        T.ensure_level(lvl);
        auto rnd = [&] {
            std::vector<std::uint64_t> cs(lvl);
            for (auto& v : cs) v = rng.next(p);
            return T.make(lvl, cs);
        };
        FqElem a = rnd(), b = rnd(), c = rnd();
        if (!T.equal(T.add(T.add(a, b), c), T.add(a, T.add(b, c)))) return "additive associativity";
        if (!T.equal(T.mul(T.mul(a, b), c), T.mul(a, T.mul(b, c))))
            return "multiplicative associativity";
        if (!T.equal(T.mul(a, T.add(b, c)), T.add(T.mul(a, b), T.mul(a, c))))
            return "distributivity";
        if (!T.is_zero(a) && !T.is_one(T.mul(a, T.inv(a)))) return "multiplicative inverse";
        FqElem fr = a;
        for (unsigned i = 0; i < lvl; ++i) fr = T.frobenius(fr);
        if (!T.equal(fr, a)) return "frobenius order";
        cases += 5;
    }

    for (int t = 0; t < 60; ++t) {
        std::uint64_t p = primes[rng.next(3)];
        FieldTower T(p, 1);
        auto rnd_poly = [&](unsigned maxdeg) {
            unsigned d = static_cast<unsigned>(rng.next(maxdeg)) + 1;
            std::vector<FqElem> cs(d + 1, T.zero());
            for (unsigned i = 0; i < d; ++i) cs[i] = T.from_int(static_cast<i64>(rng.next(p)));
            cs[d] = T.from_int(1 + static_cast<i64>(rng.next(p - 1)));
            return up_make(T, 1, cs);
        };
        UniPoly f = rnd_poly(4), g = rnd_poly(4), h = rnd_poly(2);
        if (up_degree(up_mul(T, f, g)) != up_degree(f) + up_degree(g)) return "degree additivity";
        UniPoly q, r;
        up_divrem(T, f, h, q, r);
        if (!up_equal(T, f, up_add(T, up_mul(T, q, h), r)) || up_degree(r) >= up_degree(h))
            return "division identity";
        UniPoly common = up_gcd(T, up_mul(T, f, h), up_mul(T, g, h));
        if (!up_is_zero(up_rem(T, common, h))) return "gcd common factor";
        UniPoly rebuilt = up_make(T, 1, {up_lead(T, f)});
        for (const auto& [irr, m] : factor(T, f)) rebuilt = up_mul(T, rebuilt, up_pow(T, irr, m));
        if (!up_equal(T, rebuilt, f)) return "factor product";
        unsigned root_total = 0;
        for (const auto& orb : roots_in_closure(T, f).orbits)
            root_total += orb.orbit_size * orb.multiplicity;
        if (root_total != static_cast<unsigned>(up_degree(f))) return "closure root count";
        for (const auto& orb : roots_in_closure(T, f, true).orbits) {
            UniPoly mp = minimal_polynomial(T, orb.representative);
            if (static_cast<unsigned>(up_degree(mp)) != orb.orbit_size) return "orbit degree";
            FqElem v = up_eval(T, up_lift(T, mp, orb.representative.level), orb.representative);
            if (!T.is_zero(v)) return "minimal polynomial vanishing";
            cases += 2;
        }
        cases += 5;
    }

    for (int t = 0; t < 40; ++t) {
        std::set<Vec2> pts;
        unsigned n = 3 + static_cast<unsigned>(rng.next(6));
        for (unsigned i = 0; i < n; ++i)
            pts.insert({static_cast<i64>(rng.next(7)) - 3, static_cast<i64>(rng.next(7)) - 3});
        std::vector<Vec2> support(pts.begin(), pts.end());
        LatticePolygon P = newton_polygon(support);
        for (const auto& v : P.vertices)
            if (!pts.count(v)) return "vertex outside support";
        for (const auto& e : P.edges) {
            i64 lo = e.normal[0] * e.a[0] + e.normal[1] * e.a[1];
            for (const auto& s : support)
                if (e.normal[0] * s[0] + e.normal[1] * s[1] < lo) return "support crosses an edge";
        }
        cases += 2;
        if (P.dim == 2) {
            i64 inside = 0, total = 0;
            for (i64 x = -3; x <= 3; ++x)
                for (i64 y = -3; y <= 3; ++y) {
                    bool in = true, strict = true;
                    for (const auto& e : P.edges) {
                        i64 v = e.normal[0] * (x - e.a[0]) + e.normal[1] * (y - e.a[1]);
                        if (v < 0) in = false;
                        if (v <= 0) strict = false;
                    }
                    total += in;
                    inside += strict;
                }
            if (inside != interior_lattice_count(P)) return "interior count";
            if (total - inside != boundary_lattice_count(P)) return "boundary count";
            if (polygon_area2(P) != 2 * inside + (total - inside) - 2) return "area identity";
            cases += 3;
        }
    }

    for (int t = 0; t < 30; ++t) {
        std::uint64_t p = primes[rng.next(3)];
        FieldTower T(p, 1);
        auto rnd_ml = [&] {
            MultiLaurent f = ml_zero(1, 2);
            for (i64 i = -2; i <= 2; ++i)
                for (i64 j = -2; j <= 2; ++j)
                    if (rng.next(4) == 0)
                        ml_add_term(T, f, {i, j},
                                    T.from_int(1 + static_cast<i64>(rng.next(p - 1))));
            return f;
        };
        MultiLaurent f = rnd_ml(), g = rnd_ml();
        if (!ml_is_zero(f) && !ml_equal(T, ml_parse(T, ml_render(T, f)), f))
            return "parse render roundtrip";
        if (!ml_equal(T, ml_mul(T, f, g), ml_mul(T, g, f))) return "product symmetry";
        if (!ml_is_zero(ml_add(T, f, ml_neg(T, f)))) return "additive inverse";
        cases += 3;
    }

    if (cases < 500) return "only " + std::to_string(cases) + " checks ran";
    return {};
}

int check(const char* name, const std::string& detail) {
    if (detail.empty()) {
        std::printf("PASS: %s\n", name);
        return 0;
    }
    std::printf("FAIL: %s - %s\n", name, detail.c_str());
    return 1;
}

}  // namespace

int main() {
    int failures = 0;
    failures += check("intro example: places, residue fields, genus", intro_example());
    failures += check("worked example: chart tower, matrices, generators", worked_example());
    failures += check("exceptional quartics: smooth completions at level 1", exceptional_quartics());
    failures += check("superelliptic covers: closed forms match the tower (54 random)",
                      superelliptic_sweep());
    failures += check("nondegenerate curves: single-level towers (100 random)",
                      nondegenerate_sweep());
    failures += check("completion overrides: intrinsic outputs unchanged", override_invariance());
    failures += check("termination: shifts, extensions, guards", termination_and_guards());
    failures += check("algebra kernel: arithmetic identities (500+ random)", kernel_properties());
    return failures;
}
