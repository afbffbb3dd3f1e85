#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "baker/errors.hpp"
#include "baker/resolution.hpp"

using namespace baker;
using i64 = std::int64_t;

namespace {

MultiLaurent ml(const FieldTower& T, const std::string& s) { return ml_parse(T, s); }

UniPoly up(const FieldTower& T, std::vector<i64> c) { return up_from_ints(T, std::move(c)); }

// coefficient-wise field automorphism x -> x^q
MultiLaurent conjugate(const FieldTower& T, const MultiLaurent& f) {
    MultiLaurent g = ml_zero(f.level, f.nvars);
    for (const auto& [e, c] : f.terms) ml_add_term(T, g, e, T.frobenius(c));
    return g;
}

const ChartNode& only_child(const Forest& F, const ChartNode& n) {
    REQUIRE(n.children.size() == 1);
    return F.nodes[static_cast<std::size_t>(n.children[0])];
}

std::vector<unsigned> residue_degrees(const Forest& F) {
    std::vector<unsigned> out;
    for (const auto& p : places_at_infinity(F)) out.push_back(p.residue_degree);
    std::sort(out.begin(), out.end());
    return out;
}

// extended Euclid inverse mod an irreducible modulus, for checking witnesses
UniPoly inv_mod(const FieldTower& T, const UniPoly& a, const UniPoly& m) {
    UniPoly r0 = m, r1 = up_rem(T, a, m);
    UniPoly t0 = up_zero(m.level), t1 = up_from_ints(T, {1});
    while (!up_is_zero(r1)) {
        UniPoly q, r;
        up_divrem(T, r0, r1, q, r);
        UniPoly t = up_sub(T, t0, up_mul(T, q, t1));
        r0 = r1;
        r1 = r;
        t0 = t1;
        t1 = t;
    }
    REQUIRE(up_degree(r0) == 0);
    return up_rem(T, up_scale(T, t0, T.inv(up_lead(T, r0))), m);
}

// f(xbar, ybar) in k[x]/(m), with ybar cut out by a linear y-locus
UniPoly eval_on_witness(const FieldTower& T, const MultiLaurent& f, const SingularWitness& w) {
    REQUIRE(!w.y_free);
    REQUIRE(w.y_locus.size() == 2);
    UniPoly ybar = up_rem(
        T, up_mul(T, up_neg(T, w.y_locus[0]), inv_mod(T, w.y_locus[1], w.x_minpoly)),
        w.x_minpoly);
    auto rows = ml_coeffs_in(T, f, 1);
    UniPoly acc = up_zero(w.x_minpoly.level);
    for (auto it = rows.rbegin(); it != rows.rend(); ++it)
        acc = up_rem(T, up_add(T, up_mul(T, acc, ybar), *it), w.x_minpoly);
    return acc;
}

// both scaled partials and the curve itself must vanish at a claimed singular point
void check_singular_witness(const FieldTower& T, const MultiLaurent& f, const SingularWitness& w) {
    CHECK(is_irreducible(T, w.x_minpoly));
    CHECK_FALSE(T.is_zero(up_coeff(T, w.x_minpoly, 0)));  // x = 0 is outside the torus
    CHECK(up_is_zero(eval_on_witness(T, f, w)));
    for (int var = 0; var < 2; ++var) {
        MultiLaurent d = ml_partial_scaled(T, f, var);
        if (!ml_is_zero(d)) CHECK(up_is_zero(eval_on_witness(T, d, w)));
    }
}

}  // namespace

TEST_CASE("quartic tower over GF(2) with completion overrides") {
    FieldTower T(2, 1);
    MultiLaurent f = ml(T, "x^4+1+y^2+y^3");
    ResolutionOptions opt;
    opt.overrides.table[{1, 2}] = {1, 1};
    opt.overrides.table[{1, 1}] = {1, 0};
    Forest F = run_resolution(T, f, opt);

    CHECK(F.terminated);
    CHECK(F.depth == 4);
    CHECK(F.nodes.size() == 6);
    CHECK(F.polygon.dim == 2);
    CHECK(F.polygon.vertices == std::vector<Vec2>{{0, 0}, {4, 0}, {0, 3}});

    const ChartNode& bottom = F.nodes[0];
    CHECK(bottom.beta == Vec2{0, 1});
    CHECK(bottom.delta == Vec2{1, 0});
    CHECK(ml_equal(T, bottom.working, f));
    CHECK(up_equal(T, bottom.restrict_x, up(T, {1, 0, 0, 0, 1})));
    CHECK(bottom.zero_mult == 0);
    REQUIRE(bottom.roots.orbits.size() == 1);
    CHECK(bottom.roots.orbits[0].multiplicity == 4);
    CHECK(bottom.roots.orbits[0].orbit_size == 1);
    CHECK(T.is_one(bottom.roots.orbits[0].representative));
    CHECK(bottom.status == NodeStatus::SingularSingularPoint);
    CHECK(bottom.expansions.size() == 1);

    const ChartNode& skew = F.nodes[1];
    CHECK(skew.beta == Vec2{-3, -4});
    CHECK(skew.delta == Vec2{2, 3});
    CHECK(skew.zero_mult == 8);
    REQUIRE(skew.roots.orbits.size() == 1);
    CHECK(skew.roots.orbits[0].multiplicity == 1);
    CHECK(skew.status == NodeStatus::OuterRegular);

    const ChartNode& left = F.nodes[2];
    CHECK(left.beta == Vec2{1, 0});
    CHECK(left.delta == Vec2{0, -1});
    CHECK(up_equal(T, left.restrict_x, up(T, {1, 1, 0, 1})));
    REQUIRE(left.roots.orbits.size() == 1);
    CHECK(left.roots.orbits[0].orbit_size == 3);
    CHECK(left.roots.orbits[0].multiplicity == 1);

    const ChartNode& lv2 = only_child(F, bottom);
    CHECK(lv2.level == 2);
    CHECK(lv2.parent == 0);
    CHECK(lv2.beta == Vec2{1, 2});
    CHECK(lv2.delta == Vec2{1, 1});
    CHECK(lv2.correction == 0);
    CHECK(ml_equal(T, lv2.working, ml(T, "x^2+1+x*y^2")));
    CHECK(up_equal(T, lv2.restrict_x, up(T, {1, 0, 1})));
    CHECK(lv2.status == NodeStatus::SingularSingularPoint);

    const ChartNode& lv3 = only_child(F, lv2);
    CHECK(lv3.beta == Vec2{1, 1});
    CHECK(lv3.delta == Vec2{1, 0});
    CHECK(ml_equal(T, lv3.working, ml(T, "x^2+x*y+1")));
    CHECK(lv3.status == NodeStatus::SingularRegularPoint);

    const ChartNode& lv4 = only_child(F, lv3);
    CHECK(lv4.beta == Vec2{1, 2});
    CHECK(lv4.delta == Vec2{1, 1});
    CHECK(ml_equal(T, lv4.working, ml(T, "x+x*y+1")));
    REQUIRE(lv4.roots.orbits.size() == 1);
    CHECK(lv4.roots.orbits[0].multiplicity == 1);
    CHECK(lv4.status == NodeStatus::OuterRegular);
    CHECK(lv4.children.empty());

    auto rows = regularity_report(F);
    REQUIRE(rows.size() == 4);
    CHECK_FALSE(rows[0].outer_regular);
    CHECK_FALSE(rows[0].curve_regular);
    CHECK(rows[0].singular_nodes == std::vector<int>{0});
    CHECK_FALSE(rows[1].outer_regular);
    CHECK_FALSE(rows[1].curve_regular);
    CHECK_FALSE(rows[2].outer_regular);
    CHECK(rows[2].curve_regular);
    CHECK(rows[3].outer_regular);
    CHECK(rows[3].curve_regular);

    CHECK(residue_degrees(F) == std::vector<unsigned>{1, 1, 3});
    for (const auto& p : places_at_infinity(F)) CHECK(p.chain_degree == 1);

    GenusReport g = genus_report(F);
    CHECK(g.dim == 2);
    CHECK(g.interior == 3);
    CHECK(g.boundary == 8);
    CHECK(g.area2 == 12);
    CHECK(g.arithmetic_genus == 3);

    CHECK(orbit_audit(T, F).empty());
}

TEST_CASE("quartic tower carries matrices and ideal generators") {
    FieldTower T(2, 1);
    MultiLaurent f = ml(T, "x^4+1+y^2+y^3");
    ResolutionOptions opt;
    opt.mode = ChartMode::FullCharts;
    opt.overrides.table[{1, 2}] = {1, 1};
    opt.overrides.table[{1, 1}] = {1, 0};
    Forest F = run_resolution(T, f, opt);

    const ChartNode& bottom = F.nodes[0];
    CHECK(bottom.matrix == MatZ{{{1, 0}, {0, 1}}});
    REQUIRE(bottom.generators.size() == 1);
    CHECK(ml_equal(T, bottom.generators[0], f));

    const ChartNode& lv2 = only_child(F, bottom);
    CHECK(lv2.matrix == MatZ{{{1, 0, 0}, {0, 1, 1}, {0, 1, 2}}});
    REQUIRE(lv2.generators.size() == 2);
    MultiLaurent g0 = ml_zero(1, 3);
    ml_add_term(T, g0, {4, 0, 0}, T.one());
    ml_add_term(T, g0, {0, 0, 0}, T.one());
    ml_add_term(T, g0, {0, 2, 4}, T.one());
    ml_add_term(T, g0, {0, 3, 6}, T.one());
    CHECK(ml_equal(T, lv2.generators[0], g0));
    MultiLaurent g1 = ml_zero(1, 3);
    ml_add_term(T, g1, {0, 1, 1}, T.one());
    ml_add_term(T, g1, {1, 0, 0}, T.one());
    ml_add_term(T, g1, {0, 0, 0}, T.one());
    CHECK(ml_equal(T, lv2.generators[1], g1));

    const ChartNode& lv3 = only_child(F, lv2);
    CHECK(lv3.matrix == MatZ{{{1, 0, 0, 0}, {0, 1, 1, 1}, {0, 1, 2, 2}, {0, 1, 2, 3}}});
    CHECK(lv3.generators.size() == 3);

    for (const auto& n : F.nodes) {
        CHECK(n.matrix.size() == n.level + 1);
        i64 d = mat_det(n.matrix);
        CHECK((d == 1 || d == -1));
        CHECK(n.generators.size() == n.level);
    }
}

TEST_CASE("split conic pair over GF(5) needs a shift correction") {
    FieldTower T(5, 1);
    MultiLaurent f = ml(T, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3");
    Forest F = run_resolution(T, f);

    CHECK(F.terminated);
    CHECK(F.depth == 2);
    CHECK(F.nodes.size() == 6);
    CHECK(F.polygon.vertices == std::vector<Vec2>{{0, 2}, {4, 0}, {2, 2}, {0, 3}});

    const ChartNode& main = F.nodes[0];
    CHECK(main.beta == Vec2{1, 2});
    CHECK(main.delta == Vec2{0, -1});
    CHECK(ml_equal(T, main.working, ml(T, "x^3+3*x^2+x+x*y^2+4*y^2")));
    CHECK(main.zero_mult == 1);
    REQUIRE(main.roots.orbits.size() == 1);
    CHECK(T.is_one(main.roots.orbits[0].representative));
    CHECK(main.roots.orbits[0].multiplicity == 2);
    CHECK(main.status == NodeStatus::SingularSingularPoint);
    REQUIRE(main.children.size() == 2);

    const ChartNode& c1 = F.nodes[static_cast<std::size_t>(main.children[0])];
    CHECK(c1.beta == Vec2{2, 1});
    CHECK(c1.correction == 3);
    CHECK(c1.zero_mult == 1);
    CHECK(up_equal(T, c1.restrict_x, up(T, {0, 1, 1})));
    REQUIRE(c1.roots.orbits.size() == 1);
    CHECK(T.equal(c1.roots.orbits[0].representative, T.from_int(4)));

    const ChartNode& c2 = F.nodes[static_cast<std::size_t>(main.children[1])];
    CHECK(c2.beta == Vec2{3, 1});
    CHECK(c2.correction == 3);
    CHECK(up_equal(T, c2.restrict_x, up(T, {4, 1})));
    CHECK(T.is_one(c2.roots.orbits[0].representative));

    CHECK(residue_degrees(F) == std::vector<unsigned>{1, 1, 1, 1, 1, 1});

    GenusReport g = genus_report(F);
    CHECK(g.interior == 1);
    CHECK(g.boundary == 6);
    CHECK(g.arithmetic_genus == 1);

    auto rows = regularity_report(F);
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].curve_regular);
    CHECK(rows[1].outer_regular);

    CHECK(orbit_audit(T, F).empty());
}

TEST_CASE("multiple root in an extension field raises the chain degree") {
    FieldTower T(2, 1);
    MultiLaurent f = ml(T, "x^4+x^2+1+y");
    Forest F = run_resolution(T, f);

    CHECK(F.depth == 2);
    const ChartNode& bottom = F.nodes[0];
    REQUIRE(bottom.roots.orbits.size() == 1);
    CHECK(bottom.roots.orbits[0].orbit_size == 2);
    CHECK(bottom.roots.orbits[0].multiplicity == 2);
    CHECK(bottom.status == NodeStatus::SingularRegularPoint);

    const ChartNode& child = only_child(F, bottom);
    CHECK(child.working.level == 2);
    CHECK(child.beta == Vec2{1, 2});
    CHECK(up_degree(child.restrict_x) == 1);

    CHECK(residue_degrees(F) == std::vector<unsigned>{1, 1, 2});
    CHECK(orbit_audit(T, F).empty());
}

TEST_CASE("conjugate roots expand to conjugate charts") {
    FieldTower T(2, 1);
    MultiLaurent f = ml(T, "x^4+x^2+1+y");
    RootReport rep = roots_in_closure(T, ml_eval_y0(T, f), true);
    REQUIRE(rep.orbits.size() == 1);
    FqElem a = rep.orbits[0].representative;
    FqElem b = T.frobenius(a);
    CHECK_FALSE(T.equal(a, b));

    ExpansionStep sa = expansion_step(T, f, a);
    ExpansionStep sb = expansion_step(T, f, b);
    CHECK(sa.correction == sb.correction);
    CHECK(ml_equal(T, conjugate(T, sa.shifted), sb.shifted));
    REQUIRE(sa.child_edges.size() == sb.child_edges.size());
    for (std::size_t i = 0; i < sa.child_edges.size(); ++i)
        CHECK(sa.child_edges[i].normal == sb.child_edges[i].normal);
}

TEST_CASE("segment support gives two opposite charts") {
    FieldTower T(5, 1);
    MultiLaurent f = ml(T, "x^2+x*y+y^2");
    Forest F = run_resolution(T, f);

    CHECK(F.polygon.dim == 1);
    CHECK(F.depth == 1);
    REQUIRE(F.nodes.size() == 2);
    for (const auto& n : F.nodes) {
        CHECK(up_equal(T, n.restrict_x, up(T, {1, 1, 1})));
        REQUIRE(n.roots.orbits.size() == 1);
        CHECK(n.roots.orbits[0].orbit_size == 2);
        CHECK(n.roots.orbits[0].multiplicity == 1);
    }
    CHECK(residue_degrees(F) == std::vector<unsigned>{2, 2});

    auto divs = divisor_points(T, F);
    REQUIRE(divs.size() == 2);
    for (const auto& d : divs) CHECK(up_degree(d.restriction) == 2);

    GenusReport g = genus_report(F);
    CHECK(g.dim == 1);
    CHECK(g.interior == 0);
    CHECK(orbit_audit(T, F).empty());
}

TEST_CASE("non-reduced input trips the iteration guard") {
    FieldTower T(2, 1);
    ResolutionOptions opt;
    opt.max_iterations = 5;
    CHECK_THROWS_AS(run_resolution(T, ml(T, "x^2+y^2"), opt), GuardError);
    CHECK_THROWS_AS(run_resolution(T, ml_zero(1, 2)), PreconditionError);
}

TEST_CASE("monomial input completes to the empty curve") {
    FieldTower T(3, 1);
    Forest F = run_resolution(T, ml(T, "x^2*y"));
    CHECK(F.polygon.dim == 0);
    CHECK(F.nodes.empty());
    CHECK(F.terminated);
    CHECK(places_at_infinity(F).empty());
    CHECK(smoothness_check(T, ml(T, "x^2*y")).smooth);
}

TEST_CASE("divisor points list the boundary orbits") {
    FieldTower T(2, 1);
    Forest F = run_resolution(T, ml(T, "x^4+1+y^2+y^3"),
                              [] {
                                  ResolutionOptions o;
                                  o.overrides.table[{1, 2}] = {1, 1};
                                  o.overrides.table[{1, 1}] = {1, 0};
                                  return o;
                              }());
    auto divs = divisor_points(T, F);
    REQUIRE(divs.size() == 3);
    CHECK(divs[0].normal == Vec2{0, 1});
    CHECK(up_equal(T, divs[0].restriction, up(T, {1, 0, 0, 0, 1})));
    REQUIRE(divs[0].roots.orbits.size() == 1);
    CHECK(divs[0].roots.orbits[0].multiplicity == 4);
    CHECK(divs[1].normal == Vec2{-3, -4});
    CHECK(up_equal(T, divs[1].restriction, up(T, {1, 1})));
    CHECK(divs[2].normal == Vec2{1, 0});
    CHECK(up_equal(T, divs[2].restriction, up(T, {1, 1, 0, 1})));
    CHECK(divs[2].roots.orbits[0].orbit_size == 3);
}

TEST_CASE("audit flags tampered chart data") {
    FieldTower T(5, 1);
    Forest F = run_resolution(T, ml(T, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3"));
    REQUIRE(orbit_audit(T, F).empty());

    Forest broken = F;
    broken.nodes[0].zero_mult = 7;
    CHECK_FALSE(orbit_audit(T, broken).empty());

    broken = F;
    broken.nodes[0].restrict_x = up(T, {1, 1});
    CHECK_FALSE(orbit_audit(T, broken).empty());

    broken = F;
    broken.nodes[0].roots.orbits[0].multiplicity = 1;
    CHECK_FALSE(orbit_audit(T, broken).empty());
}

TEST_CASE("status tokens") {
    CHECK(status_token(NodeStatus::OuterRegular) == "outer-regular");
    CHECK(status_token(NodeStatus::SingularRegularPoint) == "outer-singular-regular-point");
    CHECK(status_token(NodeStatus::SingularSingularPoint) == "outer-singular-singular-point");
}

TEST_CASE("singular curves yield checkable witnesses") {
    SUBCASE("rational double point") {
        FieldTower T(5, 1);
        MultiLaurent f = ml(T, "(x-1)^2+(y-1)^2");
        auto rep = smoothness_check(T, f);
        REQUIRE_FALSE(rep.smooth);
        REQUIRE(rep.witness.has_value());
        CHECK(up_equal(T, rep.witness->x_minpoly, up(T, {4, 1})));
        CHECK_FALSE(rep.witness->y_free);
        check_singular_witness(T, f, *rep.witness);
    }
    SUBCASE("cusp forces the elimination path") {
        FieldTower T(7, 1);
        MultiLaurent f = ml(T, "y^2+5*x*y+x^3+5*x^2+3*x+6");
        auto rep = smoothness_check(T, f);
        REQUIRE_FALSE(rep.smooth);
        REQUIRE(rep.witness.has_value());
        CHECK(up_equal(T, rep.witness->x_minpoly, up(T, {6, 1})));
        check_singular_witness(T, f, *rep.witness);
    }
    SUBCASE("squared line over GF(2) lands at a quadratic point") {
        FieldTower T(2, 1);
        MultiLaurent f = ml(T, "x^2+y^2+1");
        auto rep = smoothness_check(T, f);
        REQUIRE_FALSE(rep.smooth);
        REQUIRE(rep.witness.has_value());
        CHECK(up_equal(T, rep.witness->x_minpoly, up(T, {1, 1, 1})));
        CHECK_FALSE(rep.witness->y_free);
        REQUIRE(rep.witness->y_locus.size() == 3);
        CHECK(up_equal(T, rep.witness->y_locus[0], up(T, {0, 1})));
        CHECK(up_is_zero(rep.witness->y_locus[1]));
        CHECK(up_equal(T, rep.witness->y_locus[2], up(T, {1})));
    }
    SUBCASE("split product crosses itself") {
        FieldTower T(2, 1);
        MultiLaurent f = ml(T, "(1+x)*(1+y)");
        auto rep = smoothness_check(T, f);
        REQUIRE_FALSE(rep.smooth);
        REQUIRE(rep.witness.has_value());
        CHECK(up_equal(T, rep.witness->x_minpoly, up(T, {1, 1})));
        check_singular_witness(T, f, *rep.witness);
    }
    SUBCASE("repeated factor covers a whole line") {
        FieldTower T(2, 1);
        MultiLaurent f = ml(T, "(x^4+x^2+1)*(y+1)");
        auto rep = smoothness_check(T, f);
        REQUIRE_FALSE(rep.smooth);
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->y_free);
        CHECK(up_equal(T, rep.witness->x_minpoly, up(T, {1, 1, 1})));
    }
}

TEST_CASE("smooth curves pass every elimination branch") {
    SUBCASE("derivative collapses to a monomial") {
        FieldTower T(2, 1);
        CHECK(smoothness_check(T, ml(T, "x^4+1+y^2+y^3")).smooth);
    }
    SUBCASE("unit partial on a difference of squares") {
        FieldTower T(5, 1);
        CHECK(smoothness_check(T, ml(T, "y^2+4*x^2")).smooth);
    }
    SUBCASE("coprime pair through the resultant") {
        FieldTower T(5, 1);
        CHECK(smoothness_check(T, ml(T, "x^2*y+x*y^2+1")).smooth);
    }
    SUBCASE("two conics meeting only at the boundary") {
        FieldTower T(5, 1);
        CHECK(smoothness_check(T, ml(T, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3")).smooth);
    }
    SUBCASE("segment support meeting only off the torus") {
        FieldTower T(5, 1);
        CHECK(smoothness_check(T, ml(T, "x^2+x*y+y^2")).smooth);
    }
    SUBCASE("line") {
        FieldTower T(2, 1);
        CHECK(smoothness_check(T, ml(T, "x+y+1")).smooth);
    }
}

TEST_CASE("edge polynomials decide nondegeneracy") {
    FieldTower T(5, 1);
    auto rep = nondegeneracy_check(T, ml(T, "x^4+x^2*y^2+3*x^2*y+y^2+4*y^3"));
    CHECK(rep.smooth.smooth);
    CHECK_FALSE(rep.nondegenerate);
    int bad = 0;
    for (const auto& e : rep.edges)
        if (!e.squarefree) {
            ++bad;
            CHECK(e.normal == Vec2{1, 2});
        }
    CHECK(bad == 1);

    FieldTower T2(2, 1);
    auto line = nondegeneracy_check(T2, ml(T2, "x+y+1"));
    CHECK(line.nondegenerate);
    CHECK(line.edges.size() == 3);

    auto seg = nondegeneracy_check(T, ml(T, "x^2+x*y+y^2"));
    CHECK(seg.nondegenerate);
}
