#include "baker/superelliptic.hpp"

#include <algorithm>
#include <numeric>

namespace baker {
namespace {

using i64 = std::int64_t;

i64 trailing_exponent(const FieldTower& T, const UniPoly& h) {
    i64 d = 0;
    while (T.is_zero(up_coeff(T, h, static_cast<unsigned>(d)))) ++d;
    return d;
}

void check_args(const FieldTower& T, unsigned s, const UniPoly& h) {
    if (s < 2) throw PreconditionError("the cover degree must be at least 2");
    if (s % T.p() == 0)
        throw PreconditionError("the cover degree must be prime to the characteristic");
    if (up_is_zero(h)) throw PreconditionError("the branch polynomial must be nonzero");
}

}  // namespace

MultiLaurent superelliptic_curve(const FieldTower& T, unsigned s, const UniPoly& h) {
    check_args(T, s, h);
    MultiLaurent f = ml_zero(h.level, 2);
    ml_add_term(T, f, {0, static_cast<i64>(s)}, T.one(h.level));
    for (i64 j = 0; j <= up_degree(h); ++j) {
        FqElem c = up_coeff(T, h, static_cast<unsigned>(j));
        if (!T.is_zero(c)) ml_add_term(T, f, {j, 0}, T.neg(c));
    }
    return f;
}

SuperellipticReport superelliptic_analyze(const FieldTower& T, unsigned s, const UniPoly& h) {
    check_args(T, s, h);
    SuperellipticReport rep;
    rep.s = s;
    rep.trailing = trailing_exponent(T, h);
    rep.degree = up_degree(h);
    rep.horizontal = rep.trailing < rep.degree;

    i64 l1 = std::gcd(rep.trailing, static_cast<i64>(s));
    std::vector<FqElem> lc(static_cast<std::size_t>(l1) + 1, T.zero(h.level));
    lc.front() = T.one(h.level);
    lc.back() = T.neg(up_coeff(T, h, static_cast<unsigned>(rep.trailing)));
    rep.left_edge = up_make(T, h.level, std::move(lc));

    i64 l2 = std::gcd(rep.degree, static_cast<i64>(s));
    std::vector<FqElem> rc(static_cast<std::size_t>(l2) + 1, T.zero(h.level));
    rc.front() = T.neg(up_lead(T, h));
    rc.back() = T.one(h.level);
    rep.right_edge = up_make(T, h.level, std::move(rc));

    for (const auto& g : {rep.left_edge, rep.right_edge})
        for (const auto& [irr, mult] : factor(T, g))
            for (unsigned k = 0; k < mult; ++k)
                rep.residue_degrees.push_back(static_cast<unsigned>(up_degree(irr)));

    for (const auto& orb : roots_in_closure(T, h, true).orbits) {
        BranchOrbit br;
        br.minimal = minimal_polynomial(T, orb.representative);
        br.multiplicity = orb.multiplicity;
        br.branch_count = static_cast<unsigned>(
            std::gcd(static_cast<i64>(orb.multiplicity), static_cast<i64>(s)));
        if (br.multiplicity >= 2) rep.outer_regular_level = 2;

        unsigned lv = std::lcm(h.level, orb.representative.level);
        FqElem r = T.embed(orb.representative, lv);
        UniPoly lin = up_make(T, lv, {T.neg(r), T.one(lv)});
        UniPoly rest = up_quo(T, up_lift(T, h, lv), up_pow(T, lin, orb.multiplicity));
        FqElem a = up_eval(T, rest, r);

        std::vector<FqElem> tc(br.branch_count + 1, T.zero(lv));
        tc.front() = T.one(lv);
        tc.back() = T.neg(a);
        br.terminal = up_make(T, lv, std::move(tc));
        for (const auto& [irr, mult] : factor(T, br.terminal)) {
            (void)mult;  // squarefree since s is prime to the characteristic
            unsigned d = orb.orbit_size * static_cast<unsigned>(up_degree(irr));
            br.residue_degrees.push_back(d);
            rep.residue_degrees.push_back(d);
        }
        std::sort(br.residue_degrees.begin(), br.residue_degrees.end());
        rep.branches.push_back(std::move(br));
    }
    std::sort(rep.residue_degrees.begin(), rep.residue_degrees.end());

    LatticePolygon P = newton_polygon(ml_support2(superelliptic_curve(T, s, h)));
    rep.genus = interior_lattice_count(P);
    return rep;
}

std::vector<std::string> superelliptic_cross_check(const FieldTower& T, unsigned s,
                                                   const UniPoly& h) {
    SuperellipticReport rep = superelliptic_analyze(T, s, h);
    Forest F = run_resolution(T, superelliptic_curve(T, s, h));
    std::vector<std::string> bad;

    std::vector<unsigned> generic;
    for (const auto& p : places_at_infinity(F)) generic.push_back(p.residue_degree);
    std::sort(generic.begin(), generic.end());
    if (generic != rep.residue_degrees) bad.push_back("place degrees disagree");

    if (F.depth != rep.outer_regular_level) bad.push_back("outer-regular level disagrees");
    auto rows = regularity_report(F);
    if (!rows.empty() && !rows.back().outer_regular)
        bad.push_back("the final level is not outer regular");
    for (std::size_t i = 0; i + 1 < rows.size(); ++i)
        if (rows[i].outer_regular) bad.push_back("an inner level is already outer regular");

    if (genus_report(F).interior != rep.genus) bad.push_back("genus disagrees");
    for (auto& msg : orbit_audit(T, F)) bad.push_back("audit: " + msg);
    return bad;
}

}  // namespace baker
