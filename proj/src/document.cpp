#include "baker/document.hpp"

#include <json.hpp>

namespace baker {

namespace {

using json = nlohmann::ordered_json;

json vec2j(const Vec2& v) { return json::array({v[0], v[1]}); }

std::vector<std::string> generator_names(int nvars) {
    std::vector<std::string> names;
    for (int i = 1; i < nvars; ++i) names.push_back("X" + std::to_string(i));
    names.push_back("Y");
    return names;
}

json polygon_json(const LatticePolygon& P) {
    json jp;
    jp["vertices"] = json::array();
    for (const auto& v : P.vertices) jp["vertices"].push_back(vec2j(v));
    jp["edges"] = json::array();
    for (const auto& e : P.edges) {
        json je;
        je["endpoints"] = json::array({vec2j(e.a), vec2j(e.b)});
        je["normal"] = vec2j(e.normal);
        je["lattice_length"] = e.lattice_length;
        jp["edges"].push_back(je);
    }
    return jp;
}

json node_json(const FieldTower& T, const ChartNode& n, bool full) {
    json j;
    j["id"] = n.id;
    j["level"] = n.level;
    j["parent"] = n.parent;
    if (n.origin_root) {
        json r;
        r["minimal_poly"] = up_render(T, minimal_polynomial(T, n.origin_root->representative), "x");
        r["orbit_size"] = n.origin_root->orbit_size;
        r["multiplicity"] = n.origin_root->multiplicity;
        r["correction"] = n.correction;
        j["root"] = r;
    } else {
        j["root"] = nullptr;
    }
    j["beta"] = vec2j(n.beta);
    j["delta"] = vec2j(n.delta);
    j["F"] = ml_render(T, n.working, {"X", "Y"});
    j["f_restrict"] = up_render(T, n.restrict_x, "X");
    j["excluded_roots"] = n.zero_mult;
    j["status"] = status_token(n.status);
    if (full) {
        json meta;
        meta["matrix"] = json::array();
        for (const auto& row : n.matrix.rows) meta["matrix"].push_back(row);
        meta["ideal_generators"] = json::array();
        for (const auto& g : n.generators)
            meta["ideal_generators"].push_back(ml_render(T, g, generator_names(g.nvars)));
        j["meta"] = meta;
    } else {
        j["meta"] = nullptr;
    }
    return j;
}

json orbits_json(const FieldTower& T, const Forest& F) {
    json arr = json::array();
    for (const auto& p : places_at_infinity(F)) {
        const ChartNode& n = F.nodes[static_cast<std::size_t>(p.node)];
        const RootOrbit& orb = n.roots.orbits[p.orbit_index];
        json j;
        j["node"] = p.node;
        j["orbit_index"] = p.orbit_index;
        j["members"] = json::array();
        for (const auto& m : orbit_members(T, orb, n.restrict_x.level))
            j["members"].push_back(T.render(m));
        j["chain_degree"] = p.chain_degree;
        j["residue_degree"] = p.residue_degree;
        arr.push_back(j);
    }
    return arr;
}

unsigned first_level(const std::vector<RegularityRow>& rows, bool RegularityRow::* flag) {
    for (const auto& r : rows)
        if (r.*flag) return r.level;
    return 0;
}

json reports_json(const Forest& F) {
    auto rows = regularity_report(F);
    GenusReport g = genus_report(F);
    json j;
    j["outer_regular"] = first_level(rows, &RegularityRow::outer_regular);
    j["curve_regular"] = first_level(rows, &RegularityRow::curve_regular);
    j["interior_count"] = g.interior;
    j["genus"] = g.arithmetic_genus;
    j["levels"] = json::array();
    for (const auto& r : rows) {
        json jr;
        jr["level"] = r.level;
        jr["outer_regular"] = r.outer_regular;
        jr["curve_regular"] = r.curve_regular;
        jr["singular_nodes"] = r.singular_nodes;
        j["levels"].push_back(jr);
    }
    return j;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string polygon_document(const FieldTower& T, const std::string& field,
                             const MultiLaurent& norm, const LatticePolygon& P) {
    json doc;
    doc["field"] = field;
    doc["input"] = ml_render(T, norm);
    doc["polygon"] = polygon_json(P);
    doc["polygon"]["dim"] = P.dim;
    json ed = json::array();
    for (const auto& e : P.edges) ed.push_back(up_render(T, ml_edge_restriction(T, norm, e), "X"));
    doc["edge_restrictions"] = ed;
    return dump(doc);
}

std::string resolution_document(const FieldTower& T, const std::string& field, const Forest& F,
                                bool full_meta) {
    json doc;
    doc["field"] = field;
    doc["input"] = ml_render(T, F.input);
    doc["polygon"] = polygon_json(F.polygon);
    doc["nodes"] = json::array();
    for (const auto& n : F.nodes) doc["nodes"].push_back(node_json(T, n, full_meta));
    doc["orbits"] = orbits_json(T, F);
    doc["reports"] = reports_json(F);
    return dump(doc);
}

std::string places_document(const FieldTower& T, const std::string& field, const Forest& F) {
    json doc;
    doc["field"] = field;
    doc["orbits"] = orbits_json(T, F);
    json divs = json::array();
    for (const auto& d : divisor_points(T, F)) {
        json jd;
        jd["normal"] = vec2j(d.normal);
        jd["restriction"] = up_render(T, d.restriction, "X");
        json orbs = json::array();
        for (const auto& orb : d.roots.orbits) {
            json jo;
            jo["degree"] = orb.orbit_size;
            jo["multiplicity"] = orb.multiplicity;
            orbs.push_back(jo);
        }
        jd["closed_points"] = orbs;
        divs.push_back(jd);
    }
    doc["divisors"] = divs;
    return dump(doc);
}

std::string genus_document(const GenusReport& g) {
    json doc;
    doc["dim"] = g.dim;
    doc["interior_count"] = g.interior;
    doc["boundary_count"] = g.boundary;
    doc["doubled_area"] = g.area2;
    doc["genus"] = g.arithmetic_genus;
    return dump(doc);
}

std::string nondegeneracy_document(const FieldTower& T, const NondegeneracyReport& rep) {
    json doc;
    doc["smooth"] = rep.smooth.smooth;
    if (rep.smooth.witness) {
        const auto& w = *rep.smooth.witness;
        json jw;
        jw["x_minpoly"] = up_render(T, w.x_minpoly, "x");
        if (w.y_free) {
            jw["y_locus"] = nullptr;
        } else {
            json locus = json::array();
            for (const auto& c : w.y_locus) locus.push_back(up_render(T, c, "x"));
            jw["y_locus"] = locus;
        }
        jw["detail"] = w.detail;
        doc["witness"] = jw;
    } else {
        doc["witness"] = nullptr;
    }
    json edges = json::array();
    for (const auto& e : rep.edges) {
        json je;
        je["normal"] = vec2j(e.normal);
        je["squarefree"] = e.squarefree;
        edges.push_back(je);
    }
    doc["edges"] = edges;
    doc["nondegenerate"] = rep.nondegenerate;
    return dump(doc);
}

std::string superelliptic_document(const FieldTower& T, const std::string& field, const UniPoly& h,
                                   const SuperellipticReport& rep,
                                   const std::vector<std::string>* cross_check) {
    json doc;
    doc["field"] = field;
    doc["s"] = rep.s;
    doc["h"] = up_render(T, h, "x");
    doc["trailing"] = rep.trailing;
    doc["degree"] = rep.degree;
    doc["horizontal"] = rep.horizontal;
    doc["left_edge"] = up_render(T, rep.left_edge, "X");
    doc["right_edge"] = up_render(T, rep.right_edge, "X");
    json brs = json::array();
    for (const auto& b : rep.branches) {
        json jb;
        jb["minimal_poly"] = up_render(T, b.minimal, "x");
        jb["multiplicity"] = b.multiplicity;
        jb["branch_count"] = b.branch_count;
        jb["terminal"] = up_render(T, b.terminal, "X");
        jb["residue_degrees"] = b.residue_degrees;
        brs.push_back(jb);
    }
    doc["branches"] = brs;
    doc["residue_degrees"] = rep.residue_degrees;
    doc["outer_regular"] = rep.outer_regular_level;
    doc["genus"] = rep.genus;
    if (cross_check) doc["cross_check"] = *cross_check;
    return dump(doc);
}

}  // namespace baker
