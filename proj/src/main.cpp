#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "baker/document.hpp"

using namespace baker;
using json = nlohmann::ordered_json;
using i64 = std::int64_t;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveArgs {
    std::string field;
    std::string poly;
    std::string poly_file;
    std::string mode = "minimal";
    std::string format = "text";
    std::string out;
    std::string delta_file;
    std::string matrix_file;
    unsigned max_iterations = 64;
    bool assert_connected = false;
};

void add_field_option(CLI::App* cmd, CurveArgs& a) {
    cmd->add_option("--field", a.field, "coefficient field: q, p^n, or p^n:c0,c1,...,1")
        ->required();
}

void add_poly_options(CLI::App* cmd, CurveArgs& a) {
    cmd->add_option("--poly", a.poly, "defining polynomial in x and y");
    cmd->add_option("--poly-file", a.poly_file, "file holding the defining polynomial");
}

void add_output_options(CLI::App* cmd, CurveArgs& a, const std::string& formats) {
    cmd->add_option("--format", a.format, "output format: " + formats);
    cmd->add_option("--out", a.out, "write output to this file instead of stdout");
}

void add_resolution_options(CLI::App* cmd, CurveArgs& a) {
    cmd->add_option("--mode", a.mode, "chart bookkeeping: minimal or full");
    cmd->add_option("--max-iterations", a.max_iterations, "bound on the chart tower depth");
    cmd->add_option("--delta-override", a.delta_file, "JSON file with completion overrides");
    cmd->add_option("--matrix-override", a.matrix_file, "JSON file with chart matrix overrides");
    cmd->add_flag("--assert-connected", a.assert_connected,
                  "fail unless the support polygon is two-dimensional");
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out);
    if (!os) throw IoError("cannot open " + out + " for writing");
    os << text;
    if (!os) throw IoError("write to " + out + " failed");
}

std::string read_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

MultiLaurent load_curve(const FieldTower& T, const CurveArgs& a) {
    std::string text = a.poly;
    if (!a.poly_file.empty()) {
        if (!text.empty()) throw ParseError("give either --poly or --poly-file, not both");
        text = read_file(a.poly_file);
    }
    if (text.empty()) throw ParseError("no polynomial given; use --poly or --poly-file");
    return ml_parse(T, text);
}

json parse_json_file(const std::string& path) {
    std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Vec2 json_vec2(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError(what + " must be a pair of integers");
    return {j[0].get<i64>(), j[1].get<i64>()};
}

DeltaOverrides load_overrides(const CurveArgs& a) {
    DeltaOverrides ov;
    if (!a.delta_file.empty()) {
        json doc = parse_json_file(a.delta_file);
        if (!doc.contains("delta") || !doc["delta"].is_array())
            throw ParseError(a.delta_file + ": expected a top-level delta array");
        for (const auto& e : doc["delta"]) {
            Vec2 beta = json_vec2(e.value("beta", json()), "beta");
            Vec2 delta = json_vec2(e.value("delta", json()), "delta");
            if (delta[0] * beta[1] - delta[1] * beta[0] != 1)
                throw ParseError("override for (" + std::to_string(beta[0]) + "," +
                                 std::to_string(beta[1]) + ") is not a completion");
            ov.table[beta] = delta;
        }
    }
    if (!a.matrix_file.empty()) {
        json doc = parse_json_file(a.matrix_file);
        if (!doc.contains("matrix") || !doc["matrix"].is_array())
            throw ParseError(a.matrix_file + ": expected a top-level matrix array");
        for (const auto& e : doc["matrix"]) {
            Vec2 v = json_vec2(e.value("v", json()), "v");
            if (!e.contains("rows") || !e["rows"].is_array() || e["rows"].size() != 2)
                throw ParseError("matrix override needs two rows");
            Vec2 top = json_vec2(e["rows"][0], "matrix row");
            Vec2 bot = json_vec2(e["rows"][1], "matrix row");
            if (bot != v) throw ParseError("matrix override must have v as its bottom row");
            if (top[0] * bot[1] - top[1] * bot[0] != 1)
                throw ParseError("matrix override must have determinant 1");
            ov.table[v] = top;
        }
    }
    return ov;
}

ResolutionOptions make_options(const CurveArgs& a) {
    ResolutionOptions opt;
    if (a.mode == "minimal")
        opt.mode = ChartMode::Minimal;
    else if (a.mode == "full")
        opt.mode = ChartMode::FullCharts;
    else
        throw ParseError("unknown mode " + a.mode);
    opt.max_iterations = a.max_iterations;
    opt.overrides = load_overrides(a);
    return opt;
}

void check_connected(const CurveArgs& a, const MultiLaurent& f) {
    if (!a.assert_connected) return;
    if (newton_polygon(ml_support2(f)).dim < 2)
        throw PreconditionError(
            "the support polygon is not two-dimensional, so connectedness is not guaranteed");
}

std::string vec2s(const Vec2& v) {
    return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
}

// lead coefficient, the discarded power of X, then the monic irreducible factors
std::string factored_restriction(const FieldTower& T, const ChartNode& n) {
    std::vector<std::string> parts;
    FqElem lead = up_lead(T, n.restrict_x);
    if (!T.is_one(lead)) parts.push_back(T.render(lead));
    if (n.zero_mult == 1) parts.push_back("X");
    if (n.zero_mult > 1) parts.push_back("X^" + std::to_string(n.zero_mult));
    UniPoly rest = n.restrict_x;
    if (up_degree(rest) >= 1)
        for (const auto& [irr, m] : factor(T, rest)) {
            if (up_degree(irr) == 1 && T.is_zero(up_coeff(T, irr, 0))) continue;
            std::string p = "(" + up_render(T, irr, "X") + ")";
            if (m > 1) p += "^" + std::to_string(m);
            parts.push_back(p);
        }
    if (parts.empty()) parts.push_back(T.render(lead));
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " " : "") + parts[i];
    return out;
}

std::string dot_output(const FieldTower& T, const Forest& F) {
    std::ostringstream os;
    os << "digraph charts {\n  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& n : F.nodes) {
        os << "  n" << n.id << " [label=\"" << vec2s(n.beta) << "  level " << n.level
           << "\\nf| = " << factored_restriction(T, n) << "\\n" << status_token(n.status)
           << "\"];\n";
    }
    for (const auto& n : F.nodes)
        for (const auto& [oi, kids] : n.expansions) {
            std::string root = T.render(n.roots.orbits[oi].representative);
            for (int k : kids) {
                os << "  n" << n.id << " -> n" << k << " [label=\"a=" << root << ", b="
                   << vec2s(F.nodes[static_cast<std::size_t>(k)].beta) << "\"];\n";
            }
        }
    os << "}\n";
    return os.str();
}

std::string chart_path(const Forest& F, int id) {
    std::vector<int> path;
    for (int cur = id; cur >= 0; cur = F.nodes[static_cast<std::size_t>(cur)].parent)
        path.push_back(cur);
    std::string out;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        out += (it == path.rbegin() ? "" : "/") + std::to_string(*it);
    return out;
}

std::string forest_text(const FieldTower& T, const Forest& F) {
    std::ostringstream os;
    os << "polygon:";
    for (const auto& v : F.polygon.vertices) os << " " << vec2s(v);
    os << "  [dim " << F.polygon.dim << "]\n";
    os << "charts:\n";
    for (const auto& n : F.nodes) {
        os << "  [" << n.id << "] level " << n.level;
        if (n.parent >= 0) os << " parent " << n.parent;
        os << "  b=" << vec2s(n.beta) << " d=" << vec2s(n.delta);
        if (n.correction > 0) os << " corr=" << n.correction;
        os << "\n      F  = " << ml_render(T, n.working, {"X", "Y"}) << "\n      f| = "
           << factored_restriction(T, n) << "\n      " << status_token(n.status) << "\n";
        for (const auto& [oi, kids] : n.expansions) {
            os << "      expands a=" << T.render(n.roots.orbits[oi].representative) << " ->";
            for (int k : kids) os << " [" << k << "]";
            os << "\n";
        }
    }
    os << "terminated at level " << F.depth << "\n";
    return os.str();
}

std::string places_text(const FieldTower& T, const Forest& F) {
    std::ostringstream os;
    auto places = places_at_infinity(F);
    os << "places at infinity: " << places.size() << "\n";
    os << "  chart        level  beta      minimal poly            orbit  chain  residue\n";
    for (const auto& p : places) {
        const ChartNode& n = F.nodes[static_cast<std::size_t>(p.node)];
        const RootOrbit& orb = n.roots.orbits[p.orbit_index];
        std::string path = chart_path(F, p.node);
        std::string mp = up_render(T, minimal_polynomial(T, orb.representative), "x");
        os << "  " << path << std::string(path.size() < 13 ? 13 - path.size() : 1, ' ')
           << n.level << "      " << vec2s(n.beta)
           << std::string(vec2s(n.beta).size() < 10 ? 10 - vec2s(n.beta).size() : 1, ' ') << mp
           << std::string(mp.size() < 24 ? 24 - mp.size() : 1, ' ') << orb.orbit_size
           << "      " << p.chain_degree << "      " << p.residue_degree << "\n";
    }
    os << "boundary divisors:\n";
    for (const auto& d : divisor_points(T, F)) {
        os << "  normal " << vec2s(d.normal) << ": restriction " << up_render(T, d.restriction, "X")
           << ", closed points";
        for (const auto& orb : d.roots.orbits)
            os << " (deg " << orb.orbit_size << ", mult " << orb.multiplicity << ")";
        if (d.roots.orbits.empty()) os << " none";
        os << "\n";
    }
    return os.str();
}

int run_polygon(const CurveArgs& a) {
    FieldTower T(parse_field_spec(a.field));
    MultiLaurent f = load_curve(T, a);
    if (ml_is_zero(f)) throw PreconditionError("the zero polynomial does not define a curve");
    MultiLaurent norm = ml_monomial_substitute(T, f, mat_identity(2)).g;
    LatticePolygon P = newton_polygon(ml_support2(norm));
    if (a.format == "json") {
        emit(polygon_document(T, a.field, norm, P), a.out);
    } else if (a.format == "text") {
        std::ostringstream os;
        os << "dim " << P.dim << "\nvertices:";
        for (const auto& v : P.vertices) os << " " << vec2s(v);
        os << "\nedges:\n";
        for (const auto& e : P.edges)
            os << "  normal " << vec2s(e.normal) << ", length " << e.lattice_length
               << ", restriction " << up_render(T, ml_edge_restriction(T, norm, e), "X") << "\n";
        os << "interior " << interior_lattice_count(P) << ", boundary "
           << boundary_lattice_count(P) << ", doubled area " << polygon_area2(P) << "\n";
        emit(os.str(), a.out);
    } else {
        throw ParseError("unknown format " + a.format);
    }
    return 0;
}

int run_check(const CurveArgs& a) {
    FieldTower T(parse_field_spec(a.field));
    MultiLaurent f = load_curve(T, a);
    auto rep = nondegeneracy_check(T, f);
    if (a.format == "json") {
        emit(nondegeneracy_document(T, rep), a.out);
    } else if (a.format == "text") {
        std::ostringstream os;
        os << "smooth in the torus: " << (rep.smooth.smooth ? "yes" : "no") << "\n";
        if (rep.smooth.witness) {
            const auto& w = *rep.smooth.witness;
            os << "  singular above x: " << up_render(T, w.x_minpoly, "x") << " (" << w.detail
               << ")\n";
            if (w.y_free) {
                os << "  y: unconstrained\n";
            } else {
                os << "  y cut out by:";
                for (std::size_t i = 0; i < w.y_locus.size(); ++i)
                    os << (i ? " + (" : " (") << up_render(T, w.y_locus[i], "x") << ")*Y^" << i;
                os << "\n";
            }
        }
        for (const auto& e : rep.edges)
            if (!e.squarefree)
                os << "  edge " << vec2s(e.normal) << ": repeated boundary factor\n";
        os << "nondegenerate: " << (rep.nondegenerate ? "yes" : "no") << "\n";
        emit(os.str(), a.out);
    } else {
        throw ParseError("unknown format " + a.format);
    }
    return 0;
}

int run_resolve(const CurveArgs& a, bool force_full) {
    FieldTower T(parse_field_spec(a.field));
    MultiLaurent f = load_curve(T, a);
    check_connected(a, f);
    ResolutionOptions opt = make_options(a);
    if (force_full) opt.mode = ChartMode::FullCharts;
    Forest F = run_resolution(T, f, opt);
    bool full = opt.mode == ChartMode::FullCharts;
    std::string format = force_full ? "json" : a.format;
    if (format == "json")
        emit(resolution_document(T, a.field, F, full), a.out);
    else if (format == "dot")
        emit(dot_output(T, F), a.out);
    else if (format == "text")
        emit(forest_text(T, F), a.out);
    else
        throw ParseError("unknown format " + a.format);
    return 0;
}

int run_points(const CurveArgs& a) {
    FieldTower T(parse_field_spec(a.field));
    MultiLaurent f = load_curve(T, a);
    check_connected(a, f);
    Forest F = run_resolution(T, f, make_options(a));
    if (a.format == "json")
        emit(places_document(T, a.field, F), a.out);
    else if (a.format == "text")
        emit(places_text(T, F), a.out);
    else
        throw ParseError("unknown format " + a.format);
    return 0;
}

int run_genus(const CurveArgs& a) {
    FieldTower T(parse_field_spec(a.field));
    MultiLaurent f = load_curve(T, a);
    check_connected(a, f);
    Forest F = run_resolution(T, f, make_options(a));
    GenusReport g = genus_report(F);
    if (a.format == "json") {
        emit(genus_document(g), a.out);
    } else if (a.format == "text") {
        std::ostringstream os;
        os << "dim " << g.dim << "; interior " << g.interior << "; boundary " << g.boundary
           << "; doubled area " << g.area2 << "; arithmetic genus " << g.arithmetic_genus << "\n";
        emit(os.str(), a.out);
    } else {
        throw ParseError("unknown format " + a.format);
    }
    return 0;
}

struct SuperArgs {
    std::string field;
    unsigned s = 0;
    std::string h;
    std::string format = "text";
    std::string out;
    bool cross = false;
};

UniPoly parse_branch_poly(const FieldTower& T, const std::string& text) {
    MultiLaurent f = ml_parse(T, text);
    for (const auto& [e, c] : f.terms)
        if (e[0] < 0 || e[1] != 0)
            throw ParseError("the branch polynomial must be a polynomial in x alone");
    if (ml_is_zero(f)) return up_zero();
    return ml_coeffs_in(T, f, 1).front();
}

int run_superelliptic(const SuperArgs& a) {
    FieldTower T(parse_field_spec(a.field));
    UniPoly h = parse_branch_poly(T, a.h);
    SuperellipticReport rep = superelliptic_analyze(T, a.s, h);
    std::vector<std::string> mismatches;
    if (a.cross) mismatches = superelliptic_cross_check(T, a.s, h);
    if (a.format == "json") {
        emit(superelliptic_document(T, a.field, h, rep, a.cross ? &mismatches : nullptr), a.out);
    } else if (a.format == "text") {
        std::ostringstream os;
        os << "cover y^" << rep.s << " = " << up_render(T, h, "x") << " over " << a.field << "\n";
        os << "trailing " << rep.trailing << ", degree " << rep.degree << ", horizontal "
           << (rep.horizontal ? "yes" : "no") << "\n";
        os << "left edge:  " << up_render(T, rep.left_edge, "X") << "\n";
        os << "right edge: " << up_render(T, rep.right_edge, "X") << "\n";
        for (const auto& b : rep.branches) {
            os << "branch " << up_render(T, b.minimal, "x") << ": multiplicity " << b.multiplicity
               << ", branches " << b.branch_count << ", terminal "
               << up_render(T, b.terminal, "X") << ", residues";
            for (unsigned d : b.residue_degrees) os << " " << d;
            os << "\n";
        }
        os << "places:";
        for (unsigned d : rep.residue_degrees) os << " " << d;
        os << "\nouter regular at level " << rep.outer_regular_level << "; genus " << rep.genus
           << "\n";
        if (a.cross) os << "cross-check: " << (mismatches.empty() ? "ok" : "FAILED") << "\n";
        emit(os.str(), a.out);
    } else {
        throw ParseError("unknown format " + a.format);
    }
    if (!mismatches.empty()) {
        for (const auto& m : mismatches) std::cerr << "cross-check: " << m << "\n";
        throw GuardError("closed forms disagree with the chart tower");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary resolution of plane curves over finite fields"};
    app.require_subcommand(1);

    CurveArgs poly_a, check_a, resolve_a, points_a, genus_a, export_a;
    SuperArgs super_a;

    auto* c_polygon = app.add_subcommand("polygon", "support polygon and edge data");
    add_field_option(c_polygon, poly_a);
    add_poly_options(c_polygon, poly_a);
    add_output_options(c_polygon, poly_a, "text, json");

    auto* c_check = app.add_subcommand("check", "smoothness and nondegeneracy");
    add_field_option(c_check, check_a);
    add_poly_options(c_check, check_a);
    add_output_options(c_check, check_a, "text, json");

    auto* c_resolve = app.add_subcommand("resolve", "build the boundary chart tower");
    add_field_option(c_resolve, resolve_a);
    add_poly_options(c_resolve, resolve_a);
    add_resolution_options(c_resolve, resolve_a);
    add_output_options(c_resolve, resolve_a, "text, json, dot");

    auto* c_points = app.add_subcommand("points", "places at infinity");
    add_field_option(c_points, points_a);
    add_poly_options(c_points, points_a);
    add_resolution_options(c_points, points_a);
    add_output_options(c_points, points_a, "text, json");

    auto* c_genus = app.add_subcommand("genus", "lattice counts and arithmetic genus");
    add_field_option(c_genus, genus_a);
    add_poly_options(c_genus, genus_a);
    add_resolution_options(c_genus, genus_a);
    add_output_options(c_genus, genus_a, "text, json");

    auto* c_super = app.add_subcommand("superelliptic", "closed forms for y^s = h(x)");
    c_super->set_help_flag("--help", "print help");
    c_super->add_option("--field", super_a.field, "coefficient field")->required();
    c_super->add_option("--s", super_a.s, "cover degree")->required();
    c_super->add_option("--h", super_a.h, "branch polynomial in x")->required();
    c_super->add_flag("--cross-check", super_a.cross, "replay against the generic chart tower");
    c_super->add_option("--format", super_a.format, "output format: text, json");
    c_super->add_option("--out", super_a.out, "write output to this file instead of stdout");

    auto* c_export = app.add_subcommand("export", "full JSON document with chart matrices");
    add_field_option(c_export, export_a);
    add_poly_options(c_export, export_a);
    add_resolution_options(c_export, export_a);
    c_export->add_option("--out", export_a.out, "write output to this file instead of stdout");

    try {
        app.parse(argc, argv);
        if (c_polygon->parsed()) return run_polygon(poly_a);
        if (c_check->parsed()) return run_check(check_a);
        if (c_resolve->parsed()) return run_resolve(resolve_a, false);
        if (c_points->parsed()) return run_points(points_a);
        if (c_genus->parsed()) return run_genus(genus_a);
        if (c_super->parsed()) return run_superelliptic(super_a);
        if (c_export->parsed()) return run_resolve(export_a, true);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return 3;
    } catch (const GuardError& e) {
        std::cerr << "guard tripped: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
