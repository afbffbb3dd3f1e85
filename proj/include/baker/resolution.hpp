#pragma once
#include <optional>
#include <string>
#include <vector>

#include "baker/laurent.hpp"

namespace baker {

enum class ChartMode { Minimal, FullCharts };

// per-chart classification of the expanded points
enum class NodeStatus {
    OuterRegular,           // no multiple roots off the origin
    SingularRegularPoint,   // multiple roots, each a regular point of the chart curve
    SingularSingularPoint,  // some multiple root is a singular point of the chart curve
};
std::string status_token(NodeStatus s);

struct ChartNode {
    int id = 0;
    int parent = -1;  // -1 for the per-edge top charts
    unsigned level = 1;
    Vec2 beta{};   // edge normal this chart came from
    Vec2 delta{};  // completion used for the substitution
    std::optional<RootOrbit> origin_root;  // root expanded at the parent
    std::int64_t correction = 0;           // exponent of the shift correction, 0 = none
    MultiLaurent working;                  // chart curve in (X, Y)
    UniPoly restrict_x;                    // working at Y = 0
    std::int64_t zero_mult = 0;            // multiplicity of the discarded root at X = 0
    RootReport roots;                      // nonzero roots of restrict_x
    NodeStatus status = NodeStatus::OuterRegular;
    std::vector<int> children;
    // orbit index -> ids of the charts expanding that orbit
    std::vector<std::pair<std::size_t, std::vector<int>>> expansions;
    // populated in FullCharts mode
    MatZ matrix;
    std::vector<MultiLaurent> generators;
};

struct Forest {
    LatticePolygon polygon;
    MultiLaurent input;  // monomial-content-free form of the defining polynomial
    std::vector<ChartNode> nodes;  // indexed by id, breadth-first by level
    bool terminated = false;
    unsigned depth = 0;
};

struct ResolutionOptions {
    ChartMode mode = ChartMode::Minimal;
    unsigned max_iterations = 64;
    DeltaOverrides overrides;
};

Forest run_resolution(const FieldTower& T, const MultiLaurent& f,
                      const ResolutionOptions& opt = {});

// one shift-and-repolygon step; exposed so conjugate expansions can be compared
struct ExpansionStep {
    FqElem root;
    std::int64_t correction = 0;
    MultiLaurent shifted;
    LatticePolygon polygon;
    std::vector<Edge> child_edges;  // strictly positive normals, ordered by normal
};
ExpansionStep expansion_step(const FieldTower& T, const MultiLaurent& working, const FqElem& root);

// places above the boundary: one row per simple-root orbit in the finished forest
struct BoundaryPlace {
    int node = 0;
    std::size_t orbit_index = 0;
    unsigned chain_degree = 1;    // degree over the base of the field the chart is cut over
    unsigned residue_degree = 1;  // chain degree times the orbit size
};
std::vector<BoundaryPlace> places_at_infinity(const Forest& F);

// closed points of the completed curve on each boundary divisor, from level-1 data
struct DivisorPoints {
    Vec2 normal{};
    UniPoly restriction;
    RootReport roots;  // nonzero roots, orbit size = residue degree
};
std::vector<DivisorPoints> divisor_points(const FieldTower& T, const Forest& F);

struct RegularityRow {
    unsigned level = 1;
    bool outer_regular = false;  // no chart at this level has a multiple root
    bool curve_regular = false;  // no multiple root is a singular chart point
    std::vector<int> singular_nodes;
};
std::vector<RegularityRow> regularity_report(const Forest& F);

struct GenusReport {
    int dim = 0;
    std::int64_t interior = 0;
    std::int64_t boundary = 0;
    std::int64_t area2 = 0;
    std::int64_t arithmetic_genus = 0;  // lattice interior count when dim = 2
};
GenusReport genus_report(const Forest& F);

// recheck the stored root data, restriction identities, and child bookkeeping
std::vector<std::string> orbit_audit(const FieldTower& T, const Forest& F);

// common zero of the curve with both scaled partials, off the coordinate axes
struct SingularWitness {
    UniPoly x_minpoly;             // irreducible, not X itself
    std::vector<UniPoly> y_locus;  // y-polynomial over k[x]/(x_minpoly); empty with y_free
    bool y_free = false;           // the whole line above x_minpoly lies on the locus
    std::string detail;
};
struct SmoothnessReport {
    bool smooth = false;
    std::optional<SingularWitness> witness;
};
SmoothnessReport smoothness_check(const FieldTower& T, const MultiLaurent& f);

struct EdgeSquarefree {
    Vec2 normal{};
    bool squarefree = false;
};
struct NondegeneracyReport {
    SmoothnessReport smooth;
    std::vector<EdgeSquarefree> edges;
    bool nondegenerate = false;
};
NondegeneracyReport nondegeneracy_check(const FieldTower& T, const MultiLaurent& f);

// chart point (a, 0) is a regular curve point
bool chart_point_regular(const FieldTower& T, const MultiLaurent& working, const FqElem& a);

}  // namespace baker
