#pragma once
#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "baker/errors.hpp"

namespace baker {

using Vec2 = std::array<std::int64_t, 2>;

struct Edge {
    Vec2 a{}, b{};                     // endpoints, counterclockwise
    Vec2 normal{};                     // primitive inward normal
    std::vector<Vec2> lattice_points;  // a to b inclusive; steps by (normal[1], -normal[0])
    std::int64_t lattice_length = 0;
};

struct LatticePolygon {
    std::vector<Vec2> vertices;  // counterclockwise, starting at the lexicographic minimum
    int dim = 0;                 // 0 point, 1 segment, 2 polygon
    std::vector<Edge> edges;     // dim 1 gives the two orientations of the segment
};

LatticePolygon newton_polygon(std::vector<Vec2> support);
std::int64_t interior_lattice_count(const LatticePolygon& P);
std::int64_t boundary_lattice_count(const LatticePolygon& P);
std::int64_t polygon_area2(const LatticePolygon& P);  // twice the area

// per-run replacements for the canonical completion, keyed by beta
struct DeltaOverrides {
    std::map<Vec2, Vec2> table;
};

// delta with delta[0]*beta[1] - delta[1]*beta[0] = 1; beta primitive
Vec2 delta_of_beta(const Vec2& beta);
Vec2 delta_of_beta(const Vec2& beta, const DeltaOverrides& ov);

struct MatZ {
    std::vector<std::vector<std::int64_t>> rows;
    std::size_t size() const { return rows.size(); }
    friend bool operator==(const MatZ&, const MatZ&) = default;
};

MatZ mat_identity(std::size_t k);
MatZ mat_mul(const MatZ& A, const MatZ& B);
std::int64_t mat_det(const MatZ& A);
MatZ mat_inverse_unimodular(const MatZ& A);  // requires det = +-1
std::vector<std::int64_t> mat_apply(const MatZ& A, const std::vector<std::int64_t>& v);

// SL_n completion with last row v (v primitive)
MatZ matrix_attached(const std::vector<std::int64_t>& v);
MatZ matrix_attached(const std::vector<std::int64_t>& v, const DeltaOverrides& ov);
// (I_{k-2} ⊕ B) * M for 2x2 B
MatZ compose_block(const MatZ& B, const MatZ& M);

}  // namespace baker
