#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "baker/fields.hpp"
#include "baker/lattice.hpp"
#include "baker/unipoly.hpp"

namespace baker {

// sparse Laurent polynomial; keys are exponent vectors of length nvars,
// every stored coefficient is nonzero and lifted to `level`
struct MultiLaurent {
    unsigned level = 1;
    int nvars = 2;
    std::map<std::vector<std::int64_t>, FqElem> terms;
    friend bool operator==(const MultiLaurent&, const MultiLaurent&) = default;
};

MultiLaurent ml_zero(unsigned level, int nvars);
bool ml_is_zero(const MultiLaurent& f);
MultiLaurent ml_lift(const FieldTower& T, const MultiLaurent& f, unsigned level);
void ml_add_term(const FieldTower& T, MultiLaurent& f, std::vector<std::int64_t> e, const FqElem& c);

MultiLaurent ml_add(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g);
MultiLaurent ml_sub(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g);
MultiLaurent ml_neg(const FieldTower& T, const MultiLaurent& f);
MultiLaurent ml_mul(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g);
MultiLaurent ml_scale(const FieldTower& T, const MultiLaurent& f, const FqElem& c);
bool ml_equal(const FieldTower& T, const MultiLaurent& f, const MultiLaurent& g);

// embed a univariate polynomial as a power series in variable `var`
MultiLaurent ml_from_unipoly(const FieldTower& T, const UniPoly& u, int nvars, int var);

// two-variable support, x exponent first
std::vector<Vec2> ml_support2(const MultiLaurent& f);

// min over the support of <v, e>; f must be nonzero
std::int64_t ml_ord(const MultiLaurent& f, const std::vector<std::int64_t>& v);
// terms attaining ml_ord
MultiLaurent ml_face(const MultiLaurent& f, const std::vector<std::int64_t>& v);

// var * d/dvar, taken termwise in characteristic p
MultiLaurent ml_partial_scaled(const FieldTower& T, const MultiLaurent& f, int var);

// x -> X^{M00} Y^{M01}, y -> X^{M10} Y^{M11} on a 2-variable input, i.e. the
// exponent map e -> M e, followed by factoring out the monomial content
struct MonomialImage {
    MultiLaurent g;
    std::int64_t shift_x = 0;
    std::int64_t shift_y = 0;
};
MonomialImage ml_monomial_substitute(const FieldTower& T, const MultiLaurent& f, const MatZ& M);

// exponent remap e -> R e for a rectangular R (rows = new arity); no content strip
MultiLaurent ml_monomial_map(const FieldTower& T, const MultiLaurent& f, const MatZ& R);

// multiply by the smallest monomial making all exponents nonnegative;
// returns the applied exponent shift per variable
std::vector<std::int64_t> ml_clear_denominators(MultiLaurent& f);

// X -> X + a - Y^corr on a 2-variable polynomial (corr = 0 drops the Y term)
MultiLaurent ml_shift_x(const FieldTower& T, const MultiLaurent& f, const FqElem& a,
                        std::int64_t corr = 0);

// Y -> 0 on a 2-variable polynomial; result is univariate in X
UniPoly ml_eval_y0(const FieldTower& T, const MultiLaurent& f);

// coefficient list along one variable of a 2-variable polynomial,
// indexed by that variable's exponent, entries univariate in the other
std::vector<UniPoly> ml_coeffs_in(const FieldTower& T, const MultiLaurent& f, int var);

// restriction to an edge of the Newton polygon: coefficients are read off the
// edge's lattice points in order, so the constant term sits at the start vertex
UniPoly ml_edge_restriction(const FieldTower& T, const MultiLaurent& f, const Edge& e);

// base-field coefficients; grammar: sums of terms in x, y, integers, and the
// field generator t, with ^, optional *, and parentheses
MultiLaurent ml_parse(const FieldTower& T, const std::string& text);
std::string ml_render(const FieldTower& T, const MultiLaurent& f,
                      const std::vector<std::string>& names = {"x", "y"});

}  // namespace baker
