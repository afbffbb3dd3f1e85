#pragma once
#include <string>
#include <utility>
#include <vector>

#include "baker/fields.hpp"

namespace baker {

// Dense univariate polynomial over one tower level; coefficients lowest
// first, trailing zeros trimmed (empty vector = zero polynomial).
struct UniPoly {
    unsigned level = 1;
    std::vector<FqElem> c;
    friend bool operator==(const UniPoly&, const UniPoly&) = default;
};

UniPoly up_make(const FieldTower& T, unsigned level, std::vector<FqElem> coeffs);
UniPoly up_from_ints(const FieldTower& T, const std::vector<std::int64_t>& coeffs);
UniPoly up_zero(unsigned level = 1);
UniPoly up_x(const FieldTower& T, unsigned level = 1);

int up_degree(const UniPoly& f);  // -1 for the zero polynomial
bool up_is_zero(const UniPoly& f);
bool up_is_one(const FieldTower& T, const UniPoly& f);
FqElem up_coeff(const FieldTower& T, const UniPoly& f, unsigned i);
FqElem up_lead(const FieldTower& T, const UniPoly& f);

UniPoly up_lift(const FieldTower& T, const UniPoly& f, unsigned level);
UniPoly up_add(const FieldTower& T, const UniPoly& a, const UniPoly& b);
UniPoly up_sub(const FieldTower& T, const UniPoly& a, const UniPoly& b);
UniPoly up_neg(const FieldTower& T, const UniPoly& a);
UniPoly up_mul(const FieldTower& T, const UniPoly& a, const UniPoly& b);
UniPoly up_scale(const FieldTower& T, const UniPoly& a, const FqElem& c);
void up_divrem(const FieldTower& T, const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);
UniPoly up_quo(const FieldTower& T, const UniPoly& a, const UniPoly& b);
UniPoly up_rem(const FieldTower& T, const UniPoly& a, const UniPoly& b);
UniPoly up_gcd(const FieldTower& T, const UniPoly& a, const UniPoly& b);  // monic or zero
UniPoly up_monic(const FieldTower& T, const UniPoly& f);
UniPoly up_pow(const FieldTower& T, const UniPoly& f, unsigned e);
UniPoly up_derivative(const FieldTower& T, const UniPoly& f);
FqElem up_eval(const FieldTower& T, const UniPoly& f, const FqElem& x);
UniPoly up_shift(const FieldTower& T, const UniPoly& f, const FqElem& a);  // f(X+a)
bool up_equal(const FieldTower& T, const UniPoly& a, const UniPoly& b);
std::string up_render(const FieldTower& T, const UniPoly& f, const std::string& var);

// pairwise-coprime squarefree parts: f = lc * prod g_i^{m_i}
std::vector<std::pair<UniPoly, unsigned>> squarefree_decomposition(const FieldTower& T,
                                                                   const UniPoly& f);
// monic irreducible factors, ordered by (degree, coefficient sequence)
std::vector<std::pair<UniPoly, unsigned>> factor(const FieldTower& T, const UniPoly& f);
bool is_irreducible(const FieldTower& T, const UniPoly& f);

// one root of f inside f's own level (requires f to split into distinct
// linear factors there); deterministic given the seeded stream
FqElem up_one_root(const FieldTower& T, const UniPoly& f);

struct RootOrbit {
    FqElem representative;    // normalized; smallest conjugate in the element order
    unsigned orbit_size = 1;  // number of conjugates over the coefficient field
    unsigned multiplicity = 1;
    bool is_zero = false;
};
struct RootReport {
    std::vector<RootOrbit> orbits;
};

RootReport roots_in_closure(const FieldTower& T, const UniPoly& f, bool nonzero_only = false);
// all conjugates of the orbit under the coefficient-field Frobenius
std::vector<FqElem> orbit_members(const FieldTower& T, const RootOrbit& orb, unsigned poly_level);

UniPoly minimal_polynomial(const FieldTower& T, const FqElem& x);  // monic over the base

}  // namespace baker
