#pragma once
#include "baker/resolution.hpp"

namespace baker {

// one Galois orbit of nonzero roots of h, with its resolved boundary data
struct BranchOrbit {
    UniPoly minimal;                        // minimal polynomial of the orbit
    unsigned multiplicity = 1;              // exponent of the factor in h
    unsigned branch_count = 1;              // gcd(multiplicity, s)
    UniPoly terminal;                       // 1 - a X^branch_count over the orbit field
    std::vector<unsigned> residue_degrees;  // orbit degree times each terminal factor degree
};

struct SuperellipticReport {
    unsigned s = 2;
    std::int64_t trailing = 0;  // multiplicity of the root x = 0 in h
    std::int64_t degree = 0;
    bool horizontal = false;  // the support touches the x-axis in more than one point
    UniPoly left_edge;        // boundary restriction toward x = 0
    UniPoly right_edge;       // boundary restriction toward large x
    std::vector<BranchOrbit> branches;
    std::vector<unsigned> residue_degrees;  // every boundary place, sorted
    unsigned outer_regular_level = 1;       // 2 when a repeated factor forces one expansion
    std::int64_t genus = 0;                 // interior count of the support polygon
};

// y^s - h(x) as a two-variable polynomial
MultiLaurent superelliptic_curve(const FieldTower& T, unsigned s, const UniPoly& h);

// closed-form boundary description; s must be at least 2 and prime to the characteristic
SuperellipticReport superelliptic_analyze(const FieldTower& T, unsigned s, const UniPoly& h);

// closed forms replayed against the generic chart tower; lists any disagreement
std::vector<std::string> superelliptic_cross_check(const FieldTower& T, unsigned s,
                                                   const UniPoly& h);

}  // namespace baker
