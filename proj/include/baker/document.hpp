#pragma once
#include <string>

#include "baker/superelliptic.hpp"

namespace baker {

// JSON renderings of the analysis results, shared by the command line
// front end and the python module; every function returns a pretty-printed
// object with stable key order

std::string polygon_document(const FieldTower& T, const std::string& field,
                             const MultiLaurent& norm, const LatticePolygon& P);

// full_meta adds the chart matrix and ideal generators per node
std::string resolution_document(const FieldTower& T, const std::string& field, const Forest& F,
                                bool full_meta);

std::string places_document(const FieldTower& T, const std::string& field, const Forest& F);

std::string genus_document(const GenusReport& g);

std::string nondegeneracy_document(const FieldTower& T, const NondegeneracyReport& rep);

// cross_check may be null; an empty list renders as []
std::string superelliptic_document(const FieldTower& T, const std::string& field, const UniPoly& h,
                                   const SuperellipticReport& rep,
                                   const std::vector<std::string>* cross_check);

}  // namespace baker
