#include <pybind11/pybind11.h>

#include "baker/document.hpp"

namespace py = pybind11;
using namespace baker;

namespace {

ResolutionOptions options_for(const std::string& mode, unsigned max_iterations) {
    ResolutionOptions opt;
    if (mode == "minimal")
        opt.mode = ChartMode::Minimal;
    else if (mode == "full")
        opt.mode = ChartMode::FullCharts;
    else
        throw ParseError("unknown mode " + mode);
    opt.max_iterations = max_iterations;
    return opt;
}

std::string resolve_json(const std::string& field, const std::string& poly,
                         const std::string& mode, unsigned max_iterations) {
    FieldTower T(parse_field_spec(field));
    ResolutionOptions opt = options_for(mode, max_iterations);
    Forest F = run_resolution(T, ml_parse(T, poly), opt);
    return resolution_document(T, field, F, opt.mode == ChartMode::FullCharts);
}

std::string places_json(const std::string& field, const std::string& poly,
                        unsigned max_iterations) {
    FieldTower T(parse_field_spec(field));
    Forest F = run_resolution(T, ml_parse(T, poly), options_for("minimal", max_iterations));
    return places_document(T, field, F);
}

std::string genus_json(const std::string& field, const std::string& poly) {
    FieldTower T(parse_field_spec(field));
    Forest F = run_resolution(T, ml_parse(T, poly), ResolutionOptions{});
    return genus_document(genus_report(F));
}

std::string check_json(const std::string& field, const std::string& poly) {
    FieldTower T(parse_field_spec(field));
    return nondegeneracy_document(T, nondegeneracy_check(T, ml_parse(T, poly)));
}

std::string superelliptic_json(const std::string& field, unsigned s, const std::string& h_text,
                               bool cross_check) {
    FieldTower T(parse_field_spec(field));
    MultiLaurent f = ml_parse(T, h_text);
    for (const auto& [e, c] : f.terms)
        if (e[0] < 0 || e[1] != 0)
            throw ParseError("the branch polynomial must be a polynomial in x alone");
    UniPoly h = ml_is_zero(f) ? up_zero() : ml_coeffs_in(T, f, 1).front();
    SuperellipticReport rep = superelliptic_analyze(T, s, h);
    std::vector<std::string> mismatches;
    if (cross_check) mismatches = superelliptic_cross_check(T, s, h);
    return superelliptic_document(T, field, h, rep, cross_check ? &mismatches : nullptr);
}

}  // namespace

PYBIND11_MODULE(_baker, m) {
    m.doc() = "exact boundary resolution of plane curves over finite fields";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<GuardError>(m, "GuardError", PyExc_RuntimeError);

    m.def("resolve_json", &resolve_json, py::arg("field"), py::arg("poly"),
          py::arg("mode") = "minimal", py::arg("max_iterations") = 64,
          "chart tower, orbits and reports as a JSON document");
    m.def("places_json", &places_json, py::arg("field"), py::arg("poly"),
          py::arg("max_iterations") = 64, "points at infinity and boundary divisors as JSON");
    m.def("genus_json", &genus_json, py::arg("field"), py::arg("poly"),
          "lattice counts and arithmetic genus as JSON");
    m.def("check_json", &check_json, py::arg("field"), py::arg("poly"),
          "torus smoothness and edge nondegeneracy as JSON");
    m.def("superelliptic_json", &superelliptic_json, py::arg("field"), py::arg("s"),
          py::arg("h"), py::arg("cross_check") = false,
          "closed-form boundary data of y^s = h(x) as JSON");
}
