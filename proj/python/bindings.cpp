#include "jetclass/io.hpp"
#include "jetclass/prng.hpp"

#include <pybind11/pybind11.h>

namespace py = pybind11;

namespace {

using namespace jetclass;

ToleranceSet make_tol(double tol_zero, double tol_nonzero, double tol_linear) {
    ToleranceSet tol;
    tol.tol_zero = tol_zero;
    tol.tol_nonzero = tol_nonzero;
    tol.tol_linear = tol_linear;
    tol.validate();
    return tol;
}

std::string classify_json(const std::string& field_json, int order, double tol_zero,
                          double tol_nonzero, double tol_linear) {
    ToleranceSet tol = make_tol(tol_zero, tol_nonzero, tol_linear);
    ParsedField field = parse_field(field_json);
    RunConfig config{"classify", "<python>", order, tol, 0, field.backend};
    GermReport rep;
    if (field.backend == Backend::ExactRational) {
        auto v = order > 0 ? field.exact.truncated(std::min(order, field.exact.order)) : field.exact;
        rep = classify_germ(v, tol);
    } else {
        auto v = order > 0 ? field.approx.truncated(std::min(order, field.approx.order)) : field.approx;
        rep = classify_germ(v, tol);
    }
    return emit_classify_report(rep, config);
}

std::string centralizer_json(const std::string& field_json, int order, bool restrict_vanishing) {
    ParsedField field = parse_field(field_json);
    if (field.backend != Backend::ExactRational)
        throw Error("centralizer needs rational coefficients");
    int m = order > 0 ? order : field.exact.order;
    RunConfig config{"centralizer", "<python>", m, ToleranceSet{}, 0, field.backend};
    auto result = centralizer(field.exact, m, restrict_vanishing);
    return emit_centralizer_report(result, config);
}

std::string multiplicity_json(const std::string& field_json, int cutoff) {
    ParsedField field = parse_field(field_json);
    if (field.backend != Backend::ExactRational)
        throw Error("multiplicity needs rational coefficients");
    RunConfig config{"multiplicity", "<python>", 0, ToleranceSet{}, 0, field.backend};
    return emit_multiplicity_report(local_multiplicity(field.exact, cutoff), config);
}

std::string resultant_json(const std::string& matrix_json) {
    ParsedMatrix mat = parse_matrix(matrix_json);
    RunConfig config{"resultant", "<python>", 0, ToleranceSet{}, 0, mat.backend};
    return emit_resultant_report(mat, config);
}

std::string bounds_json(int k) {
    RunConfig config{"bounds", "<python>", 0, ToleranceSet{}, 0, Backend::Float64};
    return emit_bounds_report(k, config);
}

std::string codim_json(const std::string& cls, int k, int order, int samples, std::uint64_t seed) {
    if (samples < 1) throw Error("samples must be >= 1");
    int m = order;
    if (m <= 0) m = cls == "AH" ? 2 * k + 3 : (cls == "SN" ? k + 2 : 2);
    if (m > 12) throw Error("order must lie in 1..12");
    Prng rng(seed == 0 ? 20250808u : seed);
    std::vector<int> codims;
    for (int s = 0; s < samples; ++s)
        codims.push_back(orbit_codimension(sample_stratum(cls, k, m, rng, s), m));
    RunConfig config{"codim", cls, m, ToleranceSet{}, seed, Backend::ExactRational};
    return emit_codim_report(cls, k, m, samples, codims, config);
}

std::string bracket_json(const std::string& v_json, const std::string& w_json, int order) {
    ParsedField v = parse_field(v_json);
    ParsedField w = parse_field(w_json);
    if (v.backend != w.backend) throw Error("bracket operands must share a backend");
    if (v.backend == Backend::ExactRational)
        return emit_field(bracket(v.exact, w.exact, order));
    return emit_field(bracket(v.approx, w.approx, order));
}

std::string scan_json(const std::string& family_json, int nx, int ny, int seed_grid,
                      double tol_zero, double tol_nonzero, double tol_linear, unsigned threads) {
    FamilySpec F = parse_family(family_json);
    ScanSettings settings;
    settings.newton_seed_grid = seed_grid;
    settings.tol = make_tol(tol_zero, tol_nonzero, tol_linear);
    settings.threads = threads;
    ScanReport report = scan(F, nx, ny, settings);
    RunConfig config{"scan", "<python>", 0, settings.tol, 0, Backend::Float64};
    return emit_scan_report(report, config);
}

} // namespace

PYBIND11_MODULE(_jetclass, m) {
    m.doc() = "planar vector-field singularity classification (C++ core)";

    py::register_exception<jetclass::Error>(m, "JetclassError", PyExc_ValueError);

    m.def("classify", &classify_json, py::arg("field_json"), py::arg("order") = 0,
          py::arg("tol_zero") = 1e-9, py::arg("tol_nonzero") = 1e-6, py::arg("tol_linear") = 1e-7,
          "Classify a germ; returns the report as a JSON string");
    m.def("centralizer", &centralizer_json, py::arg("field_json"), py::arg("order") = 0,
          py::arg("restrict_vanishing") = false,
          "Exact kernel of the adjoint operator; returns JSON");
    m.def("multiplicity", &multiplicity_json, py::arg("field_json"), py::arg("cutoff") = 12,
          "Local multiplicity via Macaulay dual spaces; returns JSON");
    m.def("resultant", &resultant_json, py::arg("matrix_json"),
          "Imaginary-eigenvalue resultant R(A); returns JSON");
    m.def("bounds", &bounds_json, py::arg("k"), "Multiplicity bounds for k-parameter families");
    m.def("codim", &codim_json, py::arg("cls"), py::arg("k") = 0, py::arg("order") = 0,
          py::arg("samples") = 5, py::arg("seed") = 0,
          "Stratum codimension from seeded random normal forms; returns JSON");
    m.def("bracket", &bracket_json, py::arg("v_json"), py::arg("w_json"), py::arg("order"),
          "Lie bracket of two field jets; returns the field as JSON");
    m.def("scan", &scan_json, py::arg("family_json"), py::arg("nx") = 21, py::arg("ny") = 21,
          py::arg("seed_grid") = 32, py::arg("tol_zero") = 1e-9, py::arg("tol_nonzero") = 1e-6,
          py::arg("tol_linear") = 1e-7, py::arg("threads") = 0u,
          "Two-parameter family scan; returns the full report as JSON");
    m.def("gk_point_bound", &jetclass::gk_point_bound, py::arg("k"));
    m.def("gk_sum_bound", &jetclass::gk_sum_bound, py::arg("k"));

    m.attr("__version__") = "0.1.0";
}
