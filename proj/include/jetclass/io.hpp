#pragma once

#include "jetclass/centralizer.hpp"
#include "jetclass/classify.hpp"
#include "jetclass/degeneracy.hpp"
#include "jetclass/family.hpp"

#include <string>

namespace jetclass {

enum class Backend { ExactRational, Float64 };

inline const char* to_string(Backend b) {
    return b == Backend::ExactRational ? "rational" : "float";
}

/// A parsed field carries the detected backend; the float view is always
/// available, the exact one only when every coefficient was rational.
struct ParsedField {
    Backend backend = Backend::ExactRational;
    VectorFieldJet<Rational> exact;
    VectorFieldJet<double> approx;
};

struct ParsedMatrix {
    Backend backend = Backend::ExactRational;
    SquareMatrix<Rational> exact;
    SquareMatrix<double> approx;
};

/// Field schema: {"order": m, "dx": [[i, j, coeff], ...], "dy": [...]}.
/// Rational coefficient strings ("p/q" or "p") select the exact backend;
/// decimal strings or JSON numbers select the float backend. Mixing the two
/// is a reported error, as is an exponent pair above the declared order.
ParsedField parse_field(const std::string& json_text);

std::string emit_field(const VectorFieldJet<Rational>& v, int indent = -1);
std::string emit_field(const VectorFieldJet<double>& v, int indent = -1);

/// Matrix schema: {"rows": [[a, b, ...], ...]}, entries like field coefficients.
ParsedMatrix parse_matrix(const std::string& json_text);

/// Family schema: {"k": 2, "dx": [[[e1,e2],[i,j],coeff], ...], "dy": [...],
/// "eps_box": [[lo,hi],[lo,hi]], "phase_box": [[lo,hi],[lo,hi]]}.
FamilySpec parse_family(const std::string& json_text);

/// Run configuration echoed into every report.
struct RunConfig {
    std::string subcommand;
    std::string input;
    int order = 0;
    ToleranceSet tol;
    std::uint64_t seed = 0;
    Backend backend = Backend::ExactRational;
};

std::string emit_classify_report(const GermReport& report, const RunConfig& config);
std::string emit_centralizer_report(const CentralizerResult& result, const RunConfig& config);
std::string emit_multiplicity_report(const MultiplicityResult& result, const RunConfig& config);
std::string emit_resultant_report(const ParsedMatrix& matrix, const RunConfig& config);
std::string emit_bounds_report(int k, const RunConfig& config);
std::string emit_codim_report(const std::string& cls, int k, int m, int samples,
                              const std::vector<int>& codims, const RunConfig& config);
std::string emit_scan_report(const ScanReport& report, const RunConfig& config);
std::string emit_scan_csv(const ScanReport& report);

} // namespace jetclass
