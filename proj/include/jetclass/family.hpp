#pragma once

#include "jetclass/classify.hpp"
#include "jetclass/vector_field.hpp"

#include <array>
#include <string>
#include <vector>

namespace jetclass {

/// One term of a polynomial family: c * eps^e * x^i y^j on one component.
struct FamilyTerm {
    std::vector<int> eps_exp;
    int i = 0;
    int j = 0;
    double c = 0.0;
};

/// Polynomial family v_eps(x) with 1 or 2 parameters, a parameter box and a
/// phase box. Scanning is numeric, so coefficients are doubles.
struct FamilySpec {
    int k = 2;
    std::vector<FamilyTerm> dx, dy;
    std::array<std::array<double, 2>, 2> eps_box{{{-1.0, 1.0}, {-1.0, 1.0}}};
    std::array<std::array<double, 2>, 2> phase_box{{{-1.0, 1.0}, {-1.0, 1.0}}};

    int phase_degree() const;
    void validate() const;
};

/// Freezes the parameters: the plane polynomial field at eps, exposed as a
/// jet of at least the requested order (extra coefficients are zero).
VectorFieldJet<double> instantiate(const FamilySpec& F, const std::vector<double>& eps,
                                   int order = 0);

struct ScanSettings {
    int newton_seed_grid = 32;
    double dedup_radius = 1e-6;
    double residual_tol = 1e-12;
    double locus_tol = 1e-8;
    int classify_order = 5;
    unsigned threads = 0; // 0 = hardware, capped by JETCLASS_THREADS
    ToleranceSet tol;
};

struct SingularPointRecord {
    std::array<double, 2> eps{0, 0};
    double x = 0, y = 0;
    double residual = 0;
    double det = 0, tr = 0;
    GermReport label;
    bool boundary_uncertain = false;
    bool nonhyperbolic = false; // det ~ 0, or tr ~ 0 with det > 0 (the genuine condition)
    bool degeneracy_eq = false; // verbatim det*tr = 0 within tolerance
};

enum class AuditVerdict { Case1, Case2, Case3, Violation };

const char* to_string(AuditVerdict v);

struct NodeResult {
    int gi = 0, gj = 0;
    std::array<double, 2> eps{0, 0};
    std::vector<SingularPointRecord> records;
    std::vector<std::array<double, 4>> flagged_cells; // x_lo, x_hi, y_lo, y_hi
    int n_nonhyperbolic = 0;
    int n_degeneracy_eq = 0;
    AuditVerdict verdict = AuditVerdict::Case1;
    std::string detail;
};

struct LocusPoint {
    std::string type; // "SN" or "AH"
    std::array<double, 2> eps{0, 0};
    double x = 0, y = 0;
};

struct ScanReport {
    int nx = 0, ny = 0;
    ScanSettings settings;
    std::vector<NodeResult> nodes; // row-major, eps1 index fastest
    std::vector<LocusPoint> sn_locus, ah_locus;
    int case1 = 0, case2 = 0, case3 = 0;
    std::vector<std::string> violations;
    int unresolved_labels = 0;
    int classified_records = 0;
};

/// All zeros of v_eps in the phase box: Newton from a subdivision grid with
/// gradient-bound exclusion of empty cells, deduplication by radius, and
/// per-record classification of the translated germ. Cells where a zero
/// cannot be excluded but Newton failed are reported through `flagged`.
std::vector<SingularPointRecord> singular_points_at(const FamilySpec& F,
                                                    const std::vector<double>& eps,
                                                    const ScanSettings& settings,
                                                    std::vector<std::array<double, 4>>* flagged = nullptr);

/// Full grid scan with per-node audit, codimension-1 locus localization by
/// bisection, and the main-theorem audit summary.
ScanReport scan(const FamilySpec& F, int nx, int ny, const ScanSettings& settings);

/// Recomputes the per-node verdicts and the summary from the records.
void audit_main_theorem(ScanReport& report);

} // namespace jetclass
