#include "jetclass/io.hpp"
#include "jetclass/prng.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace jetclass;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << text;
}

void deliver(const std::string& report, const std::string& out_path) {
    if (out_path.empty())
        std::cout << report << "\n";
    else
        spill(out_path, report);
}

struct CommonOpts {
    std::string input;
    std::string report_path;
    ToleranceSet tol;
    std::uint64_t seed = 0;
};

void add_tolerance_options(CLI::App* cmd, ToleranceSet& tol) {
    cmd->add_option("--tol-zero", tol.tol_zero, "below this (scaled) a value counts as zero");
    cmd->add_option("--tol-nonzero", tol.tol_nonzero, "above this (scaled) a value counts as nonzero");
    cmd->add_option("--tol-linear", tol.tol_linear, "relative tolerance for the linear classification");
}

int run_classify(const CommonOpts& opt, int order) {
    ParsedField field = parse_field(slurp(opt.input));
    RunConfig config{"classify", opt.input, order, opt.tol, opt.seed, field.backend};
    GermReport rep;
    if (field.backend == Backend::ExactRational) {
        auto v = order > 0 ? field.exact.truncated(std::min(order, field.exact.order)) : field.exact;
        rep = classify_germ(v, opt.tol);
    } else {
        auto v = order > 0 ? field.approx.truncated(std::min(order, field.approx.order)) : field.approx;
        rep = classify_germ(v, opt.tol);
    }
    deliver(emit_classify_report(rep, config), opt.report_path);
    return rep.kind == Kind::Unresolved ? 2 : 0;
}

int run_centralizer(const CommonOpts& opt, int order, bool restrict_vanishing) {
    ParsedField field = parse_field(slurp(opt.input));
    if (field.backend != Backend::ExactRational)
        throw Error("centralizer needs the exact backend: kernel dimensions are certified, "
                    "use rational coefficients");
    int m = order > 0 ? order : field.exact.order;
    if (m > field.exact.order) throw Error("requested order exceeds the jet order of the input");
    RunConfig config{"centralizer", opt.input, m, opt.tol, opt.seed, field.backend};
    auto result = centralizer(field.exact, m, restrict_vanishing);
    deliver(emit_centralizer_report(result, config), opt.report_path);
    return 0;
}

int run_codim(const CommonOpts& opt, const std::string& cls, int k, int order, int samples) {
    if (samples < 1) throw Error("samples must be >= 1");
    if (order > 12) throw Error("order must lie in 1..12");
    int m = order;
    if (m <= 0) {
        if (cls == "AH") m = 2 * k + 3;
        else if (cls == "SN") m = k + 2;
        else m = 2;
    }
    if (m > 12) throw Error("derived order exceeds 12; lower k");
    Prng rng(opt.seed == 0 ? 20250808u : opt.seed);
    std::vector<int> codims;
    for (int s = 0; s < samples; ++s) {
        auto stratum = sample_stratum(cls, k, m, rng, s);
        codims.push_back(orbit_codimension(stratum, m));
    }
    RunConfig config{"codim", cls, m, opt.tol, opt.seed, Backend::ExactRational};
    deliver(emit_codim_report(cls, k, m, samples, codims, config), opt.report_path);
    return 0;
}

int run_resultant(const CommonOpts& opt) {
    ParsedMatrix mat = parse_matrix(slurp(opt.input));
    RunConfig config{"resultant", opt.input, 0, opt.tol, opt.seed, mat.backend};
    deliver(emit_resultant_report(mat, config), opt.report_path);
    return 0;
}

int run_multiplicity(const CommonOpts& opt, int cutoff) {
    ParsedField field = parse_field(slurp(opt.input));
    if (field.backend != Backend::ExactRational)
        throw Error("multiplicity needs the exact backend: dual-space dimensions are certified, "
                    "use rational coefficients");
    RunConfig config{"multiplicity", opt.input, 0, opt.tol, opt.seed, field.backend};
    auto result = local_multiplicity(field.exact, cutoff);
    deliver(emit_multiplicity_report(result, config), opt.report_path);
    return result.stabilized ? 0 : 2;
}

int run_bounds(const CommonOpts& opt, int k) {
    RunConfig config{"bounds", "", 0, opt.tol, opt.seed, Backend::Float64};
    deliver(emit_bounds_report(k, config), opt.report_path);
    return 0;
}

int run_scan(const CommonOpts& opt, const std::string& family_path, const std::string& grid,
             const std::string& out_path, const std::string& csv_path, ScanSettings settings) {
    FamilySpec F = parse_family(slurp(family_path));
    int nx = 0, ny = 0;
    if (std::sscanf(grid.c_str(), "%dx%d", &nx, &ny) != 2)
        throw Error("grid must look like 101x101");
    settings.tol = opt.tol;
    ScanReport report = scan(F, nx, ny, settings);
    RunConfig config{"scan", family_path, 0, opt.tol, opt.seed, Backend::Float64};
    std::string json = emit_scan_report(report, config);
    if (out_path.empty())
        std::cout << json << "\n";
    else
        spill(out_path, json);
    if (!csv_path.empty()) spill(csv_path, emit_scan_csv(report));

    std::cerr << "scan: " << report.classified_records << " records, case1/2/3 = " << report.case1
              << "/" << report.case2 << "/" << report.case3 << ", violations = "
              << report.violations.size() << ", sn locus points = " << report.sn_locus.size()
              << ", ah locus points = " << report.ah_locus.size() << "\n";
    if (report.classified_records > 0 && report.unresolved_labels * 2 > report.classified_records)
        return 2;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jetclass: classification of planar vector-field singularities by jet-space methods"};
    app.require_subcommand(1);

    CommonOpts opt;
    int order = 0;
    bool restrict_vanishing = false;
    std::string cls = "AH";
    int codim_k = 0, samples = 5, cutoff = 12, bounds_k = 2;
    std::string family_path, grid = "101x101", out_path, csv_path;
    ScanSettings scan_settings;

    auto* classify_cmd = app.add_subcommand("classify", "classify a germ at the origin");
    classify_cmd->add_option("--input", opt.input, "field JSON")->required();
    classify_cmd->add_option("--order", order, "truncate the jet to this order first");
    classify_cmd->add_option("--report", opt.report_path, "write the report here");
    add_tolerance_options(classify_cmd, opt.tol);

    auto* cent_cmd = app.add_subcommand("centralizer", "kernel of the adjoint operator on J^m");
    cent_cmd->add_option("--input", opt.input, "field JSON (rational coefficients)")->required();
    cent_cmd->add_option("--order", order, "jet space order m");
    cent_cmd->add_flag("--restrict-vanishing", restrict_vanishing,
                       "kernel inside the jets vanishing at the origin");
    cent_cmd->add_option("--report", opt.report_path, "write the report here");

    auto* codim_cmd = app.add_subcommand("codim", "stratum codimension via stacked tangent ranks");
    codim_cmd->add_option("--class", cls, "AH, SN, BT0 or BT1")->required();
    codim_cmd->add_option("--k", codim_k, "degeneracy depth for AH/SN");
    codim_cmd->add_option("--order", order, "jet space order (defaults per class)");
    codim_cmd->add_option("--samples", samples, "number of random normal-form samples");
    codim_cmd->add_option("--seed", opt.seed, "sampling seed");
    codim_cmd->add_option("--report", opt.report_path, "write the report here");

    auto* res_cmd = app.add_subcommand("resultant", "imaginary-eigenvalue resultant R(A)");
    res_cmd->add_option("--matrix", opt.input, "matrix JSON")->required();
    res_cmd->add_option("--report", opt.report_path, "write the report here");

    auto* mult_cmd = app.add_subcommand("multiplicity", "local multiplicity at the origin");
    mult_cmd->add_option("--input", opt.input, "field JSON (rational coefficients)")->required();
    mult_cmd->add_option("--cutoff", cutoff, "maximal dual-space degree");
    mult_cmd->add_option("--report", opt.report_path, "write the report here");

    auto* bounds_cmd = app.add_subcommand("bounds", "multiplicity bounds for k-parameter families");
    bounds_cmd->add_option("--k", bounds_k, "parameter count")->required();
    bounds_cmd->add_option("--report", opt.report_path, "write the report here");

    auto* scan_cmd = app.add_subcommand("scan", "two-parameter family scan and audit");
    scan_cmd->add_option("--family", family_path, "family JSON")->required();
    scan_cmd->add_option("--grid", grid, "parameter grid, e.g. 101x101");
    scan_cmd->add_option("--out", out_path, "report JSON path");
    scan_cmd->add_option("--csv", csv_path, "singular point CSV path");
    scan_cmd->add_option("--seed-grid", scan_settings.newton_seed_grid, "Newton seeding grid per box");
    scan_cmd->add_option("--dedup-radius", scan_settings.dedup_radius, "point deduplication radius");
    scan_cmd->add_option("--tol-residual", scan_settings.residual_tol, "acceptance residual");
    scan_cmd->add_option("--tol-locus", scan_settings.locus_tol, "locus bisection tolerance");
    scan_cmd->add_option("--threads", scan_settings.threads, "worker threads (0 = auto)");
    scan_cmd->add_option("--seed", opt.seed, "echoed into the report");
    add_tolerance_options(scan_cmd, opt.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        opt.tol.validate();
        if (classify_cmd->parsed()) return run_classify(opt, order);
        if (cent_cmd->parsed()) return run_centralizer(opt, order, restrict_vanishing);
        if (codim_cmd->parsed()) return run_codim(opt, cls, codim_k, order, samples);
        if (res_cmd->parsed()) return run_resultant(opt);
        if (mult_cmd->parsed()) return run_multiplicity(opt, cutoff);
        if (bounds_cmd->parsed()) return run_bounds(opt, bounds_k);
        if (scan_cmd->parsed())
            return run_scan(opt, family_path, grid, out_path, csv_path, scan_settings);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
