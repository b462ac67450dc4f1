#include "jetclass/io.hpp"

#include <json.hpp>

#include <cctype>
#include <cinttypes>
#include <cstdio>

namespace jetclass {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

bool looks_decimal(const std::string& s) {
    return s.find_first_of(".eE") != std::string::npos;
}

struct CoeffValue {
    bool is_exact = false;
    Rational exact{0};
    double approx = 0;
};

CoeffValue parse_coeff(const ordered_json& j) {
    CoeffValue c;
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (looks_decimal(s)) {
            size_t pos = 0;
            try {
                c.approx = std::stod(s, &pos);
            } catch (const std::exception&) {
                throw Error("malformed decimal coefficient: '" + s + "'");
            }
            if (pos != s.size()) throw Error("malformed decimal coefficient: '" + s + "'");
            c.is_exact = false;
        } else {
            c.exact = rational_from_string(s);
            c.approx = c.exact.get_d();
            c.is_exact = true;
        }
        return c;
    }
    if (j.is_number()) {
        c.approx = j.get<double>();
        c.is_exact = false;
        return c;
    }
    throw Error("coefficient must be a string or a number");
}

int parse_exponent(const ordered_json& j, const char* what) {
    if (!j.is_number_integer()) throw Error(std::string(what) + " must be an integer");
    long long e = j.get<long long>();
    if (e < 0 || e > 64) throw Error(std::string(what) + " out of range [0, 64]");
    return static_cast<int>(e);
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ordered_json poly_terms_json(const Poly2<Rational>& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& [mono, c] : p.terms()) arr.push_back({mono.i, mono.j, to_string(c)});
    return arr;
}

ordered_json poly_terms_json(const Poly2<double>& p) {
    ordered_json arr = ordered_json::array();
    for (const auto& [mono, c] : p.terms()) arr.push_back({mono.i, mono.j, c});
    return arr;
}

ordered_json config_json(const RunConfig& config) {
    ordered_json j;
    j["subcommand"] = config.subcommand;
    j["input"] = config.input;
    if (config.order > 0) j["order"] = config.order;
    j["tol_linear"] = config.tol.tol_linear;
    j["tol_zero"] = config.tol.tol_zero;
    j["tol_nonzero"] = config.tol.tol_nonzero;
    j["seed"] = config.seed;
    j["backend"] = to_string(config.backend);
    return j;
}

ordered_json header_json(const RunConfig& config) {
    ordered_json j;
    j["tool"] = "jetclass";
    j["version"] = kVersion;
    j["config"] = config_json(config);
    return j;
}

ordered_json rational_list(const std::vector<Rational>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& q : v) arr.push_back(to_string(q));
    return arr;
}

ordered_json double_list(const std::vector<double>& v) {
    ordered_json arr = ordered_json::array();
    for (double x : v) arr.push_back(x);
    return arr;
}

/// Kind-specific diagnostic payload; exact strings when the exact path ran.
ordered_json payload_json(const GermReport& r) {
    ordered_json p;
    switch (r.kind) {
        case Kind::AH:
        case Kind::Unresolved:
            if (!r.focus_re.empty() || r.kind == Kind::AH) {
                if (r.exact_payload && !r.focus_re_q.empty()) {
                    p["omega"] = to_string(r.omega_q);
                    p["re_a"] = rational_list(r.focus_re_q);
                    p["im_a"] = rational_list(r.focus_im_q);
                } else if (!r.focus_re.empty()) {
                    p["omega"] = r.omega;
                    p["re_a"] = double_list(r.focus_re);
                    p["im_a"] = double_list(r.focus_im);
                }
            }
            if (r.kind == Kind::Unresolved && !r.sn_a.empty()) {
                if (r.exact_payload && !r.sn_a_q.empty()) {
                    p["lambda"] = to_string(r.sn_lambda_q);
                    p["a"] = rational_list(r.sn_a_q);
                    p["center_manifold"] = rational_list(r.sn_cm_q);
                } else {
                    p["lambda"] = r.sn_lambda;
                    p["a"] = double_list(r.sn_a);
                    p["center_manifold"] = double_list(r.sn_cm);
                }
            }
            break;
        case Kind::SN:
            if (r.exact_payload && !r.sn_a_q.empty()) {
                p["a"] = rational_list(r.sn_a_q);
                p["lambda"] = to_string(r.sn_lambda_q);
                p["center_manifold"] = rational_list(r.sn_cm_q);
            } else {
                p["a"] = double_list(r.sn_a);
                p["lambda"] = r.sn_lambda;
                p["center_manifold"] = double_list(r.sn_cm);
            }
            break;
        case Kind::BT0:
        case Kind::BT1:
            if (r.exact_payload) {
                p["b11"] = to_string(r.bt_q[0]);
                p["b12"] = to_string(r.bt_q[1]);
                p["b22"] = to_string(r.bt_q[2]);
            } else {
                p["b11"] = r.bt[0];
                p["b12"] = r.bt[1];
                p["b22"] = r.bt[2];
            }
            break;
        case Kind::H:
        case Kind::ZL: break;
    }
    return p;
}

ordered_json germ_json(const GermReport& r) {
    ordered_json j;
    j["kind"] = to_string(r.kind);
    if (r.k >= 0) j["k"] = r.k;
    j["linear_class"] = to_string(r.linear);
    j["order"] = r.order;
    j["backend"] = r.backend;
    j["det"] = r.det;
    j["tr"] = r.tr;
    j["payload"] = payload_json(r);
    if (r.kind == Kind::Unresolved) j["unresolved_reason"] = r.unresolved_reason;
    return j;
}

} // namespace

ParsedField parse_field(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("dx") || !j.contains("dy"))
        throw Error("field JSON must carry 'order', 'dx' and 'dy'");
    if (!j["order"].is_number_integer()) throw Error("'order' must be an integer");
    long long mo = j["order"].get<long long>();
    if (mo < 1 || mo > 12) throw Error("'order' must lie in 1..12");
    const int m = static_cast<int>(mo);

    ParsedField out;
    out.exact = VectorFieldJet<Rational>(m);
    out.approx = VectorFieldJet<double>(m);
    int exact_seen = 0, float_seen = 0;

    for (int comp = 0; comp < 2; ++comp) {
        const ordered_json& arr = comp == 0 ? j["dx"] : j["dy"];
        if (!arr.is_array()) throw Error("'dx'/'dy' must be arrays of [i, j, coeff]");
        for (const auto& t : arr) {
            if (!t.is_array() || t.size() != 3) throw Error("field term must be [i, j, coeff]");
            int i = parse_exponent(t[0], "exponent");
            int jj = parse_exponent(t[1], "exponent");
            if (i + jj > m) throw Error("term degree exceeds the declared order");
            CoeffValue c = parse_coeff(t[2]);
            (c.is_exact ? exact_seen : float_seen)++;
            if (comp == 0) {
                out.exact.dx.add_term(i, jj, c.exact);
                out.approx.dx.add_term(i, jj, c.approx);
            } else {
                out.exact.dy.add_term(i, jj, c.exact);
                out.approx.dy.add_term(i, jj, c.approx);
            }
        }
    }
    if (exact_seen > 0 && float_seen > 0)
        throw Error("mixed rational and decimal coefficients: pick one backend per file");
    out.backend = float_seen > 0 ? Backend::Float64 : Backend::ExactRational;
    if (out.backend == Backend::Float64) out.exact = VectorFieldJet<Rational>(m);
    return out;
}

std::string emit_field(const VectorFieldJet<Rational>& v, int indent) {
    ordered_json j;
    j["order"] = v.order;
    j["dx"] = poly_terms_json(v.dx);
    j["dy"] = poly_terms_json(v.dy);
    return j.dump(indent);
}

std::string emit_field(const VectorFieldJet<double>& v, int indent) {
    ordered_json j;
    j["order"] = v.order;
    j["dx"] = poly_terms_json(v.dx);
    j["dy"] = poly_terms_json(v.dy);
    return j.dump(indent);
}

ParsedMatrix parse_matrix(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
        throw Error("matrix JSON must carry 'rows' as an array of arrays");
    const auto& rows = j["rows"];
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw Error("matrix must have at least one row");
    ParsedMatrix out;
    out.exact = SquareMatrix<Rational>(n);
    out.approx = SquareMatrix<double>(n);
    int exact_seen = 0, float_seen = 0;
    for (int r = 0; r < n; ++r) {
        if (!rows[static_cast<size_t>(r)].is_array() ||
            static_cast<int>(rows[static_cast<size_t>(r)].size()) != n)
            throw Error("matrix must be square");
        for (int c = 0; c < n; ++c) {
            CoeffValue v = parse_coeff(rows[static_cast<size_t>(r)][static_cast<size_t>(c)]);
            (v.is_exact ? exact_seen : float_seen)++;
            out.exact(r, c) = v.exact;
            out.approx(r, c) = v.approx;
        }
    }
    if (exact_seen > 0 && float_seen > 0)
        throw Error("mixed rational and decimal entries: pick one backend per file");
    out.backend = float_seen > 0 ? Backend::Float64 : Backend::ExactRational;
    return out;
}

FamilySpec parse_family(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("k") || !j.contains("dx") || !j.contains("dy"))
        throw Error("family JSON must carry 'k', 'dx' and 'dy'");
    FamilySpec F;
    if (!j["k"].is_number_integer()) throw Error("'k' must be an integer");
    F.k = j["k"].get<int>();
    if (F.k != 1 && F.k != 2) throw Error("'k' must be 1 or 2");

    auto parse_box = [&](const char* name, std::array<std::array<double, 2>, 2>& box, int want) {
        if (!j.contains(name)) throw Error(std::string("family JSON must carry '") + name + "'");
        const auto& b = j[name];
        if (!b.is_array() || static_cast<int>(b.size()) != want)
            throw Error(std::string("'") + name + "' must list " + std::to_string(want) + " intervals");
        for (int d = 0; d < want; ++d) {
            const auto& iv = b[static_cast<size_t>(d)];
            if (!iv.is_array() || iv.size() != 2) throw Error("box interval must be [lo, hi]");
            box[static_cast<size_t>(d)][0] = parse_coeff(iv[0]).approx;
            box[static_cast<size_t>(d)][1] = parse_coeff(iv[1]).approx;
        }
    };
    parse_box("eps_box", F.eps_box, F.k == 1 ? 1 : 2);
    parse_box("phase_box", F.phase_box, 2);

    for (int comp = 0; comp < 2; ++comp) {
        const auto& arr = comp == 0 ? j["dx"] : j["dy"];
        if (!arr.is_array()) throw Error("'dx'/'dy' must be arrays of [[e...],[i,j],coeff]");
        for (const auto& t : arr) {
            if (!t.is_array() || t.size() != 3)
                throw Error("family term must be [[e...],[i,j],coeff]");
            FamilyTerm term;
            const auto& ee = t[0];
            if (!ee.is_array() || static_cast<int>(ee.size()) != F.k)
                throw Error("family term parameter exponents must match k");
            for (const auto& e : ee) term.eps_exp.push_back(parse_exponent(e, "parameter exponent"));
            const auto& xe = t[1];
            if (!xe.is_array() || xe.size() != 2) throw Error("family term phase exponents must be [i, j]");
            term.i = parse_exponent(xe[0], "exponent");
            term.j = parse_exponent(xe[1], "exponent");
            term.c = parse_coeff(t[2]).approx;
            (comp == 0 ? F.dx : F.dy).push_back(std::move(term));
        }
    }
    F.validate();
    return F;
}

std::string emit_classify_report(const GermReport& report, const RunConfig& config) {
    ordered_json j = header_json(config);
    ordered_json g = germ_json(report);
    for (auto& [key, value] : g.items()) j[key] = value;
    return j.dump(2);
}

std::string emit_centralizer_report(const CentralizerResult& result, const RunConfig& config) {
    ordered_json j = header_json(config);
    j["dim"] = result.dim;
    j["restricted_to_vanishing"] = result.restricted;
    ordered_json basis = ordered_json::array();
    for (const auto& w : result.basis) basis.push_back(ordered_json::parse(emit_field(w)));
    j["basis"] = basis;
    return j.dump(2);
}

std::string emit_multiplicity_report(const MultiplicityResult& result, const RunConfig& config) {
    ordered_json j = header_json(config);
    if (result.stabilized)
        j["multiplicity"] = result.multiplicity;
    else
        j["multiplicity"] = ">=" + std::to_string(result.cutoff);
    j["stabilized"] = result.stabilized;
    j["dual_dims"] = result.dual_dims;
    j["cutoff"] = result.cutoff;
    return j.dump(2);
}

std::string emit_resultant_report(const ParsedMatrix& matrix, const RunConfig& config) {
    ordered_json j = header_json(config);
    j["n"] = matrix.exact.n;
    if (matrix.backend == Backend::ExactRational) {
        auto cp = characteristic_polynomial(matrix.exact);
        Rational r = imaginary_eigenvalue_resultant(matrix.exact);
        j["char_poly"] = rational_list(cp);
        j["resultant"] = to_string(r);
        j["is_zero"] = sgn(r) == 0;
    } else {
        auto cp = characteristic_polynomial(matrix.approx);
        double r = imaginary_eigenvalue_resultant(matrix.approx);
        j["char_poly"] = double_list(cp);
        j["resultant"] = r;
        j["is_zero"] = std::fabs(r) < 1e-12;
    }
    return j.dump(2);
}

std::string emit_bounds_report(int k, const RunConfig& config) {
    ordered_json j = header_json(config);
    double pb = gk_point_bound(k);
    double sb = gk_sum_bound(k);
    j["k"] = k;
    j["point_bound"] = pb;
    j["sum_bound"] = sb;
    j["floor_point"] = strict_floor(pb);
    j["floor_sum"] = loose_floor(sb);
    j["point_bound_is_integer"] = near_integer(pb);
    if (near_integer(pb))
        j["note"] = "the point bound is an exact integer here, so the strict inequality "
                    "excludes multiplicity " + std::to_string(static_cast<int>(std::llround(pb)));
    return j.dump(2);
}

std::string emit_codim_report(const std::string& cls, int k, int m, int samples,
                              const std::vector<int>& codims, const RunConfig& config) {
    ordered_json j = header_json(config);
    j["class"] = cls;
    j["k"] = k;
    j["order"] = m;
    j["samples"] = samples;
    j["codims"] = codims;
    bool all_equal = true;
    for (int c : codims)
        if (c != codims.front()) all_equal = false;
    if (!codims.empty() && all_equal) j["codim"] = codims.front();
    return j.dump(2);
}

std::string emit_scan_report(const ScanReport& report, const RunConfig& config) {
    ordered_json j = header_json(config);
    j["grid"] = {report.nx, report.ny};
    ordered_json summary;
    summary["case1"] = report.case1;
    summary["case2"] = report.case2;
    summary["case3"] = report.case3;
    summary["violations"] = report.violations;
    summary["records"] = report.classified_records;
    summary["unresolved_labels"] = report.unresolved_labels;
    j["audit"] = summary;

    ordered_json loci;
    ordered_json sn = ordered_json::array(), ah = ordered_json::array();
    for (const auto& p : report.sn_locus) sn.push_back({p.eps[0], p.eps[1], p.x, p.y});
    for (const auto& p : report.ah_locus) ah.push_back({p.eps[0], p.eps[1], p.x, p.y});
    loci["sn"] = sn;
    loci["ah"] = ah;
    j["loci"] = loci;

    ordered_json nodes = ordered_json::array();
    for (const auto& node : report.nodes) {
        ordered_json nj;
        nj["idx"] = {node.gi, node.gj};
        nj["eps"] = {node.eps[0], node.eps[1]};
        nj["verdict"] = to_string(node.verdict);
        nj["n_nonhyperbolic"] = node.n_nonhyperbolic;
        nj["n_det_tr_zero"] = node.n_degeneracy_eq;
        if (!node.detail.empty()) nj["detail"] = node.detail;
        if (!node.flagged_cells.empty()) {
            ordered_json fc = ordered_json::array();
            for (const auto& cell : node.flagged_cells) fc.push_back({cell[0], cell[1], cell[2], cell[3]});
            nj["flagged_cells"] = fc;
        }
        ordered_json recs = ordered_json::array();
        for (const auto& rec : node.records) {
            ordered_json rj;
            rj["x"] = rec.x;
            rj["y"] = rec.y;
            rj["residual"] = rec.residual;
            rj["det"] = rec.det;
            rj["tr"] = rec.tr;
            rj["label"] = germ_json(rec.label);
            rj["nonhyperbolic"] = rec.nonhyperbolic;
            rj["det_tr_zero"] = rec.degeneracy_eq;
            if (rec.boundary_uncertain) rj["boundary_uncertain"] = true;
            recs.push_back(rj);
        }
        nj["records"] = recs;
        nodes.push_back(nj);
    }
    j["nodes"] = nodes;
    return j.dump();
}

std::string emit_scan_csv(const ScanReport& report) {
    std::string csv = "eps1,eps2,x,y,det,tr,label,payload1,payload2,payload3,flags\n";
    for (const auto& node : report.nodes) {
        for (const auto& rec : node.records) {
            std::string label = to_string(rec.label.kind);
            if (rec.label.k >= 0) label += "(" + std::to_string(rec.label.k) + ")";
            std::string p1, p2, p3;
            switch (rec.label.kind) {
                case Kind::SN:
                    if (rec.label.sn_a.size() > 1) p1 = format_double(rec.label.sn_a[1]);
                    if (rec.label.sn_a.size() > 2) p2 = format_double(rec.label.sn_a[2]);
                    p3 = format_double(rec.label.sn_lambda);
                    break;
                case Kind::AH:
                    if (!rec.label.focus_re.empty()) p1 = format_double(rec.label.focus_re[0]);
                    if (rec.label.focus_re.size() > 1) p2 = format_double(rec.label.focus_re[1]);
                    p3 = format_double(rec.label.omega);
                    break;
                case Kind::BT0:
                case Kind::BT1:
                    p1 = format_double(rec.label.bt[0]);
                    p2 = format_double(rec.label.bt[1]);
                    p3 = format_double(rec.label.bt[2]);
                    break;
                default: break;
            }
            std::string flags;
            auto add_flag = [&](const char* f) {
                if (!flags.empty()) flags += ';';
                flags += f;
            };
            if (rec.nonhyperbolic) add_flag("nonhyperbolic");
            if (rec.degeneracy_eq) add_flag("det_tr_zero");
            if (rec.boundary_uncertain) add_flag("boundary");
            csv += format_double(rec.eps[0]) + "," + format_double(rec.eps[1]) + "," +
                   format_double(rec.x) + "," + format_double(rec.y) + "," + format_double(rec.det) +
                   "," + format_double(rec.tr) + "," + label + "," + p1 + "," + p2 + "," + p3 + "," +
                   flags + "\n";
        }
    }
    return csv;
}

} // namespace jetclass
