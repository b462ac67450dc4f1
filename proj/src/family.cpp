#include "jetclass/family.hpp"

#include "jetclass/degeneracy.hpp"
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace jetclass {

int FamilySpec::phase_degree() const {
    int d = 0;
    for (const auto& t : dx) d = std::max(d, t.i + t.j);
    for (const auto& t : dy) d = std::max(d, t.i + t.j);
    return d;
}

void FamilySpec::validate() const {
    if (k != 1 && k != 2) throw Error("family: parameter count must be 1 or 2");
    for (const auto* comp : {&dx, &dy})
        for (const auto& t : *comp) {
            if (static_cast<int>(t.eps_exp.size()) != k)
                throw Error("family: term parameter exponent count does not match k");
            for (int e : t.eps_exp)
                if (e < 0) throw Error("family: negative parameter exponent");
            if (t.i < 0 || t.j < 0) throw Error("family: negative phase exponent");
        }
    for (int d = 0; d < 2; ++d) {
        if (!(eps_box[d][0] <= eps_box[d][1])) throw Error("family: empty parameter box");
        if (!(phase_box[d][0] < phase_box[d][1])) throw Error("family: empty phase box");
    }
}

VectorFieldJet<double> instantiate(const FamilySpec& F, const std::vector<double>& eps, int order) {
    if (static_cast<int>(eps.size()) != F.k) throw Error("instantiate: wrong parameter count");
    int m = std::max({order, F.phase_degree(), 1});
    VectorFieldJet<double> v(m);
    for (int comp = 0; comp < 2; ++comp) {
        const auto& terms = comp == 0 ? F.dx : F.dy;
        Poly2<double>& p = comp == 0 ? v.dx : v.dy;
        for (const auto& t : terms) {
            double c = t.c;
            for (int d = 0; d < F.k; ++d)
                for (int e = 0; e < t.eps_exp[static_cast<size_t>(d)]; ++e) c *= eps[static_cast<size_t>(d)];
            p.add_term(t.i, t.j, c);
        }
    }
    return v;
}

const char* to_string(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Case1: return "Case1";
        case AuditVerdict::Case2: return "Case2";
        case AuditVerdict::Case3: return "Case3";
        case AuditVerdict::Violation: return "Violation";
    }
    return "?";
}

namespace {

struct FrozenField {
    Poly2<double> p1, p2;             // components
    Poly2<double> j11, j12, j21, j22; // Jacobian entries
    double grad_bound1 = 0, grad_bound2 = 0; // sup |grad| over the phase box
};

FrozenField freeze(const FamilySpec& F, const std::vector<double>& eps) {
    VectorFieldJet<double> v = instantiate(F, eps);
    FrozenField f;
    f.p1 = v.dx;
    f.p2 = v.dy;
    f.j11 = v.dx.deriv_x();
    f.j12 = v.dx.deriv_y();
    f.j21 = v.dy.deriv_x();
    f.j22 = v.dy.deriv_y();
    double X = std::max({std::fabs(F.phase_box[0][0]), std::fabs(F.phase_box[0][1]), 1e-30});
    double Y = std::max({std::fabs(F.phase_box[1][0]), std::fabs(F.phase_box[1][1]), 1e-30});
    auto bound = [&](const Poly2<double>& p) {
        double b = 0;
        for (const auto& [mono, c] : p.terms())
            b += std::fabs(c) * (mono.i * std::pow(X, mono.i - 1) * std::pow(Y, mono.j) +
                                 mono.j * std::pow(X, mono.i) * std::pow(Y, mono.j - 1));
        return b;
    };
    f.grad_bound1 = bound(f.p1);
    f.grad_bound2 = bound(f.p2);
    return f;
}

struct NewtonOutcome {
    bool converged = false;
    double x = 0, y = 0, residual = 0;
};

NewtonOutcome newton(const FrozenField& f, double x, double y, int max_iter = 50) {
    NewtonOutcome out;
    for (int it = 0; it < max_iter; ++it) {
        double F1 = f.p1.eval(x, y), F2 = f.p2.eval(x, y);
        double a = f.j11.eval(x, y), b = f.j12.eval(x, y);
        double c = f.j21.eval(x, y), d = f.j22.eval(x, y);
        double det = a * d - b * c;
        if (det == 0.0 || !std::isfinite(det)) return out;
        double sx = (d * F1 - b * F2) / det;
        double sy = (a * F2 - c * F1) / det;
        x -= sx;
        y -= sy;
        if (!std::isfinite(x) || !std::isfinite(y)) return out;
        if (std::fabs(sx) + std::fabs(sy) < 1e-14 * (1.0 + std::fabs(x) + std::fabs(y))) {
            out.converged = true;
            out.x = x;
            out.y = y;
            out.residual = std::max(std::fabs(f.p1.eval(x, y)), std::fabs(f.p2.eval(x, y)));
            return out;
        }
    }
    return out;
}

bool in_box(const FamilySpec& F, double x, double y, double margin) {
    return x >= F.phase_box[0][0] - margin && x <= F.phase_box[0][1] + margin &&
           y >= F.phase_box[1][0] - margin && y <= F.phase_box[1][1] + margin;
}

void accept_root(std::vector<NewtonOutcome>& roots, const NewtonOutcome& r, double rho) {
    for (auto& kept : roots) {
        if (std::hypot(kept.x - r.x, kept.y - r.y) < rho) {
            if (r.residual < kept.residual) kept = r;
            return;
        }
    }
    roots.push_back(r);
}

/// Cell-level search: gradient-bound exclusion, Newton from the center,
/// subdivision while the cell stays suspicious, flagging as the fallback.
void search_cell(const FamilySpec& F, const FrozenField& f, const ScanSettings& s, double x0,
                 double x1, double y0, double y1, int depth, std::vector<NewtonOutcome>& roots,
                 std::vector<std::array<double, 4>>* flagged) {
    double cx = (x0 + x1) / 2, cy = (y0 + y1) / 2;
    double r = std::hypot(x1 - x0, y1 - y0) / 2;
    if (std::fabs(f.p1.eval(cx, cy)) > f.grad_bound1 * r) return; // no zero possible here
    if (std::fabs(f.p2.eval(cx, cy)) > f.grad_bound2 * r) return;
    NewtonOutcome n = newton(f, cx, cy);
    bool found_here = false;
    if (n.converged && n.residual <= s.residual_tol && in_box(F, n.x, n.y, s.dedup_radius)) {
        accept_root(roots, n, s.dedup_radius);
        found_here = n.x >= x0 - s.dedup_radius && n.x <= x1 + s.dedup_radius &&
                     n.y >= y0 - s.dedup_radius && n.y <= y1 + s.dedup_radius;
    }
    if (found_here) return;
    if (depth >= 2) {
        if (flagged) flagged->push_back({x0, x1, y0, y1});
        return;
    }
    for (int sub = 0; sub < 4; ++sub) {
        double mx = (x0 + x1) / 2, my = (y0 + y1) / 2;
        double nx0 = (sub % 2 == 0) ? x0 : mx;
        double nx1 = (sub % 2 == 0) ? mx : x1;
        double ny0 = (sub / 2 == 0) ? y0 : my;
        double ny1 = (sub / 2 == 0) ? my : y1;
        search_cell(F, f, s, nx0, nx1, ny0, ny1, depth + 1, roots, flagged);
    }
}

std::vector<NewtonOutcome> find_roots(const FamilySpec& F, const FrozenField& f,
                                      const ScanSettings& s,
                                      std::vector<std::array<double, 4>>* flagged) {
    std::vector<NewtonOutcome> roots;
    const int G = std::max(2, s.newton_seed_grid);
    const double dx = (F.phase_box[0][1] - F.phase_box[0][0]) / G;
    const double dy = (F.phase_box[1][1] - F.phase_box[1][0]) / G;
    for (int gj = 0; gj < G; ++gj) {
        for (int gi = 0; gi < G; ++gi) {
            double x0 = F.phase_box[0][0] + gi * dx;
            double y0 = F.phase_box[1][0] + gj * dy;
            search_cell(F, f, s, x0, x0 + dx, y0, y0 + dy, 0, roots, flagged);
        }
    }
    std::sort(roots.begin(), roots.end(), [](const NewtonOutcome& a, const NewtonOutcome& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return roots;
}

SingularPointRecord make_record(const FamilySpec& F, const std::vector<double>& eps,
                                const NewtonOutcome& root, const ScanSettings& s) {
    SingularPointRecord rec;
    rec.eps = {eps[0], F.k > 1 ? eps[1] : 0.0};
    rec.x = root.x;
    rec.y = root.y;
    rec.residual = root.residual;

    int order = std::max({s.classify_order, F.phase_degree(), 2});
    VectorFieldJet<double> v = instantiate(F, eps, order);
    VectorFieldJet<double> germ(order, v.dx.shifted(root.x, root.y), v.dy.shifted(root.x, root.y));
    // the Newton point is the working zero; drop its residual constant term
    detail::set_coeff(germ.dx, 0, 0, 0.0);
    detail::set_coeff(germ.dy, 0, 0, 0.0);

    auto A = germ.linear_part();
    rec.det = A[0] * A[3] - A[1] * A[2];
    rec.tr = A[0] + A[3];
    rec.label = classify_germ(germ, s.tol);
    rec.nonhyperbolic = rec.label.linear != LinearClass::Hyperbolic;
    rec.degeneracy_eq = nonhyperbolic_test(A, s.tol);

    double margin = s.dedup_radius;
    rec.boundary_uncertain =
        !(root.x >= F.phase_box[0][0] + margin && root.x <= F.phase_box[0][1] - margin &&
          root.y >= F.phase_box[1][0] + margin && root.y <= F.phase_box[1][1] - margin);
    return rec;
}

bool label_in_w(const GermReport& label) {
    switch (label.kind) {
        case Kind::SN:
        case Kind::AH: return label.k >= 0 && label.k <= 1;
        case Kind::BT0:
        case Kind::BT1: return true;
        default: return false;
    }
}

void audit_node(NodeResult& node) {
    node.n_nonhyperbolic = 0;
    node.n_degeneracy_eq = 0;
    std::vector<const SingularPointRecord*> nh;
    for (const auto& rec : node.records) {
        if (rec.boundary_uncertain) continue;
        if (rec.degeneracy_eq) node.n_degeneracy_eq++;
        if (rec.nonhyperbolic) {
            node.n_nonhyperbolic++;
            nh.push_back(&rec);
        }
    }
    node.detail.clear();
    if (nh.empty()) {
        node.verdict = AuditVerdict::Case1;
        return;
    }
    auto describe = [](const SingularPointRecord& r) {
        std::string s = to_string(r.label.kind);
        if (r.label.k >= 0) s += "(" + std::to_string(r.label.k) + ")";
        return s + " at (" + std::to_string(r.x) + ", " + std::to_string(r.y) + ")";
    };
    if (nh.size() == 1) {
        if (label_in_w(nh[0]->label)) {
            node.verdict = AuditVerdict::Case3;
        } else {
            node.verdict = AuditVerdict::Violation;
            node.detail = "one non-hyperbolic point outside W: " + describe(*nh[0]);
        }
        return;
    }
    if (nh.size() == 2) {
        bool both_codim1 = true;
        for (const auto* r : nh) {
            bool ok = (r->label.kind == Kind::SN && r->label.k == 0) ||
                      (r->label.kind == Kind::AH && r->label.k == 0);
            if (!ok) both_codim1 = false;
        }
        if (both_codim1) {
            node.verdict = AuditVerdict::Case2;
        } else {
            node.verdict = AuditVerdict::Violation;
            node.detail = "two non-hyperbolic points not both SN_0/AH_0: " + describe(*nh[0]) +
                          "; " + describe(*nh[1]);
        }
        return;
    }
    node.verdict = AuditVerdict::Violation;
    node.detail = std::to_string(nh.size()) + " non-hyperbolic points at one parameter value";
}

unsigned thread_budget(const ScanSettings& s, size_t jobs) {
    unsigned n = s.threads;
    if (n == 0) {
        n = std::thread::hardware_concurrency();
        if (n == 0) n = 1;
    }
    if (const char* env = std::getenv("JETCLASS_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
    return std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(jobs)));
}

std::vector<NewtonOutcome> roots_from_seeds(const FamilySpec& F, const FrozenField& f,
                                            const ScanSettings& s,
                                            const std::vector<std::array<double, 2>>& seeds) {
    std::vector<NewtonOutcome> roots;
    for (const auto& seed : seeds) {
        NewtonOutcome n = newton(f, seed[0], seed[1]);
        if (n.converged && n.residual <= s.residual_tol && in_box(F, n.x, n.y, s.dedup_radius))
            accept_root(roots, n, s.dedup_radius);
    }
    std::sort(roots.begin(), roots.end(), [](const NewtonOutcome& a, const NewtonOutcome& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return roots;
}

struct EdgeScan {
    const FamilySpec* F;
    const ScanSettings* s;
    std::vector<double> eps_a, eps_b;
};

std::vector<double> lerp_eps(const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> e(a.size());
    for (size_t i = 0; i < a.size(); ++i) e[i] = a[i] + t * (b[i] - a[i]);
    return e;
}

double jac_det(const FrozenField& f, double x, double y) {
    return f.j11.eval(x, y) * f.j22.eval(x, y) - f.j12.eval(x, y) * f.j21.eval(x, y);
}
double jac_tr(const FrozenField& f, double x, double y) {
    return f.j11.eval(x, y) + f.j22.eval(x, y);
}

/// Bisects a root-count change along a parameter edge (a fold of the zero
/// set, i.e. an SN crossing). Seeds come from the richer side.
void bisect_fold(const EdgeScan& E, std::vector<std::array<double, 2>> seeds, size_t count_a,
                 std::vector<LocusPoint>& out) {
    double lo = 0.0, hi = 1.0;
    double edge_len = 0;
    for (size_t i = 0; i < E.eps_a.size(); ++i)
        edge_len = std::hypot(edge_len, E.eps_b[i] - E.eps_a[i]);
    int steps = static_cast<int>(std::ceil(std::log2(std::max(2.0, edge_len / E.s->locus_tol)))) + 2;
    std::vector<std::array<double, 2>> cur = seeds;
    for (int it = 0; it < steps; ++it) {
        double mid = (lo + hi) / 2;
        auto eps = lerp_eps(E.eps_a, E.eps_b, mid);
        FrozenField f = freeze(*E.F, eps);
        auto roots = roots_from_seeds(*E.F, f, *E.s, cur);
        if (roots.size() >= count_a) {
            lo = mid;
            cur.clear();
            for (const auto& r : roots) cur.push_back({r.x, r.y});
        } else {
            hi = mid;
        }
    }
    auto eps = lerp_eps(E.eps_a, E.eps_b, lo);
    FrozenField f = freeze(*E.F, eps);
    auto roots = roots_from_seeds(*E.F, f, *E.s, cur);
    if (roots.empty()) return;
    LocusPoint p;
    p.type = "SN";
    p.eps = {eps[0], eps.size() > 1 ? eps[1] : 0.0};
    // the colliding pair has the smallest Jacobian determinant
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : roots) {
        double d = std::fabs(jac_det(f, r.x, r.y));
        if (d < best) {
            best = d;
            p.x = r.x;
            p.y = r.y;
        }
    }
    out.push_back(p);
}

/// Bisects det = 0 (SN) or tr = 0 with det > 0 (AH) along the continuation
/// of one matched root across a parameter edge.
void bisect_sign(const EdgeScan& E, const std::array<double, 2>& seed_a, double va, bool use_tr,
                 std::vector<LocusPoint>& out) {
    double lo = 0.0, hi = 1.0;
    std::array<double, 2> seed = seed_a;
    double edge_len = 0;
    for (size_t i = 0; i < E.eps_a.size(); ++i)
        edge_len = std::hypot(edge_len, E.eps_b[i] - E.eps_a[i]);
    int steps = static_cast<int>(std::ceil(std::log2(std::max(2.0, edge_len / E.s->locus_tol)))) + 2;
    std::array<double, 2> point = seed_a;
    for (int it = 0; it < steps; ++it) {
        double mid = (lo + hi) / 2;
        auto eps = lerp_eps(E.eps_a, E.eps_b, mid);
        FrozenField f = freeze(*E.F, eps);
        NewtonOutcome n = newton(f, seed[0], seed[1]);
        if (!n.converged) return; // lost the branch; the fold detector owns this edge
        double val = use_tr ? jac_tr(f, n.x, n.y) : jac_det(f, n.x, n.y);
        if ((val > 0) == (va > 0)) {
            lo = mid;
            seed = {n.x, n.y};
        } else {
            hi = mid;
        }
        point = {n.x, n.y};
    }
    auto eps = lerp_eps(E.eps_a, E.eps_b, (lo + hi) / 2);
    LocusPoint p;
    p.type = use_tr ? "AH" : "SN";
    p.eps = {eps[0], eps.size() > 1 ? eps[1] : 0.0};
    p.x = point[0];
    p.y = point[1];
    out.push_back(p);
}

void scan_edge(const FamilySpec& F, const ScanSettings& s, const NodeResult& a, const NodeResult& b,
               std::vector<LocusPoint>& sn, std::vector<LocusPoint>& ah) {
    EdgeScan E{&F, &s, {a.eps[0], a.eps[1]}, {b.eps[0], b.eps[1]}};
    if (a.records.size() != b.records.size()) {
        std::vector<std::array<double, 2>> seeds;
        const NodeResult& src = a.records.size() > b.records.size() ? a : b;
        for (const auto& r : src.records) seeds.push_back({r.x, r.y});
        if (a.records.size() > b.records.size()) {
            bisect_fold(E, seeds, a.records.size(), sn);
        } else {
            EdgeScan R{&F, &s, E.eps_b, E.eps_a};
            bisect_fold(R, seeds, b.records.size(), sn);
        }
        return;
    }
    // equal counts: greedy nearest matching, then sign comparison per branch
    std::vector<bool> used(b.records.size(), false);
    for (const auto& ra : a.records) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < b.records.size(); ++i) {
            if (used[i]) continue;
            double d = std::hypot(ra.x - b.records[i].x, ra.y - b.records[i].y);
            if (d < bd) {
                bd = d;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) continue;
        used[static_cast<size_t>(best)] = true;
        const auto& rb = b.records[static_cast<size_t>(best)];
        if (ra.det * rb.det < 0) bisect_sign(E, {ra.x, ra.y}, ra.det, false, sn);
        if (ra.tr * rb.tr < 0 && ra.det > 0 && rb.det > 0)
            bisect_sign(E, {ra.x, ra.y}, ra.tr, true, ah);
    }
}

} // namespace

std::vector<SingularPointRecord> singular_points_at(const FamilySpec& F,
                                                    const std::vector<double>& eps,
                                                    const ScanSettings& settings,
                                                    std::vector<std::array<double, 4>>* flagged) {
    F.validate();
    settings.tol.validate();
    FrozenField f = freeze(F, eps);
    auto roots = find_roots(F, f, settings, flagged);
    std::vector<SingularPointRecord> records;
    records.reserve(roots.size());
    for (const auto& r : roots) records.push_back(make_record(F, eps, r, settings));
    return records;
}

void audit_main_theorem(ScanReport& report) {
    report.case1 = report.case2 = report.case3 = 0;
    report.violations.clear();
    report.unresolved_labels = 0;
    report.classified_records = 0;
    for (auto& node : report.nodes) {
        audit_node(node);
        switch (node.verdict) {
            case AuditVerdict::Case1: report.case1++; break;
            case AuditVerdict::Case2: report.case2++; break;
            case AuditVerdict::Case3: report.case3++; break;
            case AuditVerdict::Violation:
                report.violations.push_back("eps=(" + std::to_string(node.eps[0]) + ", " +
                                            std::to_string(node.eps[1]) + "): " + node.detail);
                break;
        }
        for (const auto& rec : node.records) {
            report.classified_records++;
            if (rec.label.kind == Kind::Unresolved) report.unresolved_labels++;
        }
    }
}

ScanReport scan(const FamilySpec& F, int nx, int ny, const ScanSettings& settings) {
    F.validate();
    if (F.k != 2) throw Error("scan: grid scanning needs a two-parameter family");
    if (nx < 2 || ny < 2) throw Error("scan: grid must be at least 2x2");

    ScanReport report;
    report.nx = nx;
    report.ny = ny;
    report.settings = settings;
    report.nodes.resize(static_cast<size_t>(nx) * ny);

    auto node_eps = [&](int gi, int gj) {
        double e1 = F.eps_box[0][0] + (F.eps_box[0][1] - F.eps_box[0][0]) * gi / (nx - 1);
        double e2 = F.eps_box[1][0] + (F.eps_box[1][1] - F.eps_box[1][0]) * gj / (ny - 1);
        return std::array<double, 2>{e1, e2};
    };

    const size_t total = report.nodes.size();
    std::atomic<size_t> next{0};
    unsigned workers = thread_budget(settings, total);
    auto work = [&]() {
        for (;;) {
            size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            int gi = static_cast<int>(idx) % nx;
            int gj = static_cast<int>(idx) / nx;
            NodeResult& node = report.nodes[idx];
            node.gi = gi;
            node.gj = gj;
            node.eps = node_eps(gi, gj);
            std::vector<double> eps = {node.eps[0], node.eps[1]};
            node.records = singular_points_at(F, eps, settings, &node.flagged_cells);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    audit_main_theorem(report);

    for (int gj = 0; gj < ny; ++gj)
        for (int gi = 0; gi + 1 < nx; ++gi)
            scan_edge(F, settings, report.nodes[static_cast<size_t>(gj) * nx + gi],
                      report.nodes[static_cast<size_t>(gj) * nx + gi + 1], report.sn_locus,
                      report.ah_locus);
    for (int gj = 0; gj + 1 < ny; ++gj)
        for (int gi = 0; gi < nx; ++gi)
            scan_edge(F, settings, report.nodes[static_cast<size_t>(gj) * nx + gi],
                      report.nodes[static_cast<size_t>(gj + 1) * nx + gi], report.sn_locus,
                      report.ah_locus);
    return report;
}

} // namespace jetclass
