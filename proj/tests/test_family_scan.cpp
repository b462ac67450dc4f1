#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jetclass/family.hpp"

#include <cmath>

using namespace jetclass;

namespace {

/// The Bogdanov-Takens unfolding x' = y, y' = e1 + e2 y + x^2 + x y.
/// Zeros satisfy y = 0 and x^2 = -e1; the Jacobian there is
/// [[0,1],[2x, e2+x]], so det = -2x and tr = e2 + x.
FamilySpec bt_family() {
    FamilySpec F;
    F.k = 2;
    F.dx = {{{0, 0}, 0, 1, 1.0}};
    F.dy = {{{1, 0}, 0, 0, 1.0}, {{0, 1}, 0, 1, 1.0}, {{0, 0}, 2, 0, 1.0}, {{0, 0}, 1, 1, 1.0}};
    F.eps_box = {{{-1.0, 1.0}, {-1.0, 1.0}}};
    F.phase_box = {{{-2.0, 2.0}, {-2.0, 2.0}}};
    return F;
}

} // namespace

TEST_CASE("instantiate freezes the parameters") {
    auto F = bt_family();
    auto v = instantiate(F, {0.25, -0.5}, 3);
    CHECK(v.dx.coeff(0, 1) == 1.0);
    CHECK(v.dy.coeff(0, 0) == 0.25);
    CHECK(v.dy.coeff(0, 1) == -0.5);
    CHECK(v.dy.coeff(2, 0) == 1.0);
    CHECK(v.dy.coeff(1, 1) == 1.0);
}

TEST_CASE("singular_points_at: the three analytic parameter values") {
    auto F = bt_family();
    ScanSettings s;

    SUBCASE("eps = (-1, 0): saddle at (1,0), node at (-1,0)") {
        auto recs = singular_points_at(F, {-1.0, 0.0}, s);
        REQUIRE(recs.size() == 2);
        CHECK(recs[0].x == doctest::Approx(-1.0).epsilon(1e-10));
        CHECK(recs[0].y == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(recs[0].det == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(recs[0].tr == doctest::Approx(-1.0).epsilon(1e-9));
        CHECK(recs[0].label.kind == Kind::H);
        CHECK(recs[1].x == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(recs[1].det == doctest::Approx(-2.0).epsilon(1e-9));
        CHECK(recs[1].label.kind == Kind::H);
        for (const auto& r : recs) CHECK(r.residual <= s.residual_tol);
    }
    SUBCASE("eps = (0, 0): single Bogdanov-Takens point at the origin") {
        auto recs = singular_points_at(F, {0.0, 0.0}, s);
        REQUIRE(recs.size() == 1);
        CHECK(std::fabs(recs[0].x) < 1e-7);
        CHECK(std::fabs(recs[0].y) < 1e-7);
        CHECK(recs[0].label.linear == LinearClass::BogdanovTakens);
        CHECK(recs[0].label.kind == Kind::BT0);
        CHECK(recs[0].label.bt[0] == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(recs[0].label.bt[1] == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("eps = (1, 0): no singular points in the box") {
        auto recs = singular_points_at(F, {1.0, 0.0}, s);
        CHECK(recs.empty());
    }
}

TEST_CASE("singular_points_at classifies the loci germs") {
    auto F = bt_family();
    ScanSettings s;
    // on the fold line e1 = 0 with e2 != 0 the origin is a saddle-node
    auto recs = singular_points_at(F, {0.0, 0.5}, s);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].label.kind == Kind::SN);
    CHECK(recs[0].label.k == 0);
    CHECK(recs[0].nonhyperbolic);

    // on the curve e1 = -e2^2 (e2 > 0) the left point is Andronov-Hopf
    double e2 = 0.5;
    auto recs2 = singular_points_at(F, {-e2 * e2, e2}, s);
    REQUIRE(recs2.size() == 2);
    const auto& left = recs2[0];
    CHECK(left.x == doctest::Approx(-0.5).epsilon(1e-9));
    CHECK(std::fabs(left.tr) < 1e-9);
    CHECK(left.det == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(left.label.kind == Kind::AH);
    CHECK(left.label.k == 0);
}

TEST_CASE("scan on a coarse grid: audit, loci, determinism") {
    auto F = bt_family();
    ScanSettings s;
    s.threads = 2;
    auto report = scan(F, 11, 11, s);

    SUBCASE("no violations; verdict counts cover the grid") {
        CHECK(report.violations.empty());
        CHECK(report.case1 + report.case2 + report.case3 == 11 * 11);
        CHECK(report.case3 > 0);
        CHECK(report.unresolved_labels == 0);
    }

    SUBCASE("SN locus points sit on the line e1 = 0") {
        REQUIRE(!report.sn_locus.empty());
        for (const auto& p : report.sn_locus) CHECK(std::fabs(p.eps[0]) < 1e-6);
    }

    SUBCASE("AH locus points sit on e1 = -e2^2 with e2 > 0") {
        REQUIRE(!report.ah_locus.empty());
        for (const auto& p : report.ah_locus) {
            CHECK(p.eps[1] > 0);
            CHECK(std::fabs(p.eps[0] + p.eps[1] * p.eps[1]) < 1e-4);
        }
    }

    SUBCASE("byte-identical rerun") {
        auto again = scan(F, 11, 11, s);
        REQUIRE(again.nodes.size() == report.nodes.size());
        for (size_t i = 0; i < report.nodes.size(); ++i) {
            const auto& a = report.nodes[i];
            const auto& b = again.nodes[i];
            REQUIRE(a.records.size() == b.records.size());
            CHECK(a.verdict == b.verdict);
            for (size_t r = 0; r < a.records.size(); ++r) {
                CHECK(a.records[r].x == b.records[r].x);
                CHECK(a.records[r].y == b.records[r].y);
                CHECK(a.records[r].det == b.records[r].det);
                CHECK(a.records[r].label.kind == b.records[r].label.kind);
            }
        }
        REQUIRE(again.sn_locus.size() == report.sn_locus.size());
        for (size_t i = 0; i < report.sn_locus.size(); ++i) {
            CHECK(again.sn_locus[i].eps[0] == report.sn_locus[i].eps[0]);
            CHECK(again.sn_locus[i].eps[1] == report.sn_locus[i].eps[1]);
        }
    }

    SUBCASE("grid refinement keeps every locus point") {
        auto fine = scan(F, 21, 21, s);
        CHECK(fine.violations.empty());
        for (const auto& p : report.sn_locus) {
            double best = 1e9;
            for (const auto& q : fine.sn_locus)
                best = std::min(best, std::hypot(p.eps[0] - q.eps[0], p.eps[1] - q.eps[1]));
            CHECK(best < 2 * s.locus_tol);
        }
        for (const auto& p : report.ah_locus) {
            double best = 1e9;
            for (const auto& q : fine.ah_locus)
                best = std::min(best, std::hypot(p.eps[0] - q.eps[0], p.eps[1] - q.eps[1]));
            CHECK(best < 2 * s.locus_tol);
        }
    }
}

TEST_CASE("audit verdicts on synthetic reports") {
    ScanReport rep;
    rep.nx = rep.ny = 1;
    rep.nodes.resize(1);
    auto& node = rep.nodes[0];

    auto nh_record = [](Kind kind, int k) {
        SingularPointRecord r;
        r.nonhyperbolic = true;
        r.label.kind = kind;
        r.label.k = k;
        return r;
    };

    SUBCASE("all hyperbolic is Case1") {
        SingularPointRecord h;
        h.label.kind = Kind::H;
        node.records = {h, h};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Case1);
    }
    SUBCASE("one SN(0) is Case3") {
        node.records = {nh_record(Kind::SN, 0)};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Case3);
    }
    SUBCASE("one SN(2) violates") {
        node.records = {nh_record(Kind::SN, 2)};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Violation);
        CHECK(rep.violations.size() == 1);
    }
    SUBCASE("two points, both codimension one, is Case2") {
        node.records = {nh_record(Kind::SN, 0), nh_record(Kind::AH, 0)};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Case2);
    }
    SUBCASE("two points with one deeper degeneracy violates") {
        node.records = {nh_record(Kind::SN, 0), nh_record(Kind::AH, 1)};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Violation);
    }
    SUBCASE("three non-hyperbolic points violate") {
        node.records = {nh_record(Kind::SN, 0), nh_record(Kind::SN, 0), nh_record(Kind::AH, 0)};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Violation);
    }
    SUBCASE("boundary-uncertain records stay out of the count") {
        auto r = nh_record(Kind::SN, 0);
        r.boundary_uncertain = true;
        node.records = {r};
        audit_main_theorem(rep);
        CHECK(rep.nodes[0].verdict == AuditVerdict::Case1);
    }
}

TEST_CASE("cells that defeat both exclusion and Newton get flagged") {
    // (x^2 + y^2 + 1/10000, x) has no real zeros, but near the origin the
    // first component is too small for the gradient bound to exclude cells
    // and Newton has nothing to converge to
    FamilySpec F;
    F.k = 1;
    F.dx = {{{0}, 2, 0, 1.0}, {{0}, 0, 2, 1.0}, {{0}, 0, 0, 1e-4}};
    F.dy = {{{0}, 1, 0, 1.0}};
    F.eps_box = {{{-1.0, 1.0}, {0.0, 0.0}}};
    F.phase_box = {{{-2.0, 2.0}, {-2.0, 2.0}}};
    ScanSettings s;
    std::vector<std::array<double, 4>> flagged;
    auto recs = singular_points_at(F, {0.0}, s, &flagged);
    CHECK(recs.empty());
    CHECK(!flagged.empty());
    for (const auto& cell : flagged) {
        CHECK(std::fabs(cell[0]) < 0.5); // all flags cluster near the origin
        CHECK(std::fabs(cell[2]) < 0.5);
    }
}

TEST_CASE("family validation errors") {
    auto F = bt_family();
    F.k = 3;
    CHECK_THROWS_AS(F.validate(), Error);
    F = bt_family();
    F.eps_box[0] = {1.0, -1.0};
    CHECK_THROWS_AS(F.validate(), Error);
    F = bt_family();
    F.dx[0].eps_exp = {1};
    CHECK_THROWS_AS(F.validate(), Error);
    F = bt_family();
    CHECK_THROWS_AS(scan(F, 1, 5, ScanSettings{}), Error);
}
