"""Smoke tests for the python module: exercises every exposed operation on
small known inputs. Run by ctest with the build tree on sys.path."""

import math
import sys

import jetclass


def check(cond, what):
    if not cond:
        print("FAIL:", what)
        sys.exit(1)
    print("ok:", what)


def main():
    sn0 = {"order": 2, "dx": [[2, 0, "1"]], "dy": [[0, 1, "-1"]]}
    rep = jetclass.classify_field(sn0)
    check(rep["kind"] == "SN" and rep["k"] == 0, "classify (x^2, -y) -> SN(0)")
    check(rep["payload"]["a"] == ["0", "1"], "SN payload chain")

    rot = {"order": 1, "dx": [[0, 1, "-1"]], "dy": [[1, 0, "1"]]}
    hyp = {"order": 1, "dx": [[1, 0, "1"]], "dy": [[0, 1, "-1"]]}
    rep = jetclass.classify_field(hyp)
    check(rep["kind"] == "H", "classify hyperbolic linear germ")

    # float backend via decimal coefficients
    focus = {
        "order": 3,
        "dx": [[0, 1, "-1.0"], [3, 0, "-1.0"], [1, 2, "-1.0"]],
        "dy": [[1, 0, "1.0"], [2, 1, "-1.0"], [0, 3, "-1.0"]],
    }
    rep = jetclass.classify_field(focus)
    check(rep["kind"] == "AH" and rep["k"] == 0, "classify weak focus -> AH(0)")
    check(abs(rep["payload"]["re_a"][0] + 1.0) < 1e-9, "first focus value -1")

    cent = jetclass.centralizer_of(sn0)
    check(cent["dim"] == 2, "centralizer of (x^2, -y) has dimension 2")

    mult = jetclass.multiplicity_of({"order": 2, "dx": [[2, 0, "1"]], "dy": [[0, 2, "1"]]})
    check(mult["multiplicity"] == 4, "multiplicity of (x^2, y^2) is 4")

    res = jetclass.imaginary_resultant({"rows": [["0", "-1"], ["1", "0"]]})
    check(res["is_zero"], "resultant vanishes for the rotation matrix")
    res = jetclass.imaginary_resultant({"rows": [["1", "0"], ["0", "1"]]})
    check(res["resultant"] == "4", "resultant of the identity is 4")

    cd = jetclass.stratum_codim("AH", k=1, samples=2, seed=5)
    check(cd["codim"] == 2, "AH depth-1 stratum has codimension 2")
    cd = jetclass.stratum_codim("BT0", samples=2)
    check(cd["codim"] == 2, "BT0 stratum has codimension 2")

    b = jetclass.multiplicity_bounds(2)
    check(abs(b["point_bound"] - 16.0 / (3.0 * math.sqrt(3.0))) < 1e-12, "point bound at k=2")
    check(b["floor_point"] == 3, "point bound floor at k=2")
    check(jetclass.gk_point_bound(1) == 2.0, "point bound at k=1 is exactly 2")

    br = jetclass.lie_bracket(rot, {"order": 1, "dx": [[1, 0, "1"]], "dy": [[0, 1, "1"]]}, 1)
    check(br["dx"] == [] and br["dy"] == [], "rotation commutes with the Euler field")

    family = {
        "k": 2,
        "dx": [[[0, 0], [0, 1], "1"]],
        "dy": [[[1, 0], [0, 0], "1"], [[0, 1], [0, 1], "1"], [[0, 0], [2, 0], "1"], [[0, 0], [1, 1], "1"]],
        "eps_box": [[-1, 1], [-1, 1]],
        "phase_box": [[-2, 2], [-2, 2]],
    }
    report = jetclass.scan_family(family, nx=11, ny=11)
    check(report["audit"]["violations"] == [], "scan audit has no violations")
    check(report["audit"]["case3"] > 0, "scan finds degenerate parameter values")
    check(all(abs(p[0]) < 1e-6 for p in report["loci"]["sn"]), "SN locus on eps1 = 0")

    # error paths surface as python exceptions
    try:
        jetclass.classify_field({"order": 2, "dx": [[3, 0, "1"]], "dy": []})
        check(False, "degree above order must raise")
    except ValueError:
        check(True, "degree above order raises ValueError")
    try:
        jetclass.classify_field({"order": 2, "dx": [[1, 0, "1"], [0, 1, "0.5"]], "dy": []})
        check(False, "mixed backends must raise")
    except ValueError:
        check(True, "mixed backends raise ValueError")

    print("smoke tests passed")


if __name__ == "__main__":
    main()
