"""End-to-end contract test for the command line: exit codes are 0 on
success, 1 on input errors, 2 on unresolved-dominated results; file outputs
land where asked. Run by ctest with JETCLASS_BIN set."""

import json
import os
import subprocess
import sys
import tempfile


BIN = os.environ["JETCLASS_BIN"]


def run(*args, expect):
    proc = subprocess.run([BIN, *args], capture_output=True, text=True)
    if proc.returncode != expect:
        print(f"FAIL: {' '.join(args)} -> exit {proc.returncode}, expected {expect}")
        print(proc.stdout)
        print(proc.stderr)
        sys.exit(1)
    print(f"ok: {' '.join(args)} -> exit {proc.returncode}")
    return proc


def main():
    tmp = tempfile.mkdtemp(prefix="jetclass_cli_")

    def write(name, payload):
        path = os.path.join(tmp, name)
        with open(path, "w") as fh:
            fh.write(json.dumps(payload))
        return path

    sn0 = write("sn0.json", {"order": 2, "dx": [[2, 0, "1"]], "dy": [[0, 1, "-1"]]})
    p = run("classify", "--input", sn0, expect=0)
    rep = json.loads(p.stdout)
    assert rep["kind"] == "SN" and rep["k"] == 0, rep

    # identically degenerate chain: unresolved -> exit 2
    flat = write("flat.json", {"order": 3, "dx": [[1, 1, "1"]], "dy": [[0, 1, "-1"]]})
    run("classify", "--input", flat, expect=2)

    run("classify", "--input", os.path.join(tmp, "missing.json"), expect=1)
    bad = os.path.join(tmp, "bad.json")
    with open(bad, "w") as fh:
        fh.write("{nope")
    run("classify", "--input", bad, expect=1)

    # centralizer: rational only; float input is an input error
    out = os.path.join(tmp, "cent.json")
    run("centralizer", "--input", sn0, "--report", out, expect=0)
    with open(out) as fh:
        assert json.load(fh)["dim"] == 2
    float_field = write("float.json", {"order": 2, "dx": [[2, 0, "1.0"]], "dy": [[0, 1, "-1.0"]]})
    run("centralizer", "--input", float_field, expect=1)

    # codim defaults reproduce the table
    p = run("codim", "--class", "SN", "--k", "1", "--samples", "3", "--seed", "7", expect=0)
    assert json.loads(p.stdout)["codim"] == 2

    p = run("codim", "--class", "BT1", "--samples", "2", expect=0)
    assert json.loads(p.stdout)["codim"] == 3

    rot = write("rot.json", {"rows": [["0", "-1"], ["1", "0"]]})
    p = run("resultant", "--matrix", rot, expect=0)
    assert json.loads(p.stdout)["is_zero"] is True

    p = run("multiplicity", "--input", sn0, expect=0)
    assert json.loads(p.stdout)["multiplicity"] == 2
    zero = write("zero.json", {"order": 2, "dx": [], "dy": []})
    run("multiplicity", "--input", zero, "--cutoff", "6", expect=2)

    p = run("bounds", "--k", "2", expect=0)
    b = json.loads(p.stdout)
    assert b["floor_point"] == 3 and b["floor_sum"] == 6

    family = write(
        "family.json",
        {
            "k": 2,
            "dx": [[[0, 0], [0, 1], "1"]],
            "dy": [
                [[1, 0], [0, 0], "1"],
                [[0, 1], [0, 1], "1"],
                [[0, 0], [2, 0], "1"],
                [[0, 0], [1, 1], "1"],
            ],
            "eps_box": [[-1, 1], [-1, 1]],
            "phase_box": [[-2, 2], [-2, 2]],
        },
    )
    report = os.path.join(tmp, "scan.json")
    csv = os.path.join(tmp, "points.csv")
    run("scan", "--family", family, "--grid", "7x7", "--out", report, "--csv", csv, expect=0)
    with open(report) as fh:
        rep = json.load(fh)
    assert rep["audit"]["violations"] == []
    with open(csv) as fh:
        header = fh.readline().strip()
    assert header == "eps1,eps2,x,y,det,tr,label,payload1,payload2,payload3,flags", header

    run("scan", "--family", family, "--grid", "banana", expect=1)

    print("cli contract tests passed")


if __name__ == "__main__":
    main()
