"""Builds the extension module and exercises the bindings.

Run from the repository root: python3 python/smoke_test.py
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    subprocess.run(
        ["cargo", "build", "-p", "frieze-py", "--release", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = os.path.join(ROOT, "target", "release", "libfrieze.so")
    dest = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(dest, "frieze.so"))
    sys.path.insert(0, dest)
    import frieze

    return frieze


def main():
    frieze = load_module()

    f = frieze.Frieze([1, 3, 2, 2, 1, 4, 2])
    assert (f.n, f.width) == (7, 4)
    assert f.validate() == {"passed": True, "failure": None}
    assert f.row(1) == ["3", "2", "2", "1", "4", "2", "1"]
    assert f.entry(0, 7) == "0"
    assert json.loads(f.to_json())["width"] == 4

    g = frieze.Frieze.from_triangulation(7, [(1, 6), (3, 5), (1, 5), (2, 5)])
    assert g == f

    r = frieze.Frieze(["1", Fraction(3), 2, 2, 1, 4, 2])
    assert r == f
    try:
        frieze.Frieze([1, 1, 1, 1, 1])
        raise AssertionError("non-closing row accepted")
    except ValueError as e:
        assert "does not close" in str(e)

    assert frieze.catalan_count(8) == "132"
    assert len(frieze.triangulations(6)) == 14

    h = frieze.Frieze([2, 1, 3, 2, 2, 1, 4])
    for k in (1, 2):
        check = frieze.problem1_check(f, h, k)
        assert check["count"] >= 4, check
    assert frieze.problem1_check(f, f, 1)["verdict"] == "degenerate"
    assert frieze.orthogonality_sum(f, h, 0, 1) == "0"

    assert frieze.sign_changes([1, -1, 0, 2, -3]) == 4
    assert frieze.sign_changes([1.0, 2.0, 3.0]) == 0
    c1, c2 = frieze.cross_ratios(0, 1, "inf", 3)
    assert Fraction(c2) - Fraction(c1) == 1

    a, b, report = frieze.cuntz()
    assert a.width == 5 and b.width == 5
    viol = json.loads(report)["violations"]
    assert viol and viol[0]["k"] == 3 and viol[0]["count"] == 0

    scan = json.loads(frieze.scan_cc(4, [1, 2]))
    assert scan["pairs_checked"] == 861 and not scan["violations"]
    rnd = json.loads(frieze.scan_random(9, [1, 2], 50, 3))
    assert rnd["pairs_checked"] == 50

    rows = frieze.random_frieze(9, 1)
    assert len(rows) == 10 and all(v > 0 for v in rows[2])

    cs = frieze.c_sequence([1.0, 0.0, 0.0, 0.0, 0.0], 2)
    assert frieze.sign_changes(cs) == 4
    info = frieze.infinitesimal_check([1.0, 0.0, 0.0, 0.0, 0.0], 2)
    assert info["count"] == 4 and not info["degenerate"]

    print("python bindings ok")


if __name__ == "__main__":
    main()
