#!/usr/bin/env python3
"""Smoke test for the fanodefect_py extension module.

Builds the cdylib with cargo, copies it next to this script under the
importable name, and exercises each exported function once.

Usage: python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent

BURKHARDT = """\
ring: x0 x1 x2 x3 x4
quartic: x0^4 - x0*x1^3 - x0*x2^3 - x0*x3^3 - x0*x4^3 + 3*x1*x2*x3*x4
plane: x0; x1
"""


def build_extension():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "fanodefect-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "libfanodefect_py.so"
    if not built.exists():  # macOS
        built = ROOT / "target" / "release" / "libfanodefect_py.dylib"
    dest = pathlib.Path(__file__).resolve().parent / "fanodefect_py.so"
    shutil.copy(built, dest)
    return dest


def main():
    dest = build_extension()
    sys.path.insert(0, str(dest.parent))
    import fanodefect_py as fd

    report = fd.analyze(BURKHARDT, primes=[10007, 10009, 10037], jobs=2)
    assert report["contains_plane"] is True
    assert report["defect"] == {
        "n3": 4,
        "m2": 0,
        "non_reduced": 0,
        "cl_rank_bound": 16,
        "defect_bound": 15,
    }, report["defect"]
    checks = dict(report["checks"])
    checks.pop("witness_prime")
    checks.pop("fibre_count")
    assert all(checks.values()), checks
    assert report["warnings"] == []
    print("analyze:", json.dumps(report["defect"]))

    cert = fd.mmp_bound(3)
    assert cert["cl_rank_bound"] == 10, cert
    cert = fd.mmp_bound(3, no_quadric=True)
    assert cert["cl_rank_bound"] == 9, cert
    assert cert["closed_form_defect_bound"] == 8
    cert = fd.mmp_bound_index2(1)
    assert cert["picard_rank_bound"] == 7, cert
    print("mmp_bound: genus-3 bounds 10/9, index-2 degree-1 bound 7")

    gb = fd.groebner_basis(["x0", "x1", "x2"], ["x0^2 - x1", "x0^3 - x2"], order="lex")
    assert "x1^3 - x2^2" in gb["basis"], gb
    assert gb["krull_dimension"] == 1
    print("groebner_basis:", gb["basis"])

    scan = fd.singular_scan(
        ["x0", "x1", "x2", "x3", "x4"],
        "x0^4 - x0*x1^3 - x0*x2^3 - x0*x3^3 - x0*x4^3 + 3*x1*x2*x3*x4",
    )
    assert scan["isolated"] and all(d == 45 for _, d in scan["degrees"]), scan
    print("singular_scan: 45 nodes at", [p for p, _ in scan["degrees"]])

    try:
        fd.analyze("ring: x0 x1 x2 x3 x4\nquartic: x0^4 + x1^4 + x2^4 + x3^4 + x4^4\n")
    except ValueError as exc:
        stage, partial = exc.args
        assert "containment" in stage, stage
        assert partial["contains_plane"] is False
        print("analyze failure path:", stage)
    else:
        raise AssertionError("Fermat quartic should fail containment")

    print("smoke test passed")


if __name__ == "__main__":
    main()
