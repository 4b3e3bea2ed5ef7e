"""Smoke test for the cgameet extension module.

Build first:

    cargo build --release -p cga-meet-python --features extension-module
    cp target/release/libcgameet.so python/cgameet.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import cgameet as cg


def close(a, b, tol=1e-12):
    return abs(a - b) <= tol


def check_algebra():
    n, nbar = cg.n_inf(), cg.n_origin()
    assert close((n * nbar).scalar_part(), -1.0)
    p = cg.embed_point([1.0, 2.0, 3.0])
    assert close((p * p).scalar_part(), 0.0)
    assert close(p.scalar_product(n), -1.0)
    assert cg.extract_point(p) == [1.0, 2.0, 3.0]
    e1 = cg.Multivector.vector([1, 0, 0, 0, 0])
    e2 = cg.Multivector.vector([0, 1, 0, 0, 0])
    b = e1 ^ e2
    assert close((b * b).scalar_part(), -1.0)
    assert close((e1 << b).coeff(2), 1.0)
    assert b.is_blade()


def check_meets():
    a = cg.circle([0, 0, 0], 1.0)
    for d, cls, r2 in [(1.0, "real", 0.75), (2.0, "tangent", 0.0), (3.0, "virtual", -1.25)]:
        m = cg.meet_objects(a, cg.circle([d, 0, 0], 1.0))
        assert m.classification == cls, (d, m)
        assert close(m.r_squared, r2, 1e-10), (d, m.r_squared)
    real = cg.meet_objects(a, cg.circle([1, 0, 0], 1.0))
    oracle = cg.oracle_circle_circle([0, 0, 0], 1.0, [1, 0, 0], 1.0)
    got = sorted(real.points())
    want = sorted(oracle["points"])
    assert all(close(x, y, 1e-12) for p, q in zip(got, want) for x, y in zip(p, q))

    s = cg.meet_objects(cg.sphere([0, 0, 0], 1.0), cg.plane([0, 0, 2], [0, 0, 1]))
    assert s.classification == "virtual" and close(s.r_squared, -3.0, 1e-12)
    assert not s.is_planar

    line = cg.meet_objects(a, cg.line([0.5, 0, 0], [0, 1, 0]))
    assert line.classification == "real" and close(line.r_squared, 0.75, 1e-12)

    try:
        cg.meet_objects(a, cg.circle([0, 0, 0], 2.0))
    except ValueError:
        pass
    else:
        raise AssertionError("concentric circles should raise")


def check_locus():
    ds = cg.linspace(0.5, 3.5, 7)
    samples = cg.sweep("circle-circle", 1.0, ds, r2=1.0)
    got = [s["classification"] for s in samples]
    assert got == ["real"] * 3 + ["tangent"] + ["virtual"] * 3, got
    for s, d in zip(samples, ds):
        want = {-1: "virtual", 0: "tangent", 1: "real"}[cg.expected_sign(1.0, 1.0, d)]
        assert s["classification"] == want
    n, resid, slope = cg.hyperbola_check("circle-circle", 1.0, cg.linspace(3, 1000, 998), r2=1.0)
    assert n == 998 and resid < 1e-9 and slope < 1e-5
    sph = cg.sweep("sphere-plane", 2.0, [3.0])[0]
    assert sph["imaginary"] and close(sph["radius"], math.sqrt(5.0), 1e-12)


if __name__ == "__main__":
    check_algebra()
    check_meets()
    check_locus()
    print("smoke test passed")
