"""Acceptance criteria 1-9; each test prints one ``ACCEPTANCE`` line."""
import time
from fractions import Fraction

import numpy as np
import pytest

from orbitquant import catalog
from orbitquant.orbits import pfaffian_at
from orbitquant.quantize.verify import Config, verify_suite

DELTA = "g4delta:δ=1"
_cache = {}


def suite(group, name):
    key = (group, name)
    if key not in _cache:
        t0 = time.perf_counter()
        rep = verify_suite(group, name, Config())
        _cache[key] = (rep, time.perf_counter() - t0)
    return _cache[key]


def checks(rep, *names):
    by = {c["name"]: c for c in rep["checks"]}
    return [by[n] for n in names]


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} | {detail}")
        assert ok, detail
    return emit


def fmt(cs):
    return ", ".join(f"{c['name']}={c['max_rel_error']:.2e}" for c in cs)


def test_criterion_1_exact_algebra(report):
    t0 = time.perf_counter()
    groups = ("g4delta:δ=0", DELTA, "heis1", "n5_1", "n5_2")
    reps = [verify_suite(g, "algebra", Config()) for g in groups]
    # signed Pfaffian and density identities
    d = catalog.load(DELTA).spec
    rng = np.random.default_rng(0)
    pf_ok = all(pfaffian_at(d, Z) == Z[0] + Z[1] for Z in
                ([Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 9, 2),
                                                           rng.integers(1, 5, 2))]
                 for _ in range(20)))
    n52 = catalog.load("n5_2").spec
    pf2_ok = all(pfaffian_at(n52, [Fraction(k, 3)]) ** 2 == Fraction(k, 3) ** 4
                 for k in range(-5, 6))
    elapsed = time.perf_counter() - t0
    orders = sorted(c["detail"]["order"] for r in reps for c in r["checks"]
                    if c["name"] == "rockland_homogeneity")
    ok = all(r["all_pass"] for r in reps) and pf_ok and pf2_ok and elapsed < 5.0 \
        and {2, 12, 120} <= set(orders)
    n = sum(r["passed"] for r in reps)
    report(1, ok, f"{n} exact identities on 5 groups, Rockland orders {orders}, "
                  f"{elapsed:.2f}s (< 5s)")


def test_criterion_2_trace_formula(report):
    rep, _ = suite(DELTA, "pedersen")
    c1, c2 = checks(rep, "pedersen_trace", "pedersen_trace_refinement")
    ok = c1["pass"] and c2["pass"]
    report(2, ok, f"20 symbols, max rel err M=128 {c2['detail']['coarse']:.2e}, "
                  f"M=256 {c2['detail']['fine']:.2e}")


def test_criterion_3_dual_route(report):
    rep, dt = suite(DELTA, "fourier")
    (c,) = checks(rep, "group_fourier_dual_route")
    ok = c["pass"] and dt < 30
    report(3, ok, f"5 Gaussians, 128^2 kernel, {fmt([c])}, {dt:.1f}s (< 30s)")


def test_criterion_4_w_identity(report):
    rep, _ = suite(DELTA, "wtransform")
    c, r = checks(rep, "w_identity", "w_identity_refinement")
    ok = c["pass"] and r["pass"]
    report(4, ok, f"zgrid 64^2 err {c['max_rel_error']:.2e} (< 1e-3); refinement "
                  f"{r['detail']['coarse']:.2e} -> {r['detail']['fine']:.2e}")


def test_criterion_5_cor42(report):
    rep, dt = suite(DELTA, "cor42")
    c, conv = checks(rep, "cor42_kernel", "convolution_routes")
    ok = c["pass"] and conv["pass"] and dt < 120
    report(5, ok, f"50 pairs, {fmt([c, conv])}, {dt:.1f}s (< 120s)")


def test_criterion_6_plancherel(report):
    rep, _ = suite(DELTA, "plancherel")
    c, r = checks(rep, "plancherel_inversion", "plancherel_refinement")
    ok = c["pass"] and r["pass"]
    report(6, ok, f"rel L2 err {c['max_rel_error']:.2e} (< 1e-3); refinement "
                  f"{r['detail']['coarse']:.2e} -> {r['detail']['fine']:.2e}")


def test_criterion_7_kernel_of_xi(report):
    rep, _ = suite(DELTA, "cor42")
    k, neg = checks(rep, "cor36_kernel", "cor36_negative_control")
    ok = k["pass"] and neg["pass"]
    report(7, ok, f"HS/L1 {k['max_rel_error']:.2e} (< 1e-5), "
                  f"control {neg['max_rel_error']:.2e} (> 1e-5)")


def test_criterion_8_taylor_and_ladder(report):
    reps = [verify_suite(g, "algebra", Config()) for g in ("abelian:3", "heis1", DELTA)]
    duality = [c for r in reps for c in r["checks"] if c["name"] == "taylor_duality"]
    rep, _ = suite(DELTA, "rep")
    (lad,) = checks(rep, "harmonic_ladder")
    ok = len(duality) == 3 and all(c["pass"] for c in duality) and lad["pass"]
    report(8, ok, f"q_alpha duality exact on 3 groups up to degree 4; "
                  f"ladder (10 levels, M=256) err {lad['max_rel_error']:.2e}")


def test_criterion_9_intertwining(report):
    rep, _ = suite(DELTA, "rep")
    (c,) = checks(rep, "dilation_intertwining")
    report(9, c["pass"], f"r in {{1/2, 2, 4}}, defect {c['max_rel_error']:.2e} (< 1e-6)")
