import itertools

import numpy as np
import pytest
import sympy

from orbitquant import catalog
from orbitquant.lie_core import homogeneous_monomials, monomial_degree
from orbitquant.quantize.grids import GridND
from orbitquant.repcalc import Grid1D, rep_chart
from orbitquant.symbols import GaussSum
from orbitquant.symclasses import (MultiIndex, SymbolClassError, default_test_monomials,
                                   difference_operator, gamma_diff, gamma_diff_gauss,
                                   homogeneity_check, multi_indices, reflected, rockland_build,
                                   seminorm_estimate, taylor_determinants, taylor_polynomials)


def field_word_at_identity(entry, word, expr, xs):
    """``(X_{w1} .. X_{wk} f)(e)`` by differentiating along a product of one-parameter groups."""
    n = entry.spec.dim
    ts = sympy.symbols(f"t0:{len(word)}")
    point = [sympy.Integer(0)] * n
    for t, j in zip(ts, word):
        step = [sympy.Integer(0)] * n
        step[j] = t
        point = [sympy.expand(v) for v in entry.bch(point, step)]
    f = expr.subs(dict(zip(xs, point)), simultaneous=True)
    for t in ts:
        f = sympy.diff(f, t)
    return sympy.Rational(f.subs({t: 0 for t in ts}))


@pytest.mark.parametrize("gid", ["abelian:2", "heis1", "g4delta:δ=1"])
def test_taylor_duality_independent(gid):
    entry = catalog.load(gid)
    spec = entry.spec
    q = taylor_polynomials(spec, 4)
    xs = sympy.symbols(f"x0:{spec.dim}")
    by_degree = {}
    for a in q:
        by_degree.setdefault(monomial_degree(spec, a), []).append(a)
    for D, alphas in by_degree.items():
        for a in alphas:
            expr = sympy.sympify(str(q[a].as_expr())).subs(
                {sympy.Symbol(f"x{i}"): xs[i] for i in range(spec.dim)})
            for b in alphas:
                val = field_word_at_identity(entry, MultiIndex(b).word(), expr, xs)
                assert val == (1 if a == b else 0), (a, b, val)


def test_heis_central_taylor_polynomial():
    spec = catalog.load("heis1").spec
    q = taylor_polynomials(spec, 2)
    assert str(q[(0, 0, 1)].as_expr()) == "-x0*x1/2 + x2"


def test_taylor_determinants_nonzero():
    for gid in ("heis1", "g4delta:δ=1", "n5_1"):
        dets = taylor_determinants(catalog.load(gid).spec, 4)
        assert all(d != 0 for d in dets.values())


def test_multi_index_lengths():
    spec = catalog.load("n5_2").spec
    for mi in multi_indices(spec, 6):
        assert mi.hom_length(spec) >= mi.order


def test_gamma_identity_and_product():
    rng = np.random.default_rng(0)
    B = GaussSum.gaussian([0.2, -0.1], [1.0, 1.5], [0.3, 0.0], {(0, 0): 1.0, (1, 0): 0.2})
    X = rng.normal(size=(10, 2))
    np.testing.assert_allclose(gamma_diff_gauss({(0, 0): 1.0}, B)(X), B(X), atol=1e-14)
    q1 = {(1, 0): 1.0, (0, 0): 0.5}
    q2 = {(0, 1): -2.0, (1, 1): 1.0}
    prod = {}
    for (e1, c1), (e2, c2) in itertools.product(q1.items(), q2.items()):
        e = tuple(a + b for a, b in zip(e1, e2))
        prod[e] = prod.get(e, 0) + c1 * c2
    lhs = gamma_diff_gauss(q1, gamma_diff_gauss(q2, B))(X)
    rhs = gamma_diff_gauss(prod, B)(X)
    np.testing.assert_allclose(lhs, rhs, atol=1e-6 * np.abs(rhs).max())


def test_gamma_fft_matches_closed_form():
    B = GaussSum.gaussian([0.1, 0.0], [0.8, 1.2], [0.2, -0.1], {(0, 0): 1.0, (0, 1): 0.3})
    dual = GridND.uniform(2, 24.0, 128)
    q = {(1, 0): 1.0, (1, 1): -0.5, (0, 0): 2.0}
    fft = gamma_diff(q, B(dual.points()), dual)
    exact = gamma_diff_gauss(q, B)(dual.points())
    assert np.abs(fft - exact).max() < 1e-8 * np.abs(exact).max()


def test_difference_operator_degree_one():
    # abelian: q_e1 = x1, so Gamma^e1 B = F(-x1 F^-1 B) = -i dB/dxi1
    spec = catalog.load("abelian:2").spec
    B = GaussSum.gaussian([0.0, 0.0], [1.0, 1.0])
    X = np.random.default_rng(1).normal(size=(5, 2))
    got = difference_operator(spec, (1, 0), B)(X)
    np.testing.assert_allclose(got, -1j * B.deriv(0)(X), atol=1e-12)


def test_rockland_examples():
    h = rockland_build(catalog.load("heis1").spec, (0, 1))
    assert h.order == 2 and h.terms == ((0, 2, -1), (1, 2, -1))
    assert homogeneity_check(catalog.load("heis1").spec, h, 2).passed
    n51 = catalog.load("n5_1")
    R = rockland_build(n51.spec, n51.rockland_generators, n51.rockland_p)
    assert R.order == 12 and R.terms == n51.rockland
    assert homogeneity_check(n51.spec, R, 12, 3).passed
    n52 = catalog.load("n5_2")
    R = rockland_build(n52.spec, n52.rockland_generators, n52.rockland_p)
    assert R.order == 120 and homogeneity_check(n52.spec, R, 120, 2).passed


def test_rockland_wrong_order_has_witness():
    spec = catalog.load("heis1").spec
    R = rockland_build(spec, (0, 1))
    rep = homogeneity_check(spec, R, 3)
    assert not rep.passed and rep.witness is not None


def test_rockland_generation_guard():
    spec = catalog.load("g4delta:δ=1").spec
    with pytest.raises(SymbolClassError):
        rockland_build(spec, (0, 1))
    R = rockland_build(spec, (0, 1), strict=False)
    assert not R.generates


def test_rockland_p_multiple():
    spec = catalog.load("n5_1").spec
    with pytest.raises(SymbolClassError):
        rockland_build(spec, (2, 3, 4), p=3)


def test_monomial_fallback():
    spec = catalog.load("n5_2").spec
    monos = default_test_monomials(spec, 120, (3, 4))
    assert len(monos) < 5000
    heis = catalog.load("heis1").spec
    small = default_test_monomials(heis, 2)
    assert len(small) == sum(len(homogeneous_monomials(heis, D)) for D in range(7))


def _heis_symbol(const=1.0, x_dep=True):
    centre = [0.0, 0.0, 0.0, 0.2, -0.1, 1.0]
    prec = [0.5 if x_dep else 0.0] * 3 + [1.0, 1.0, 4.0]
    return GaussSum.gaussian(centre, prec, const=const)


def test_seminorm_scaling_and_sampling():
    spec = catalog.load("heis1").spec
    charts = [rep_chart(spec, [1.0], Grid1D(10.0, 64))]
    xs = np.random.default_rng(0).normal(size=(3, 3))
    f = _heis_symbol()
    a = seminorm_estimate(spec, f, 0, 1, 0, (1, 0, 0), (0, 0, 0), 0, xs, charts)
    b = seminorm_estimate(spec, f.scale(-3.0), 0, 1, 0, (1, 0, 0), (0, 0, 0), 0, xs, charts)
    assert a["value"] > 0 and abs(b["value"] - 3 * a["value"]) < 1e-10 * b["value"]
    more = seminorm_estimate(spec, f, 0, 1, 0, (1, 0, 0), (0, 0, 0), 0,
                             np.vstack([xs, np.zeros((1, 3))]), charts)
    assert more["value"] >= a["value"] and a["lower_bound"]


def test_seminorm_x_derivative_of_constant_vanishes():
    spec = catalog.load("heis1").spec
    charts = [rep_chart(spec, [1.0], Grid1D(10.0, 64))]
    xs = np.random.default_rng(1).normal(size=(2, 3))
    f = _heis_symbol(x_dep=False)
    res = seminorm_estimate(spec, f, 0, 1, 0, (0, 0, 0), (0, 1, 0), 0, xs, charts)
    assert res["value"] == 0.0


def test_seminorm_needs_2n_variables():
    spec = catalog.load("heis1").spec
    with pytest.raises(SymbolClassError):
        seminorm_estimate(spec, GaussSum.gaussian([0] * 3, [1] * 3), 0, 1, 0, (0,) * 3,
                          (0,) * 3, 0, [[0, 0, 0]], [])


def test_reflected():
    spec = catalog.load("heis1").spec
    q = taylor_polynomials(spec, 2)[(1, 1, 0)]
    assert reflected(q) == {(1, 1, 0): 1.0}
