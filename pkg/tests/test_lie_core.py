import itertools
from fractions import Fraction

import numpy as np
import pytest

from orbitquant import catalog
from orbitquant.lie_core import (Ad, LieAlgebraError, LieAlgebraSpec, ad_star, bch, bch_numeric,
                                 bracket, coordinate_ring, dilate, dump_group_file, inverse,
                                 left_invariant_field, load_group_file, pairing, validate)

GROUPS = ["g4delta:δ=1", "g4delta:δ=0", "heis1", "n5_1", "n5_2", "abelian:3"]


def rat(rng, n):
    return [Fraction(int(rng.integers(-6, 7)), int(rng.integers(1, 4))) for _ in range(n)]


def test_delta_bracket():
    spec = catalog.load("g4delta:δ=1").spec
    assert bracket(spec, [1, 0, 0, 0], [0, 1, 0, 0]) == [0, 0, 1, 1]
    X = [Fraction(1, 3), 2, -1, 5]
    assert not any(bracket(spec, X, X))


def test_n5_1_bracket():
    spec = catalog.load("n5_1").spec
    e = lambda j: [1 if i == j else 0 for i in range(5)]
    assert bracket(spec, e(4), e(3)) == e(1)


def test_bracket_dimension_mismatch():
    spec = catalog.load("heis1").spec
    with pytest.raises(LieAlgebraError):
        bracket(spec, [1, 0], [0, 1, 0])


def test_delta_group_law():
    d = Fraction(1)
    spec = catalog.load("g4delta:δ=1").spec
    x = [Fraction(1, 2), 3, -1, 2]
    y = [2, Fraction(-1, 3), 4, 0]
    w = x[0] * y[1] - y[0] * x[1]
    assert bch(spec, x, y) == [x[0] + y[0], x[1] + y[1], x[2] + y[2] + w / 2,
                               x[3] + y[3] + d * w / 2]


def test_abelian_group_law():
    spec = catalog.load("abelian:3").spec
    assert bch(spec, [1, 2, 3], [4, 5, 6]) == [5, 7, 9]


@pytest.mark.parametrize("gid", GROUPS)
def test_bch_associative(gid):
    spec = catalog.load(gid).spec
    rng = np.random.default_rng(1)
    for _ in range(100 if spec.step <= 2 else 25):
        x, y, z = (rat(rng, spec.dim) for _ in range(3))
        assert bch(spec, bch(spec, x, y), z) == bch(spec, x, bch(spec, y, z))


@pytest.mark.parametrize("gid", GROUPS)
def test_inverse_is_negation(gid):
    spec = catalog.load(gid).spec
    x = rat(np.random.default_rng(2), spec.dim)
    assert not any(bch(spec, x, inverse(x)))


@pytest.mark.parametrize("gid", GROUPS)
def test_bch_numeric_matches_exact(gid):
    spec = catalog.load(gid).spec
    rng = np.random.default_rng(3)
    X = rng.normal(size=(6, spec.dim))
    Y = rng.normal(size=(6, spec.dim))
    got = bch_numeric(spec, X, Y)
    for a, b, g in zip(X, Y, got):
        exact = [float(v) for v in bch(spec, [Fraction(v) for v in a], [Fraction(v) for v in b])]
        np.testing.assert_allclose(g, exact, atol=1e-12)


def test_delta_coadjoint():
    spec = catalog.load("g4delta:δ=1").spec
    x = [2, 3, 5, 7]
    U = [1, 1, Fraction(1, 2), 3]
    c = U[2] + U[3]
    assert ad_star(spec, x, U) == [U[0] + x[1] * c, U[1] - x[0] * c, U[2], U[3]]
    assert ad_star(spec, [0, 0, 0, 0], U) == U


@pytest.mark.parametrize("gid", GROUPS)
def test_coadjoint_is_dual_of_adjoint(gid):
    spec = catalog.load(gid).spec
    rng = np.random.default_rng(4)
    for _ in range(10):
        x, X, U = rat(rng, spec.dim), rat(rng, spec.dim), rat(rng, spec.dim)
        assert pairing(Ad(spec, inverse(x), X), U) == pairing(X, ad_star(spec, x, U))


def test_dilations():
    spec = catalog.load("g4delta:δ=1").spec
    assert dilate(spec, 3, [1, 1, 1, 1]) == [3, 3, 9, 9]
    assert dilate(spec, 1, [1, 2, 3, 4]) == [1, 2, 3, 4]
    n52 = catalog.load("n5_2").spec
    assert dilate(n52, 2, [1] * 5) == [2 ** (5 - j) for j in range(5)]


@pytest.mark.parametrize("gid", ["g4delta:δ=1", "heis1", "n5_1", "n5_2"])
def test_dilation_is_automorphism(gid):
    spec = catalog.load(gid).spec
    rng = np.random.default_rng(5)
    r = Fraction(3, 2)
    for _ in range(10):
        X, Y = rat(rng, spec.dim), rat(rng, spec.dim)
        assert dilate(spec, r, bracket(spec, X, Y)) == bracket(spec, dilate(spec, r, X),
                                                              dilate(spec, r, Y))


def test_dilate_ungraded():
    spec = LieAlgebraSpec.from_brackets(3, [(0, 1, 2, 1)], step=2)
    with pytest.raises(LieAlgebraError):
        dilate(spec, 2, [1, 0, 0])


def test_fields_simple():
    spec = catalog.load("abelian:3").spec
    R, (x0, x1, x2) = coordinate_ring(3)
    assert left_invariant_field(spec, 0, x0 ** 2) == 2 * x0
    h = catalog.load("heis1").spec
    R, (q, p, s) = coordinate_ring(3)
    assert left_invariant_field(h, 1, s) == q / 2


@pytest.mark.parametrize("gid", ["heis1", "g4delta:δ=1", "n5_1"])
def test_fields_commute_with_left_translation(gid):
    spec = catalog.load(gid).spec
    n = spec.dim
    R, xs = coordinate_ring(n)
    g = [Fraction(1, 2), -1] + [Fraction(1, 3)] * (n - 2)
    translated = bch(spec, g, list(xs))
    p = xs[0] * xs[-1] + xs[1] ** 2 + xs[-1]
    compose = lambda f: f.compose(list(zip(xs, translated)))
    for j in range(n):
        lhs = left_invariant_field(spec, j, compose(p))
        rhs = compose(left_invariant_field(spec, j, p))
        assert lhs == rhs


@pytest.mark.parametrize("gid", GROUPS)
def test_catalog_specs_valid(gid):
    rep = validate(catalog.load(gid).spec)
    assert rep.valid and rep.checks["jacobi"]


def test_validate_antisymmetry_witness():
    spec = LieAlgebraSpec.from_brackets(3, [(0, 1, 0, 1), (1, 0, 0, 1)], step=2)
    rep = validate(spec)
    assert not rep.valid and rep.violation == "antisymmetry"
    assert rep.witness == (0, 1, 0)


def test_validate_bad_jh_order():
    spec = LieAlgebraSpec.from_brackets(3, [(0, 1, 2, 1)], step=2, jh_order=(0, 1, 2))
    rep = validate(spec)
    assert rep.violation == "jh_order"


def test_validate_n5_1_chain():
    spec = catalog.load("n5_1").spec
    alt = LieAlgebraSpec.from_brackets(
        5, [(i, j, k, c) for (i, j), row in spec.brackets.items() for k, c in row.items() if i < j],
        step=spec.step, jh_order=tuple(range(5)))
    assert validate(alt).valid


def test_jacobi_brute_force():
    for gid in GROUPS:
        spec = catalog.load(gid).spec
        e = [[1 if a == b else 0 for a in range(spec.dim)] for b in range(spec.dim)]
        for i, j, k in itertools.product(range(spec.dim), repeat=3):
            s = [a + b + c for a, b, c in zip(bracket(spec, e[i], bracket(spec, e[j], e[k])),
                                              bracket(spec, e[j], bracket(spec, e[k], e[i])),
                                              bracket(spec, e[k], bracket(spec, e[i], e[j])))]
            assert not any(s)


def test_group_file_round_trip(tmp_path):
    spec = catalog.load("n5_1").spec
    path = tmp_path / "g.json"
    dump_group_file(spec, path)
    back = load_group_file(path)
    assert back.brackets == spec.brackets and back.jh_order == spec.jh_order
