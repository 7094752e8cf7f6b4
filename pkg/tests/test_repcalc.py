import numpy as np
import pytest

from orbitquant import catalog
from orbitquant.lie_core import bch
from orbitquant.repcalc import (Grid1D, GridResolutionError, RepresentationError,
                                apply_intertwiner, central_character, dilation_intertwiner,
                                generator, ladder, rep_apply, rep_chart, rep_matrix,
                                rep_sub_laplacian, represented_T)

DELTA = catalog.load("g4delta:δ=1").spec
HEIS = catalog.load("heis1").spec


@pytest.fixture
def chart():
    return rep_chart(DELTA, [0.7, 0.5], Grid1D(10.0, 128))


def gaussian(grid, c=0.0, k=0.3):
    return np.exp(-0.5 * (grid.nodes - c) ** 2 + 1j * k * grid.nodes)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(10.0, 4)
    g = Grid1D(10.0, 16)
    assert np.isclose(g.nodes[1] - g.nodes[0], g.h)


def test_identity_element(chart):
    phi = gaussian(chart.grid)
    np.testing.assert_allclose(rep_apply(chart, [0, 0, 0, 0], phi), phi, atol=1e-14)


def test_central_character(chart):
    assert np.isclose(central_character(chart, [0, 0, 2.0, -1.0]), np.exp(1j * (1.4 - 0.5)))
    assert central_character(chart, [0, 0, 0, 0]) == 1
    with pytest.raises(RepresentationError):
        central_character(chart, [1, 0, 0, 0])


def test_homomorphism_and_unitarity(chart):
    rng = np.random.default_rng(0)
    phi = gaussian(chart.grid)
    for _ in range(100):
        x, y = rng.uniform(-1, 1, 4), rng.uniform(-1, 1, 4)
        xy = [float(v) for v in bch(DELTA, list(x), list(y))]
        a = rep_apply(chart, xy, phi)
        b = rep_apply(chart, x, rep_apply(chart, y, phi))
        assert np.linalg.norm(a - b) <= 1e-8 * np.linalg.norm(phi)
        assert abs(np.linalg.norm(rep_apply(chart, x, phi)) - np.linalg.norm(phi)) < 1e-10


def test_matrix_matches_apply(chart):
    phi = gaussian(chart.grid)
    x = [0.3, -0.2, 0.1, 0.4]
    np.testing.assert_allclose(rep_matrix(chart, x).matrix @ phi, rep_apply(chart, x, phi),
                               atol=1e-12)


def test_shift_leaves_grid(chart):
    with pytest.raises(GridResolutionError):
        rep_apply(chart, [11.0, 0, 0, 0], gaussian(chart.grid))


def test_generators_finite_difference(chart):
    phi = gaussian(chart.grid)
    t = 1e-5
    for j in range(4):
        e = np.zeros(4)
        e[j] = t
        fd = (rep_apply(chart, e, phi) - rep_apply(chart, -e, phi)) / (2 * t)
        np.testing.assert_allclose(fd, generator(chart, j).apply(phi), atol=1e-6)
    lam = 0.7 + 0.5
    np.testing.assert_allclose(np.diag(generator(chart, 1).matrix), 1j * lam * chart.grid.nodes)


def test_ladder():
    c = rep_chart(HEIS, [1.0], Grid1D(10.0, 256))
    np.testing.assert_allclose(ladder(c, 5), [1, 3, 5, 7, 9], atol=1e-6)
    c2 = rep_chart(HEIS, [2.0], Grid1D(10.0, 256))
    assert abs(ladder(c2, 1)[0] - 2) < 1e-6


def test_T_powers(chart):
    c = rep_chart(HEIS, [1.0], Grid1D(10.0, 256))
    assert np.allclose(represented_T(c, 0).matrix, np.eye(256))
    ev = np.linalg.eigvalsh(represented_T(c, 2).matrix.real)
    assert abs(ev.min() - 2) < 1e-6
    T = represented_T(c, 1.0).matrix
    A = rep_sub_laplacian(c).matrix
    assert np.linalg.norm(T @ A - A @ T) < 1e-10 * np.linalg.norm(T) * np.linalg.norm(A)


def test_intertwiner_unit_and_isometry(chart):
    np.testing.assert_allclose(dilation_intertwiner(chart, 1.0).matrix, np.eye(128))
    phi = gaussian(chart.grid)
    for r in (0.5, 2.0, 4.0):
        out = apply_intertwiner(chart, r, phi)
        assert abs(np.linalg.norm(out) / np.linalg.norm(phi) - 1) < 1e-8


def test_intertwiner_support_guard(chart):
    wide = gaussian(chart.grid, c=8.0)
    with pytest.raises(GridResolutionError):
        apply_intertwiner(chart, 0.25, wide)


def test_intertwining_identity():
    grid = Grid1D(10.0, 128)
    Z = [0.7, 0.3]
    rng = np.random.default_rng(1)
    phi = gaussian(grid, 0.3, 0.4)
    for r in (0.5, 2.0, 4.0):
        c1 = rep_chart(DELTA, Z, grid)
        c2 = rep_chart(DELTA, [r * z for z in Z], grid)
        U = dilation_intertwiner(c1, r).matrix
        x = rng.uniform(-1, 1, 4)
        xd = [x[0] * r ** 0.5, x[1] * r ** 0.5, x[2] * r, x[3] * r]
        lhs = rep_matrix(c2, x).matrix @ (U @ phi)
        rhs = U @ (rep_matrix(c1, xd).matrix @ phi)
        assert np.linalg.norm(lhs - rhs) < 1e-6 * np.linalg.norm(rhs)


def test_no_rep_for_appendix_groups():
    with pytest.raises(RepresentationError):
        rep_chart(catalog.load("n5_1").spec, [1.0], Grid1D(10.0, 64))
