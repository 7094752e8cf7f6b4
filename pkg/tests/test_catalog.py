from fractions import Fraction

import numpy as np
import pytest

from orbitquant import catalog
from orbitquant.lie_core import ad_star, bch
from orbitquant.orbits import pfaffian_at, plancherel_density


def rat(rng, n):
    return [Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 5))) for _ in range(n)]


def test_delta_entry():
    e = catalog.load("g4delta:δ=1")
    assert (e.spec.dim, e.spec.step, tuple(e.spec.grading_weights)) == (4, 2, (1, 1, 2, 2))
    assert catalog.load("g4delta:delta=1/2").spec.structure_constant(0, 1, 3) == Fraction(1, 2)
    assert catalog.load("g4delta").spec.structure_constant(0, 1, 3) == 1


def test_heis_and_n5():
    assert (catalog.load("heis1").spec.dim, catalog.load("heis1").spec.step) == (3, 2)
    assert tuple(catalog.load("n5_2").spec.grading_weights) == (5, 4, 3, 2, 1)


def test_unknown():
    with pytest.raises(catalog.UnknownGroupError):
        catalog.load("sl2")
    with pytest.raises(catalog.UnknownGroupError):
        catalog.load("abelian:0")


@pytest.mark.parametrize("gid", ["g4delta:δ=0", "g4delta:δ=1", "heis1", "n5_1", "n5_2"])
def test_golden_data(gid):
    e = catalog.load(gid)
    spec = e.spec
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = rat(rng, spec.dim), rat(rng, spec.dim)
        if e.bch is not None:
            assert list(bch(spec, x, y)) == list(e.bch(x, y))
        if e.coadjoint is not None:
            assert list(ad_star(spec, x, y)) == list(e.coadjoint(x, y))
    from orbitquant.lie_core import center_indices
    k = len(center_indices(spec))
    for _ in range(10):
        Z = rat(rng, k)
        assert pfaffian_at(spec, Z) ** 2 == Fraction(e.pfaffian(Z)) ** 2
        assert plancherel_density(spec, Z) == e.plancherel(Z)


def test_summary_and_ids():
    s = catalog.load("heis1").summary()
    assert s["id"] == "heis1" and s["has_rep"]
    assert "n5_2" in catalog.list_ids()
