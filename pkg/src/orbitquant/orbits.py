"""Coadjoint orbits: isotropy, jump indices, Pfaffian, flat-orbit measures.

Measure conventions (all exact, see README):

* dual space: ``dX_dual = Leb / (2 pi)^n``;
* centre dual: reference ``dZ = Leb / (2^d d! (2 pi)^(m+d))``; Plancherel
  density against it is ``2^d d! |Pf|``;
* orbit, in predual-dual coordinates: reference ``dl = Leb 2^d d! / (2 pi)^d``;
  the canonical orbit measure has density ``(2^d d! |Pf|)^-1`` against it.

The product of the two reference constants is ``(2 pi)^-n``, which is what
makes the disintegration of the dual measure over flat orbits exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .lie_core import (LieAlgebraSpec, as_rational, bracket, center_basis, center_indices,
                       coordinate_ring)


class OrbitError(ValueError):
    pass


def _is_exact(v) -> bool:
    return not isinstance(v, float) and not type(v).__module__.startswith("numpy")


def bil_matrix(spec: LieAlgebraSpec, U: Sequence) -> list:
    """``B[i][j] = <[E_i, E_j] | U>``."""
    n = spec.dim
    zero = U[0] * 0 if n else 0
    B = [[zero] * n for _ in range(n)]
    for (i, j), row in spec.brackets.items():
        acc = zero
        for k, c in row.items():
            acc = acc + c * U[k]
        B[i][j] = acc
    return B


def pfaffian(B):
    """Pfaffian by expansion along the first row (intended for size <= 8)."""
    n = len(B)
    if n % 2:
        raise OrbitError("Pfaffian of an odd-dimensional matrix")
    if n == 0:
        return 1
    if n == 2:
        return B[0][1]
    total = B[0][1] * 0
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        if not B[0][j]:
            continue
        keep = [k for k in rest if k != j]
        minor = [[B[a][b] for b in keep] for a in keep]
        term = B[0][j] * pfaffian(minor)
        total = total + term if pos % 2 == 0 else total - term
    return total


def _to_qq(M):
    rows = [[QQ.convert(as_rational(c)) for c in r] for r in M]
    n = len(rows)
    return DomainMatrix(rows, (n, len(rows[0]) if n else 0), QQ)


def _rank(vectors, n) -> int:
    return _to_qq(vectors).rank() if vectors else 0


def isotropy_basis(spec: LieAlgebraSpec, U: Sequence) -> list:
    """Exact basis of ``{X : U o ad_X = 0}``."""
    B = bil_matrix(spec, [as_rational(u) for u in U])
    ns = _to_qq(B).nullspace().to_Matrix()
    return [[Fraction(int(c.p), int(c.q)) for c in ns.row(r)] for r in range(ns.rows)]


@dataclass(frozen=True)
class OrbitReport:
    base_point: tuple
    isotropy_dim: int
    jump_indices: tuple
    predual_indices: tuple
    is_flat: bool
    orbit_dim: int
    pfaffian: Fraction | None

    def to_dict(self) -> dict:
        return {
            "base_point": [str(c) for c in self.base_point],
            "isotropy_dim": self.isotropy_dim,
            "jump_indices": list(self.jump_indices),
            "predual_indices": list(self.predual_indices),
            "is_flat": self.is_flat,
            "orbit_dim": self.orbit_dim,
            "pfaffian": None if self.pfaffian is None else str(self.pfaffian),
        }


def jump_indices(spec: LieAlgebraSpec, iso: list) -> tuple:
    """Storage indices j (in chain order) with ``E_j`` outside ``g_{j-1} + g_U``."""
    n = spec.dim
    basis = [[1 if a == b else 0 for a in range(n)] for b in range(n)]
    current = [list(v) for v in iso]
    rank = _rank(current, n)
    out = []
    for j in spec.jh_order:
        trial = current + [basis[j]]
        r2 = _rank(trial, n)
        if r2 > rank:
            out.append(j)
        current, rank = trial, r2
    return tuple(out)


def orbit_report(spec: LieAlgebraSpec, U: Sequence) -> OrbitReport:
    U = [as_rational(u) for u in U]
    if len(U) != spec.dim:
        raise OrbitError(f"expected {spec.dim} coordinates")
    iso = isotropy_basis(spec, U)
    jumps = jump_indices(spec, iso)
    cb = center_basis(spec)
    flat = len(iso) == len(cb) and _rank(iso + cb, spec.dim) == len(cb)
    pf = None
    if flat:
        B = bil_matrix(spec, U)
        pf = pfaffian([[B[a][b] for b in jumps] for a in jumps])
    return OrbitReport(tuple(U), len(iso), jumps, jumps, flat, len(jumps), pf)


def common_predual(spec: LieAlgebraSpec) -> tuple:
    """Non-central indices in chain order; the predual of every flat orbit."""
    cen = set(center_indices(spec))
    return tuple(j for j in spec.jh_order if j not in cen)


def half_dim(spec: LieAlgebraSpec) -> int:
    return len(common_predual(spec)) // 2


def embed_central(spec: LieAlgebraSpec, Z: Sequence) -> list:
    """Dual vector with central coordinates ``Z`` (storage order) and zeros elsewhere."""
    cen = center_indices(spec)
    if len(Z) != len(cen):
        raise OrbitError(f"expected {len(cen)} central coordinates")
    U = [0 * Z[0] if len(Z) else 0] * spec.dim
    for i, z in zip(cen, Z):
        U[i] = z
    return U


def pfaffian_at(spec: LieAlgebraSpec, Z: Sequence):
    """Pf over the common predual at the central point ``Z`` (works for floats too)."""
    om = common_predual(spec)
    if len(om) % 2:
        return 0 * Z[0] if len(Z) else 0
    if not om:
        return 1
    B = bil_matrix(spec, embed_central(spec, Z))
    return pfaffian([[B[a][b] for b in om] for a in om])


def pfaffian_polynomial(spec: LieAlgebraSpec):
    """Symbolic Pf on the centre dual, in variables z0.. (one per central index)."""
    cen = center_indices(spec)
    R, gens = coordinate_ring(len(cen), "z")
    om = common_predual(spec)
    if not om:
        return R(1), True
    if len(om) % 2:
        return R(0), False
    return R(pfaffian_at(spec, list(gens))), False


def pfaffian_values(spec: LieAlgebraSpec, Zs) -> np.ndarray:
    """Vectorized float Pf at the rows of ``Zs``."""
    Zs = np.atleast_2d(np.asarray(Zs, dtype=float))
    poly, _ = pfaffian_polynomial(spec)
    out = np.zeros(len(Zs))
    for mono, c in poly.to_dict().items():
        out += float(c) * np.prod(Zs ** np.asarray(mono), axis=1)
    return out


def is_admissible(spec: LieAlgebraSpec) -> bool:
    poly, _ = pfaffian_polynomial(spec)
    return bool(poly)


def plancherel_density(spec: LieAlgebraSpec, Z: Sequence):
    """``2^d d! |Pf(Z)|`` against the reference central measure."""
    if not is_admissible(spec):
        raise OrbitError("non-admissible algebra: Pfaffian vanishes identically")
    d = half_dim(spec)
    return 2 ** d * math.factorial(d) * abs(pfaffian_at(spec, Z))


def central_measure_const(spec: LieAlgebraSpec) -> float:
    """Reference central measure ``dZ = const * Leb``."""
    m = len(center_indices(spec))
    d = half_dim(spec)
    return 1.0 / (2 ** d * math.factorial(d) * (2 * math.pi) ** (m + d))


def orbit_reference_const(spec: LieAlgebraSpec) -> float:
    """Reference orbit measure ``dl = const * Leb`` in predual-dual coordinates."""
    d = half_dim(spec)
    return 2 ** d * math.factorial(d) / (2 * math.pi) ** d


def predual_measure_const(spec: LieAlgebraSpec, pf) -> float:
    """Measure on the predual paired with the orbit: ``|Pf| Leb / (2 pi)^d``."""
    return abs(float(pf)) / (2 * math.pi) ** half_dim(spec)


@dataclass(frozen=True)
class FlatOrbitChart:
    spec: LieAlgebraSpec
    central_param: tuple
    pfaffian: object
    d: int
    measure_const: object
    central_indices: tuple
    predual_indices: tuple

    @property
    def canonical_leb_density(self) -> float:
        """Density of the canonical orbit measure against Lebesgue coordinates."""
        return float(self.measure_const) * orbit_reference_const(self.spec)


def flat_chart(spec: LieAlgebraSpec, Z: Sequence) -> FlatOrbitChart:
    pf = pfaffian_at(spec, Z)
    if not pf:
        raise OrbitError("Pf(Z) = 0: orbit is not flat")
    d = half_dim(spec)
    if d == 0:
        raise OrbitError("degenerate algebra (d = 0): point orbits only")
    dens = 2 ** d * math.factorial(d) * abs(pf)
    const = Fraction(1) / dens if _is_exact(dens) else 1.0 / dens
    return FlatOrbitChart(spec, tuple(Z), pf, d, const, center_indices(spec),
                          common_predual(spec))


def orbit_measure_density(chart: FlatOrbitChart):
    """``(2^d d! |Pf|)^-1`` against the reference orbit measure."""
    if not chart.pfaffian:
        raise OrbitError("Pf = 0")
    return chart.measure_const
