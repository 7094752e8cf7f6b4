"""Built-in groups with closed-form golden data.

Ids: ``g4delta:δ=<rational>`` (also ``g4delta:delta=...``), ``heis1``, ``n5_1``,
``n5_2``, ``abelian:<n>``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .lie_core import LieAlgebraSpec, as_rational, validate


class UnknownGroupError(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    spec: LieAlgebraSpec
    pfaffian: Callable          # Z (central coords, storage order) -> Pf
    plancherel: Callable        # Z -> density against the reference central measure
    coadjoint: Callable         # (x, U) -> Ad*_x U
    bch: Callable               # (x, y) -> x . y
    rockland: tuple | None      # ((index, power, sign), ...) or None
    rockland_generators: tuple = ()
    rockland_p: int | None = None
    has_rep: bool = False
    params: dict = field(default_factory=dict)
    description: str = ""

    def summary(self) -> dict:
        s = self.spec
        return {
            "id": self.id,
            "dim": s.dim,
            "step": s.step,
            "weights": list(s.grading_weights) if s.grading_weights else None,
            "labels": list(s.labels),
            "jh_order": list(s.jh_order),
            "has_rep": self.has_rep,
            "rockland": [list(t) for t in self.rockland] if self.rockland else None,
            "description": self.description,
        }


def _g4delta(delta: Fraction) -> CatalogEntry:
    half = Fraction(1, 2)
    spec = LieAlgebraSpec.from_brackets(
        4, [(0, 1, 2, 1), (0, 1, 3, delta)], step=2, weights=(1, 1, 2, 2),
        jh_order=(2, 3, 0, 1), labels=("Q", "P", "S", "T"), name=f"g4delta:δ={delta}")

    def bch_cf(x, y):
        q, p, s, t = x
        q2, p2, s2, t2 = y
        w = q * p2 - q2 * p
        return [q + q2, p + p2, s + s2 + half * w, t + t2 + delta * half * w]

    def coad(x, U):
        q0, p0 = x[0], x[1]
        rho, th, sig, tau = U
        lam = sig + delta * tau
        return [rho + p0 * lam, th - q0 * lam, sig, tau]

    return CatalogEntry(
        id=f"g4delta:δ={delta}", spec=spec,
        pfaffian=lambda Z: Z[0] + delta * Z[1],
        plancherel=lambda Z: 2 * abs(Z[0] + delta * Z[1]),
        coadjoint=coad, bch=bch_cf,
        rockland=((0, 2, -1), (1, 2, -1)), rockland_generators=(0, 1), rockland_p=1,
        has_rep=True, params={"delta": delta},
        description="4D step-two group with [Q,P] = S + δT")


def _heis1() -> CatalogEntry:
    half = Fraction(1, 2)
    spec = LieAlgebraSpec.from_brackets(
        3, [(0, 1, 2, 1)], step=2, weights=(1, 1, 2), jh_order=(2, 0, 1),
        labels=("Q", "P", "S"), name="heis1")

    def bch_cf(x, y):
        return [x[0] + y[0], x[1] + y[1], x[2] + y[2] + half * (x[0] * y[1] - y[0] * x[1])]

    def coad(x, U):
        return [U[0] + x[1] * U[2], U[1] - x[0] * U[2], U[2]]

    return CatalogEntry(
        id="heis1", spec=spec, pfaffian=lambda Z: Z[0], plancherel=lambda Z: 2 * abs(Z[0]),
        coadjoint=coad, bch=bch_cf, rockland=((0, 2, -1), (1, 2, -1)),
        rockland_generators=(0, 1), rockland_p=1, has_rep=True,
        description="3D Heisenberg group with [Q,P] = S")


def _n5_1() -> CatalogEntry:
    spec = LieAlgebraSpec.from_brackets(
        5, [(4, 1, 0, 1), (3, 2, 0, 1), (4, 3, 1, 1)], step=3, weights=(3, 2, 2, 1, 1),
        labels=("E0", "E1", "E2", "E3", "E4"), name="n5_1")
    half, twelfth = Fraction(1, 2), Fraction(1, 12)

    def bch_cf(x, y):
        q0, q1, q2, q3, q4 = x
        p0, p1, p2, p3, p4 = y
        return [
            q0 + p0 + half * (q4 * p1 - q1 * p4 + q3 * p2 - q2 * p3)
            + twelfth * (q4 - p4) * (q4 * p3 - q3 * p4),
            q1 + p1 + half * (q4 * p3 - q3 * p4),
            q2 + p2, q3 + p3, q4 + p4,
        ]

    def coad(x, U):
        q0, q1, q2, q3, q4 = x
        r0, r1, r2, r3, r4 = U
        return [r0, r1 - q4 * r0, r2 - q3 * r0,
                r3 + (q2 + half * q4 * q4) * r0 - q4 * r1,
                r4 + (q1 - half * q4 * q3) * r0 + q3 * r1]

    return CatalogEntry(
        id="n5_1", spec=spec, pfaffian=lambda Z: Z[0] * Z[0],
        plancherel=lambda Z: 8 * Z[0] * Z[0], coadjoint=coad, bch=bch_cf,
        rockland=((2, 6, -1), (3, 12, 1), (4, 12, 1)), rockland_generators=(2, 3, 4),
        rockland_p=6, description="5D step-three group, first appendix example")


def _n5_2() -> CatalogEntry:
    spec = LieAlgebraSpec.from_brackets(
        5, [(4, 3, 2, 1), (4, 2, 1, 1), (4, 1, 0, 1), (3, 2, 0, 1)], step=4,
        weights=(5, 4, 3, 2, 1), labels=("E0", "E1", "E2", "E3", "E4"), name="n5_2")
    return CatalogEntry(
        id="n5_2", spec=spec, pfaffian=lambda Z: Z[0] * Z[0],
        plancherel=lambda Z: 8 * Z[0] * Z[0], coadjoint=None, bch=None,
        rockland=((4, 120, 1), (3, 60, 1)), rockland_generators=(4, 3), rockland_p=60,
        description="5D step-four group, second appendix example")


def _abelian(n: int) -> CatalogEntry:
    spec = LieAlgebraSpec.from_brackets(n, [], step=1, weights=(1,) * n,
                                        labels=tuple(f"X{i}" for i in range(n)),
                                        name=f"abelian:{n}")
    return CatalogEntry(
        id=f"abelian:{n}", spec=spec, pfaffian=lambda Z: 1, plancherel=lambda Z: 1,
        coadjoint=lambda x, U: list(U),
        bch=lambda x, y: [a + b for a, b in zip(x, y)],
        rockland=tuple((j, 2, -1) for j in range(n)), rockland_generators=tuple(range(n)),
        rockland_p=1, description=f"abelian R^{n}")


_DELTA = re.compile(r"^g4delta(?::(?:δ|delta)=(?P<d>[-+0-9/]+))?$")


def load(group_id: str, check: bool = True) -> CatalogEntry:
    gid = group_id.strip()
    m = _DELTA.match(gid)
    if m:
        entry = _g4delta(as_rational(m.group("d") or "1"))
    elif gid == "heis1":
        entry = _heis1()
    elif gid == "n5_1":
        entry = _n5_1()
    elif gid == "n5_2":
        entry = _n5_2()
    elif gid.startswith("abelian:") and gid[8:].isdigit() and int(gid[8:]) > 0:
        entry = _abelian(int(gid[8:]))
    else:
        raise UnknownGroupError(f"unknown catalog id {group_id!r}")
    if check:
        report = validate(entry.spec)
        if not report.valid:
            raise ValueError(f"catalog entry {gid} failed validation: {report.violation}")
    return entry


def list_ids() -> list:
    return ["g4delta:δ=0", "g4delta:δ=1", "heis1", "n5_1", "n5_2", "abelian:<n>"]
