"""Exact arithmetic for nilpotent Lie algebras in exponential coordinates.

Vectors are plain sequences; rational inputs stay rational (``Fraction`` or
gmpy ``mpq``), symbolic inputs may be elements of a sympy polynomial ring.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import ring

MAX_BCH_DEPTH = 6


class LieAlgebraError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Parse ints, Fractions, mpq and ``"p/q"`` strings as Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    try:
        return Fraction(int(value.numerator), int(value.denominator))
    except AttributeError as exc:
        raise TypeError(f"not a rational literal: {value!r}") from exc


@dataclass(frozen=True)
class LieAlgebraSpec:
    """Structure constants plus grading and Jordan-Hölder data.

    ``brackets`` maps ``(i, j)`` to ``{k: c}`` meaning ``[E_i, E_j] = sum c E_k``
    and stores both orders.  ``jh_order[r]`` is the basis index at position r
    of the chain, so ``g_j = span(E_{jh_order[0]}, ..., E_{jh_order[j-1]})``.
    """

    dim: int
    brackets: dict
    step: int
    grading_weights: tuple | None = None
    jh_order: tuple = ()
    labels: tuple = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def from_brackets(cls, dim, entries, step, weights=None, jh_order=None, labels=None,
                      name=""):
        """Build from ``(i, j, k, c)`` entries; missing ``(j, i)`` entries are implied."""
        table: dict = {}
        explicit = set()
        for i, j, k, c in entries:
            c = as_rational(c)
            table.setdefault((i, j), {})
            table[(i, j)][k] = table[(i, j)].get(k, 0) + c
            explicit.add((i, j))
        for (i, j) in list(explicit):
            if (j, i) not in explicit:
                table[(j, i)] = {k: -c for k, c in table[(i, j)].items()}
        table = {key: {k: c for k, c in val.items() if c != 0} for key, val in table.items()}
        table = {key: val for key, val in table.items() if val}
        return cls(
            dim=dim,
            brackets=table,
            step=step,
            grading_weights=tuple(weights) if weights is not None else None,
            jh_order=tuple(jh_order) if jh_order is not None else tuple(range(dim)),
            labels=tuple(labels) if labels is not None else tuple(f"E{i}" for i in range(dim)),
            name=name,
        )

    def structure_constant(self, i, j, k):
        return self.brackets.get((i, j), {}).get(k, Fraction(0))

    @property
    def structure_constants(self):
        n = self.dim
        return tuple(tuple(tuple(self.structure_constant(i, j, k) for k in range(n))
                           for j in range(n)) for i in range(n))

    def __hash__(self):
        return hash((self.dim, self.name, tuple(sorted(
            (key, tuple(sorted(v.items()))) for key, v in self.brackets.items())),
            self.step, self.grading_weights, self.jh_order))

    @property
    def is_abelian(self) -> bool:
        return not self.brackets


def _check_dim(spec, *vectors):
    for v in vectors:
        if len(v) != spec.dim:
            raise LieAlgebraError(f"expected a vector of length {spec.dim}, got {len(v)}")


def _zero_like(v):
    for c in v:
        return c * 0
    return 0


def bracket(spec: LieAlgebraSpec, X: Sequence, Y: Sequence) -> list:
    _check_dim(spec, X, Y)
    zero = _zero_like(X) + _zero_like(Y)
    out = [zero] * spec.dim
    for (i, j), row in spec.brackets.items():
        xi = X[i]
        yj = Y[j]
        if not xi or not yj:
            continue
        prod = xi * yj
        for k, c in row.items():
            out[k] = out[k] + c * prod
    return out


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _scale(c, v):
    return [c * a for a in v]


@lru_cache(maxsize=None)
def dynkin_words(depth: int) -> tuple:
    """Dynkin series as ``(word, coefficient)`` with words over {0: X, 1: Y}.

    A word ``(a1, ..., aN)`` stands for the right-nested bracket
    ``[a1, [a2, ..., [a_{N-1}, aN]]]``.
    """
    acc: dict = {}

    def blocks(remaining):
        # (r, s) pairs with r + s >= 1 and r + s <= remaining
        for r in range(remaining + 1):
            for s in range(remaining + 1 - r):
                if r + s:
                    yield r, s

    def rec(seq, used):
        if seq:
            n = len(seq)
            coeff = Fraction((-1) ** (n - 1), n * used)
            for r, s in seq:
                coeff /= math.factorial(r) * math.factorial(s)
            word = tuple(itertools.chain.from_iterable([0] * r + [1] * s for r, s in seq))
            if len(word) == 1 or word[-1] != word[-2]:
                acc[word] = acc.get(word, Fraction(0)) + coeff
        for r, s in blocks(depth - used):
            rec(seq + [(r, s)], used + r + s)

    rec([], 0)
    return tuple((w, c) for w, c in sorted(acc.items()) if c != 0)


def bch(spec: LieAlgebraSpec, X: Sequence, Y: Sequence, depth: int | None = None) -> list:
    """``log(exp X exp Y)`` truncated at the nilpotency step."""
    _check_dim(spec, X, Y)
    depth = spec.step if depth is None else depth
    if spec.step > MAX_BCH_DEPTH or depth > MAX_BCH_DEPTH:
        raise LieAlgebraError(f"step {spec.step} exceeds supported BCH depth {MAX_BCH_DEPTH}")
    if spec.is_abelian:
        return _add(X, Y)
    letters = (list(X), list(Y))
    memo: dict = {}

    def value(word):
        if len(word) == 1:
            return letters[word[0]]
        if word not in memo:
            memo[word] = bracket(spec, letters[word[0]], value(word[1:]))
        return memo[word]

    zero = _zero_like(X) + _zero_like(Y)
    out = [zero] * spec.dim
    for word, coeff in dynkin_words(depth):
        v = value(word)
        if any(v):
            out = [o + coeff * a for o, a in zip(out, v)]
    return out


def _bch_terms(spec: LieAlgebraSpec) -> tuple:
    key = "bch_terms"
    if key not in spec._cache:
        R, gens = coordinate_ring(2 * spec.dim, "w")
        comps = bch(spec, list(gens[:spec.dim]), list(gens[spec.dim:]))
        spec._cache[key] = tuple(
            tuple((np.array(m), float(c)) for m, c in R(c_).to_dict().items()) for c_ in comps)
    return spec._cache[key]


def bch_numeric(spec: LieAlgebraSpec, X, Y) -> np.ndarray:
    """Float BCH on arrays with coordinates on the last axis (broadcasting)."""
    X, Y = np.broadcast_arrays(np.asarray(X, float), np.asarray(Y, float))
    W = np.concatenate([X, Y], axis=-1)
    out = np.zeros(X.shape)
    powers: dict = {}
    for k, terms in enumerate(_bch_terms(spec)):
        for mono, c in terms:
            val = c
            for a in np.nonzero(mono)[0]:
                e = int(mono[a])
                if (a, e) not in powers:
                    powers[(a, e)] = W[..., a] ** e
                val = val * powers[(a, e)]
            out[..., k] += val
    return out


def inverse(X: Sequence) -> list:
    return [-a for a in X]


def ad_matrix(spec: LieAlgebraSpec, X: Sequence) -> list:
    """Matrix of ``ad_X`` acting on column vectors: ``(ad_X)[k][j] = [X, E_j]_k``."""
    n = spec.dim
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(bracket(spec, X, e))
    return [[cols[j][k] for j in range(n)] for k in range(n)]


def Ad(spec: LieAlgebraSpec, x: Sequence, Y: Sequence) -> list:
    """``Ad_x Y = exp(ad_X) Y`` truncated at the step."""
    _check_dim(spec, x, Y)
    out = list(Y)
    term = list(Y)
    for k in range(1, spec.step + 1):
        term = _scale(Fraction(1, k), bracket(spec, x, term))
        out = _add(out, term)
    return out


def ad_star(spec: LieAlgebraSpec, x: Sequence, U: Sequence) -> list:
    """Coadjoint action ``U o Ad_{x^{-1}}`` in dual coordinates."""
    _check_dim(spec, x, U)
    minus = inverse(x)
    n = spec.dim
    out = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        col = Ad(spec, minus, e)
        acc = _zero_like(U) + _zero_like(x)
        for k in range(n):
            if col[k]:
                acc = acc + col[k] * U[k]
        out.append(acc)
    return out


def pairing(X: Sequence, U: Sequence):
    return sum((a * b for a, b in zip(X, U)), _zero_like(X) * 0)


def dilate(spec: LieAlgebraSpec, r, v: Sequence, side: str = "algebra") -> list:
    """Graded dilation; ``side='dual'`` applies the transposed inverse rule."""
    if spec.grading_weights is None:
        raise LieAlgebraError("algebra has no grading weights")
    _check_dim(spec, v)
    if side in ("algebra", "group"):
        return [r ** w * a for w, a in zip(spec.grading_weights, v)]
    if side == "dual":
        return [a / r ** w for w, a in zip(spec.grading_weights, v)]
    raise LieAlgebraError(f"unknown side {side!r}")


# ---------------------------------------------------------------- polynomials

@lru_cache(maxsize=None)
def coordinate_ring(n: int, prefix: str = "x"):
    """Sparse polynomial ring QQ[x0..x_{n-1}] and its generators."""
    R, *gens = ring(",".join(f"{prefix}{i}" for i in range(n)), QQ)
    return R, tuple(gens)


def field_coefficients(spec: LieAlgebraSpec, j: int) -> tuple:
    """Coefficients ``a_j^k(x)`` with ``X_j = sum_k a_j^k(x) d/dx_k``."""
    key = ("field", j)
    if key not in spec._cache:
        n = spec.dim
        R, *gens = ring(",".join([f"x{i}" for i in range(n)] + ["t"]), QQ)
        xs, t = gens[:n], gens[n]
        e = [R(0)] * n
        e[j] = t
        prod = bch(spec, list(xs), e)
        base, _ = coordinate_ring(n)
        coeffs = []
        for comp in prod:
            lin = comp.diff(t).subs([(t, 0)]) if comp else R(0)
            coeffs.append(base.from_dict({m[:n]: c for m, c in lin.to_dict().items()})
                          if lin else base(0))
        spec._cache[key] = tuple(coeffs)
    return spec._cache[key]


def left_invariant_field(spec: LieAlgebraSpec, j: int, p):
    """Apply ``X_j f(x) = d/dt f(x . tE_j)|_{t=0}`` to a polynomial in ``coordinate_ring``."""
    R, gens = coordinate_ring(spec.dim)
    if not p:
        return R(0)
    out = R(0)
    for k, a in enumerate(field_coefficients(spec, j)):
        if a:
            out += a * p.diff(gens[k])
    return out


class FieldAlgebra:
    """Left-invariant fields with a per-monomial cache, for long words of fields."""

    def __init__(self, spec: LieAlgebraSpec):
        self.spec = spec
        self.ring, self.gens = coordinate_ring(spec.dim)
        self._mono: dict = {}

    def _apply_dict(self, j: int, terms: dict) -> dict:
        out = {}
        for mono, c in terms.items():
            key = (j, mono)
            img = self._mono.get(key)
            if img is None:
                img = left_invariant_field(self.spec, j, self.ring({mono: 1})).to_dict()
                self._mono[key] = img
            for m2, c2 in img.items():
                out[m2] = out.get(m2, 0) + c * c2
        return {m: c for m, c in out.items() if c}

    def apply(self, j: int, p):
        return self.ring.from_dict(self._apply_dict(j, dict(p.items())))

    def apply_word(self, word: Sequence[int], p):
        """Apply ``X_{w0} X_{w1} ... X_{wk}``; the last letter acts first."""
        terms = dict(p.items())
        for j in reversed(word):
            if not terms:
                break
            terms = self._apply_dict(j, terms)
        return self.ring.from_dict(terms) if terms else self.ring(0)


def monomial_degree(spec: LieAlgebraSpec, exponents) -> int:
    w = spec.grading_weights or (1,) * spec.dim
    return sum(a * b for a, b in zip(exponents, w))


def homogeneous_monomials(spec: LieAlgebraSpec, degree: int) -> list:
    """All exponent tuples of homogeneous degree ``degree``, lexicographic."""
    w = spec.grading_weights or (1,) * spec.dim
    out = []

    def rec(i, remaining, acc):
        if i == spec.dim:
            if remaining == 0:
                out.append(tuple(acc))
            return
        for a in range(remaining // w[i] + 1):
            rec(i + 1, remaining - a * w[i], acc + [a])

    rec(0, degree, [])
    return sorted(out)


# ----------------------------------------------------------------- validation

def _span_rank(vectors, n) -> int:
    rows = [[QQ.convert(as_rational(c)) for c in v] for v in vectors]
    if not rows:
        return 0
    return DomainMatrix(rows, (len(rows), n), QQ).rank()


def lower_central_series(spec: LieAlgebraSpec) -> list:
    """Bases of g^(1) = g, g^(2) = [g, g], ... until zero (zero space included)."""
    n = spec.dim
    basis = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    series = [basis]
    for _ in range(MAX_BCH_DEPTH + 2):
        cur = series[-1]
        gens = []
        for e in range(n):
            ev = [1 if i == e else 0 for i in range(n)]
            for v in cur:
                b = bracket(spec, ev, v)
                if any(b):
                    gens.append(b)
        series.append(_row_basis(gens, n))
        if not series[-1]:
            break
    return series


def _row_basis(vectors, n) -> list:
    if not vectors:
        return []
    rows = [[QQ.convert(as_rational(c)) for c in v] for v in vectors]
    M = DomainMatrix(rows, (len(rows), n), QQ).rref()[0].to_Matrix()
    out = []
    for r in range(M.rows):
        row = [Fraction(int(c.p), int(c.q)) for c in M.row(r)]
        if any(row):
            out.append(row)
    return out


def center_indices(spec: LieAlgebraSpec) -> tuple:
    """Basis indices whose vectors are central."""
    return tuple(i for i in range(spec.dim)
                 if all((i, j) not in spec.brackets for j in range(spec.dim)))


def center_basis(spec: LieAlgebraSpec) -> list:
    """Exact basis of the center (kernel of all ad maps)."""
    n = spec.dim
    rows = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        rows.extend(ad_matrix(spec, e))
    M = DomainMatrix([[QQ.convert(as_rational(c)) for c in r] for r in rows], (len(rows), n), QQ)
    ns = M.nullspace().to_Matrix()
    return [[Fraction(int(c.p), int(c.q)) for c in ns.row(r)] for r in range(ns.rows)]


@dataclass
class ValidationReport:
    valid: bool
    checks: dict
    violation: str | None = None
    witness: tuple | None = None
    step: int | None = None

    def to_dict(self):
        return {"valid": self.valid, "checks": self.checks, "violation": self.violation,
                "witness": list(self.witness) if self.witness else None, "step": self.step}


def validate(spec: LieAlgebraSpec) -> ValidationReport:
    """Check every structural invariant; report the first failure with witness indices."""
    n = spec.dim
    checks = {}
    idx = range(n)

    def fail(name, witness):
        checks[name] = False
        return ValidationReport(False, checks, name, witness)

    for i in idx:
        for j in idx:
            for k in idx:
                if spec.structure_constant(i, j, k) != -spec.structure_constant(j, i, k):
                    return fail("antisymmetry", (i, j, k))
    checks["antisymmetry"] = True

    basis = [[1 if a == b else 0 for a in idx] for b in idx]
    for i, j, k in itertools.combinations(idx, 3):
        X, Y, Z = basis[i], basis[j], basis[k]
        s = _add(_add(bracket(spec, X, bracket(spec, Y, Z)),
                      bracket(spec, Y, bracket(spec, Z, X))),
                 bracket(spec, Z, bracket(spec, X, Y)))
        if any(s):
            return fail("jacobi", (i, j, k))
    checks["jacobi"] = True

    series = lower_central_series(spec)
    actual_step = len(series) - 1 if not series[-1] else None
    if actual_step is None or actual_step != spec.step:
        checks["step"] = False
        rep = ValidationReport(False, checks, "step", (spec.step, actual_step))
        return rep
    checks["step"] = True

    if spec.grading_weights is not None:
        w = spec.grading_weights
        if len(w) != n or any(int(v) < 1 for v in w):
            return fail("grading", ())
        for (i, j), row in spec.brackets.items():
            for k in row:
                if w[k] != w[i] + w[j]:
                    return fail("grading", (i, j, k))
        checks["grading"] = True

    order = list(spec.jh_order)
    if sorted(order) != list(idx):
        return fail("jh_order", tuple(order))
    for r in range(1, n + 1):
        inner = [basis[order[a]] for a in range(r - 1)]
        base_rank = _span_rank(inner, n)
        for e in idx:
            b = bracket(spec, basis[e], basis[order[r - 1]])
            if any(b) and _span_rank(inner + [b], n) != base_rank:
                return fail("jh_order", (e, order[r - 1]))
    checks["jh_order"] = True
    return ValidationReport(True, checks, None, None, actual_step)


# ----------------------------------------------------------------- file format

def load_group_file(path) -> LieAlgebraSpec:
    """Read a JSON group-definition file (rationals as ``"p/q"`` strings)."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return spec_from_dict(data)


def spec_from_dict(data: dict) -> LieAlgebraSpec:
    try:
        dim = int(data["dim"])
        step = int(data["step"])
        entries = [(int(i), int(j), int(k), as_rational(c)) for i, j, k, c in data["brackets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise LieAlgebraError(f"malformed group definition: {exc}") from exc
    return LieAlgebraSpec.from_brackets(
        dim, entries, step, weights=data.get("weights"), jh_order=data.get("jh_order"),
        labels=data.get("labels"), name=data.get("name", ""))


def spec_to_dict(spec: LieAlgebraSpec) -> dict:
    entries = []
    for (i, j), row in sorted(spec.brackets.items()):
        if i < j:
            for k, c in sorted(row.items()):
                entries.append([i, j, k, str(c)])
    return {
        "name": spec.name,
        "dim": spec.dim,
        "step": spec.step,
        "brackets": entries,
        "weights": list(spec.grading_weights) if spec.grading_weights else None,
        "jh_order": list(spec.jh_order),
        "labels": list(spec.labels),
    }


def dump_group_file(spec: LieAlgebraSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_dict(spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
