"""Gaussian-times-polynomial functions with closed-form calculus.

A ``GaussPoly`` block on R^n is

    const * sum_e coef_e prod_a (x_a - c_a)^e_a * exp(i k.x - sum_a w_a (x_a - c_a)^2 / 2)

and a ``GaussSum`` is a finite sum of blocks.  The family is closed under
multiplication by polynomials, partial derivatives and (partial) Fourier
transforms, which makes it a convenient source of exact reference values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


@lru_cache(maxsize=None)
def _hermite_like(m: int, w: float) -> tuple:
    """Coefficients of P_m with int e^{iWy} y^m e^{-w y^2/2} dy = P_m(W) sqrt(2pi/w) e^{-W^2/2w}."""
    P = np.zeros(1, dtype=complex)
    P[0] = 1.0
    for _ in range(m):
        dP = np.polynomial.polynomial.polyder(P) if len(P) > 1 else np.zeros(1, complex)
        WP = np.concatenate([[0.0], P]) / w
        dP = np.concatenate([dP, np.zeros(len(WP) - len(dP))])
        P = -1j * (dP - WP)
    return tuple(P)


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c != 0}


@dataclass(frozen=True)
class GaussPoly:
    poly: tuple          # ((exponents, coef), ...) in shifted variables y = x - c
    center: tuple
    prec: tuple
    mod: tuple
    const: complex = 1.0

    @property
    def n(self) -> int:
        return len(self.center)

    @classmethod
    def gaussian(cls, center, prec, mod=None, poly=None, const=1.0):
        n = len(center)
        poly = poly if poly is not None else {(0,) * n: 1.0}
        return cls(tuple(sorted((tuple(e), complex(c)) for e, c in dict(poly).items())),
                   tuple(float(c) for c in center), tuple(float(p) for p in prec),
                   tuple(float(k) for k in (mod if mod is not None else (0.0,) * n)),
                   complex(const))

    def _with(self, poly=None, const=None):
        poly = self.poly if poly is None else tuple(sorted(poly.items()))
        return GaussPoly(poly, self.center, self.prec, self.mod,
                         self.const if const is None else const)

    def __call__(self, X):
        X = np.asarray(X, dtype=float)
        return self.eval_coords([X[..., a] for a in range(self.n)])

    def eval_coords(self, coords):
        """Evaluate on per-axis arrays that broadcast together; cheap on tensor grids."""
        coords = [np.asarray(c, dtype=float) for c in coords]
        ys = [c - c0 for c, c0 in zip(coords, self.center)]
        gauss = None
        for c, y, k, w in zip(coords, ys, self.mod, self.prec):
            f = np.exp(1j * k * c - 0.5 * w * y * y)
            gauss = f if gauss is None else gauss * f
        acc = 0
        cache: dict = {}
        for e, c in self.poly:
            term = c
            for a, ea in enumerate(e):
                if ea:
                    if (a, ea) not in cache:
                        cache[(a, ea)] = ys[a] ** ea
                    term = term * cache[(a, ea)]
            acc = acc + term
        return self.const * acc * gauss

    def scale(self, c):
        return self._with(const=self.const * c)

    def mul_poly(self, q: dict):
        """Multiply by a polynomial given on plain coordinates ``{exponents: coef}``."""
        n = self.n
        expanded: dict = {}
        for f, cf in q.items():
            part = {(0,) * n: complex(cf)}
            for a, fa in enumerate(f):
                if not fa:
                    continue
                # (y_a + c_a)^fa
                binom = {}
                for j in range(fa + 1):
                    e = [0] * n
                    e[a] = j
                    binom[tuple(e)] = math.comb(fa, j) * self.center[a] ** (fa - j)
                part = _poly_mul(part, binom)
            for e, c in part.items():
                expanded[e] = expanded.get(e, 0) + c
        return self._with(poly=_poly_mul(dict(self.poly), expanded))

    def deriv(self, a: int):
        out: dict = {}
        for e, c in self.poly:
            if e[a]:
                e1 = list(e)
                e1[a] -= 1
                out[tuple(e1)] = out.get(tuple(e1), 0) + c * e[a]
            out[e] = out.get(e, 0) + c * 1j * self.mod[a]
            e2 = list(e)
            e2[a] += 1
            out[tuple(e2)] = out.get(tuple(e2), 0) - c * self.prec[a]
        return self._with(poly={e: c for e, c in out.items() if c != 0})

    def fourier(self, axes: Iterable[int] | None = None, sign: int = -1):
        """Unnormalized ``int exp(sign i w.x) f dx`` over ``axes`` (all by default)."""
        axes = tuple(range(self.n)) if axes is None else tuple(axes)
        center, prec, mod = list(self.center), list(self.prec), list(self.mod)
        const = self.const
        factors = {}
        for a in axes:
            c, w, k = self.center[a], self.prec[a], self.mod[a]
            const = const * np.sqrt(2 * np.pi / w) * np.exp(1j * k * c)
            center[a] = -sign * k
            prec[a] = 1.0 / w
            mod[a] = sign * c
            factors[a] = w
        poly: dict = {}
        for e, coef in self.poly:
            part = {tuple(e[b] if b not in factors else 0 for b in range(self.n)): coef}
            for a, w in factors.items():
                P = _hermite_like(e[a], w)
                uni = {}
                for j, pj in enumerate(P):
                    if pj != 0:
                        ex = [0] * self.n
                        ex[a] = j
                        uni[tuple(ex)] = pj * sign ** j
                part = _poly_mul(part, uni)
            for ex, c in part.items():
                poly[ex] = poly.get(ex, 0) + c
        return GaussPoly(tuple(sorted((e, c) for e, c in poly.items() if c != 0)),
                         tuple(center), tuple(prec), tuple(mod), const)

    def integral(self) -> complex:
        return complex(self.fourier()(np.zeros(self.n)))

    def permuted(self, perm: Sequence[int]):
        """Reorder variables: new variable i is old variable perm[i]."""
        return GaussPoly(tuple(sorted((tuple(e[p] for p in perm), c) for e, c in self.poly)),
                         tuple(self.center[p] for p in perm), tuple(self.prec[p] for p in perm),
                         tuple(self.mod[p] for p in perm), self.const)


class GaussSum:
    """Finite sum of ``GaussPoly`` blocks, vectorized over the last axis of inputs."""

    def __init__(self, terms: Iterable[GaussPoly]):
        self.terms = tuple(terms)
        if not self.terms:
            raise ValueError("empty GaussSum")
        n = {t.n for t in self.terms}
        if len(n) != 1:
            raise ValueError("blocks of different dimension")

    @property
    def n(self) -> int:
        return self.terms[0].n

    @classmethod
    def gaussian(cls, center, prec, mod=None, poly=None, const=1.0):
        return cls([GaussPoly.gaussian(center, prec, mod, poly, const)])

    def __call__(self, X):
        X = np.asarray(X, dtype=float)
        return self.eval_coords([X[..., a] for a in range(self.n)])

    def eval_coords(self, coords):
        out = self.terms[0].eval_coords(coords)
        for t in self.terms[1:]:
            out = out + t.eval_coords(coords)
        return out

    def __add__(self, other):
        return GaussSum(self.terms + other.terms)

    def scale(self, c):
        return GaussSum(t.scale(c) for t in self.terms)

    def mul_poly(self, q: dict):
        return GaussSum(t.mul_poly(q) for t in self.terms)

    def deriv(self, a: int):
        return GaussSum(t.deriv(a) for t in self.terms)

    def fourier(self, axes=None, sign: int = -1):
        return GaussSum(t.fourier(axes, sign) for t in self.terms)

    def integral(self) -> complex:
        return sum(t.integral() for t in self.terms)

    def permuted(self, perm):
        return GaussSum(t.permuted(perm) for t in self.terms)

    def conj(self):
        out = []
        for t in self.terms:
            out.append(GaussPoly(tuple((e, np.conj(c)) for e, c in t.poly), t.center, t.prec,
                                 tuple(-k for k in t.mod), np.conj(t.const)))
        return GaussSum(out)


def apply_field(spec, j: int, f: GaussSum, offset: int = 0) -> GaussSum:
    """Left-invariant field ``X_j`` acting on the variables ``offset..offset+dim-1`` of ``f``."""
    from .lie_core import field_coefficients

    out = None
    n = f.n
    for k, a in enumerate(field_coefficients(spec, j)):
        if not a:
            continue
        q = {}
        for mono, c in a.to_dict().items():
            e = [0] * n
            e[offset:offset + spec.dim] = mono
            q[tuple(e)] = complex(float(c))
        term = f.deriv(offset + k).mul_poly(q)
        out = term if out is None else out + term
    if out is None:
        return f.scale(0.0)
    return out


def smooth_bump(t):
    """``exp(1 - 1 / (1 - t^2))`` on ``|t| < 1``, zero outside (C-infinity, peak 1)."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    inside = np.abs(t) < 1
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


class CentralBumpSymbol:
    """Dual-side symbol ``B(X) = G(X) * beta(lam) * g(tau)`` on a centre of dimension 1 or 2.

    ``lam = <a|Z>`` is a linear Pfaffian, ``beta`` a smooth bump supported in
    ``lo < |lam| < hi`` and ``g`` a Gaussian in the second central coordinate
    ``tau``.  ``G`` is a ``GaussSum`` whose central slots are ignored.  The
    inverse transform is closed form up to a 1D bump quadrature.
    """

    def __init__(self, G, central_indices, pf_coeffs, lo: float = 0.5, hi: float = 3.0,
                 tau_prec: float = 4.0, nquad: int = 4096):
        self.G = G
        self.central = tuple(central_indices)
        self.a = tuple(float(c) for c in pf_coeffs)
        if len(self.central) not in (1, 2) or len(self.a) != len(self.central):
            raise ValueError("central dimension must be 1 or 2")
        if self.a[0] == 0:
            raise ValueError("first Pfaffian coefficient must be nonzero")
        self.lo, self.hi, self.tau_prec = float(lo), float(hi), float(tau_prec)
        t = np.linspace(self.lo, self.hi, nquad + 1)
        self._lam = np.concatenate([-t[::-1], t])
        self._beta = self.beta(self._lam)
        self._dlam = t[1] - t[0]

    @property
    def n(self) -> int:
        return self.G.n

    def central_half_widths(self, tail: float = 1e-12) -> tuple:
        """Box in central coordinates outside which ``beta * g`` is below ``tail``."""
        if len(self.central) == 1:
            return (self.hi / abs(self.a[0]),)
        t = float(np.sqrt(-2 * np.log(tail) / self.tau_prec))
        return ((self.hi + abs(self.a[1]) * t) / abs(self.a[0]), t)

    def beta(self, lam):
        mid, half = (self.lo + self.hi) / 2, (self.hi - self.lo) / 2
        return smooth_bump((np.abs(lam) - mid) / half)

    def _central(self, zs):
        lam = sum(a * z for a, z in zip(self.a, zs))
        out = self.beta(lam)
        if len(zs) == 2:
            out = out * np.exp(-0.5 * self.tau_prec * zs[1] ** 2)
        return out

    def eval_coords(self, coords):
        coords = list(coords)
        zs = [np.asarray(coords[i], float) for i in self.central]
        for i in self.central:
            coords[i] = 0.0
        return self.G.eval_coords(coords) * self._central(zs)

    def __call__(self, X):
        X = np.asarray(X, float)
        return self.eval_coords([X[..., a] for a in range(self.n)])

    def beta_check(self, w) -> np.ndarray:
        """``int beta(lam) exp(i w lam) dlam`` by (spectrally accurate) quadrature."""
        w = np.asarray(w, float)
        flat = w.reshape(-1)
        out = np.empty(flat.size, dtype=complex)
        for i in range(0, flat.size, 256):
            out[i:i + 256] = np.exp(1j * np.outer(flat[i:i + 256], self._lam)) @ self._beta
        return (out * self._dlam).reshape(w.shape)

    def _central_inverse(self, zs):
        """``int exp(i<z|Z>) beta(lam) g(tau) dZ``."""
        a0 = self.a[0]
        s = np.asarray(zs[0], float)
        out = self.beta_check(s / a0) / abs(a0)
        if len(zs) == 2:
            w = np.asarray(zs[1], float) - s * self.a[1] / a0
            out = out * np.sqrt(2 * np.pi / self.tau_prec) * np.exp(-w * w / (2 * self.tau_prec))
        return out

    def inverse_fourier(self, points) -> np.ndarray:
        """``(2 pi)^-n int exp(i<x|X>) B(X) dX``."""
        X = np.atleast_2d(np.asarray(points, float))
        nc = [a for a in range(self.n) if a not in self.central]
        Gi = self.G.fourier(axes=nc, sign=1)
        coords = [X[:, a] for a in range(self.n)]
        zs = [coords[i] for i in self.central]
        for i in self.central:
            coords[i] = 0.0
        return Gi.eval_coords(coords) * self._central_inverse(zs) / (2 * np.pi) ** self.n

    def function(self, p_index: int):
        """The function ``u = F^-1 B`` with its closed partial transform over p and the centre."""
        return _InverseOfBump(self, p_index)


class _InverseOfBump:
    def __init__(self, B: CentralBumpSymbol, p_index: int):
        self.B = B
        self.p_index = p_index
        other = [a for a in range(B.n) if a not in B.central and a != p_index]
        self._Gq = B.G.fourier(axes=other, sign=1).scale((2 * np.pi) ** -len(other))

    @property
    def n(self) -> int:
        return self.B.n

    def __call__(self, X):
        X = np.asarray(X, float)
        shape = X.shape[:-1]
        return self.B.inverse_fourier(X.reshape(-1, self.n)).reshape(shape)

    def partial_fourier(self, X):
        X = np.asarray(X, float)
        coords = [X[..., a] for a in range(self.n)]
        zs = [coords[i] for i in self.B.central]
        for i in self.B.central:
            coords[i] = 0.0
        return self._Gq.eval_coords(coords) * self.B._central(zs)


def _floats(text: str) -> list:
    return [float(v) for v in text.split(",") if v.strip()]


def parse_symbol(text: str, n: int) -> GaussSum:
    """Parse a Gaussian-family symbol in ``n`` variables.

    Forms: ``gauss:center=0,0;prec=1,2;mod=0,0;const=1;poly=1.0:0.5|0.1:0.2``
    (omitted fields default to 0, 1, 0, 1 and the constant polynomial), a sum of
    such blocks joined by ``+``, or ``@file.json`` holding ``{"terms": [...]}``
    with the same keys.
    """
    import json

    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            data = json.load(fh)
        blocks = [_block_from_dict(t, n) for t in data["terms"]]
        return GaussSum(blocks)
    blocks = []
    for part in text.split("+"):
        part = part.strip()
        if not part.startswith("gauss"):
            raise ValueError(f"unknown symbol family in {part!r}")
        fields = {}
        body = part.split(":", 1)[1] if ":" in part else ""
        for item in filter(None, (b.strip() for b in body.split(";"))):
            key, _, val = item.partition("=")
            fields[key.strip()] = val.strip()
        d = {}
        for key in ("center", "prec", "mod"):
            if key in fields:
                d[key] = _floats(fields[key])
        if "const" in fields:
            d["const"] = complex(fields["const"])
        if "poly" in fields:
            d["poly"] = {}
            for term in fields["poly"].split("|"):
                e, _, c = term.partition(":")
                d["poly"][e] = complex(c)
        blocks.append(_block_from_dict(d, n))
    return GaussSum(blocks)


def _block_from_dict(d: dict, n: int) -> GaussPoly:
    center = list(d.get("center", [0.0] * n))
    prec = list(d.get("prec", [1.0] * n))
    mod = list(d.get("mod", [0.0] * n))
    if not (len(center) == len(prec) == len(mod) == n):
        raise ValueError(f"symbol needs {n} values per field")
    if any(p <= 0 for p in prec):
        raise ValueError("precisions must be positive")
    poly = None
    if "poly" in d:
        poly = {}
        for e, c in d["poly"].items():
            exps = tuple(int(v) for v in (e.split(".") if isinstance(e, str) else e))
            if len(exps) != n:
                raise ValueError("polynomial exponents have the wrong length")
            poly[exps] = complex(c) if not isinstance(c, (list, tuple)) else complex(*c)
    const = d.get("const", 1.0)
    return GaussPoly.gaussian(center, prec, mod, poly, complex(const) if not isinstance(
        const, (list, tuple)) else complex(*const))
