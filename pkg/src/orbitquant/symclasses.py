"""Graded-group symbol machinery: Taylor polynomials, difference operators,
Rockland operators, homogeneity certificates and sampled seminorms."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .lie_core import (FieldAlgebra, LieAlgebraError, LieAlgebraSpec, bracket, coordinate_ring,
                       homogeneous_monomials, monomial_degree)
from .repcalc import GridOperator, RepChart, represented_T  # noqa: F401  (re-export)
from .symbols import GaussSum, apply_field


class SymbolClassError(ValueError):
    pass


# ------------------------------------------------------------------ multi-indices

@dataclass(frozen=True)
class MultiIndex:
    alpha: tuple

    @property
    def order(self) -> int:
        return sum(self.alpha)

    def hom_length(self, spec: LieAlgebraSpec) -> int:
        return monomial_degree(spec, self.alpha)

    def word(self) -> tuple:
        """Letters of ``X^alpha = X_0^a0 X_1^a1 ...``."""
        return tuple(j for j, a in enumerate(self.alpha) for _ in range(a))

    def factorial(self) -> int:
        out = 1
        for a in self.alpha:
            for k in range(2, a + 1):
                out *= k
        return out


def multi_indices(spec: LieAlgebraSpec, max_hom_degree: int) -> list:
    out = []
    for D in range(max_hom_degree + 1):
        out.extend(MultiIndex(a) for a in homogeneous_monomials(spec, D))
    return out


# ------------------------------------------------------------------ Taylor polynomials

def _value_at_identity(p, n: int):
    return p.to_dict().get((0,) * n, QQ(0)) if p else QQ(0)


def taylor_system(spec: LieAlgebraSpec, degree: int, fields: FieldAlgebra | None = None):
    """Monomials of homogeneous degree ``degree`` and ``M[b, g] = (X^b x^g)(e)``."""
    fields = fields or FieldAlgebra(spec)
    monos = homogeneous_monomials(spec, degree)
    R = fields.ring
    rows = []
    for b in monos:
        word = MultiIndex(b).word()
        rows.append([_value_at_identity(fields.apply_word(word, R({g: 1})), spec.dim)
                     for g in monos])
    return monos, DomainMatrix(rows, (len(monos), len(monos)), QQ) if monos else None


def taylor_polynomials(spec: LieAlgebraSpec, max_hom_degree: int) -> dict:
    """``alpha -> q_alpha`` with ``(X^beta q_alpha)(e) = delta`` in each homogeneous degree."""
    fields = FieldAlgebra(spec)
    R = fields.ring
    out = {}
    for D in range(max_hom_degree + 1):
        monos, M = taylor_system(spec, D, fields)
        if not monos:
            continue
        if M.det() == 0:
            raise SymbolClassError(f"singular Taylor system in degree {D}")
        # rows of C solve C M^T = I
        C = M.transpose().inv()
        Cl = C.to_list()
        for i, a in enumerate(monos):
            out[a] = R.from_dict({g: Cl[i][j] for j, g in enumerate(monos) if Cl[i][j]})
    return out


def taylor_determinants(spec: LieAlgebraSpec, max_hom_degree: int) -> dict:
    fields = FieldAlgebra(spec)
    dets = {}
    for D in range(max_hom_degree + 1):
        monos, M = taylor_system(spec, D, fields)
        if monos:
            dets[D] = Fraction(int(M.det().numerator), int(M.det().denominator))
    return dets


def reflected(p) -> dict:
    """``q~(X) = q(-X)`` as a float dict ``{exponents: coef}``."""
    return {m: float(c) * (-1) ** sum(m) for m, c in p.to_dict().items()}


# ------------------------------------------------------------------ difference operators

def gamma_diff_gauss(q: dict, B: GaussSum, axes=None) -> GaussSum:
    """``F Mult_q F^-1 B`` in closed form; ``q`` acts on the variables in ``axes``.

    ``q`` is a dict ``{exponents: coef}`` over ``len(axes)`` variables (already
    reflected if a difference operator is wanted).
    """
    axes = tuple(range(B.n)) if axes is None else tuple(axes)
    n_ax = len(axes)
    inv = B.fourier(axes=axes, sign=1).scale((2 * np.pi) ** -n_ax)
    full = {}
    for e, c in q.items():
        ex = [0] * B.n
        for a, k in zip(axes, e):
            ex[a] = k
        full[tuple(ex)] = complex(c)
    return inv.mul_poly(full).fourier(axes=axes, sign=-1)


def gamma_diff(q: dict, B_values: np.ndarray, dual_grid, threshold: float | None = 1e-10):
    """FFT route on a ``g*`` grid: inverse transform, multiply by ``q``, transform back."""
    from .quantize.grids import fourier_g_gstar, inverse_fourier_g_gstar

    base, h = inverse_fourier_g_gstar(B_values, dual_grid, threshold)
    X = base.points()
    mult = np.zeros(X.shape[:-1], dtype=complex)
    for e, c in q.items():
        term = np.full(X.shape[:-1], complex(c))
        for a, k in enumerate(e):
            if k:
                term = term * X[..., a] ** k
        mult += term
    _, out = fourier_g_gstar(h * mult, base, None)
    return out


def difference_operator(spec: LieAlgebraSpec, alpha, B: GaussSum, taylor: dict | None = None,
                        axes=None) -> GaussSum:
    """``Gamma^alpha B`` using ``q~_alpha(X) = q_alpha(-X)``."""
    alpha = tuple(alpha)
    taylor = taylor or taylor_polynomials(spec, monomial_degree(spec, alpha))
    return gamma_diff_gauss(reflected(taylor[alpha]), B, axes)


# ------------------------------------------------------------------ Rockland operators

@dataclass(frozen=True)
class RocklandSpec:
    terms: tuple                    # ((index, power, sign), ...)
    order: int
    generators: tuple
    p: int
    labels: tuple = field(default=())
    generates: bool = True

    def words(self) -> list:
        """``[(sign, word), ...]`` with each word a power of one field."""
        return [(s, (j,) * k) for j, k, s in self.terms]

    def describe(self) -> str:
        parts = []
        for j, k, s in self.terms:
            name = self.labels[j] if self.labels else f"E{j}"
            parts.append(f"{'-' if s < 0 else '+'}{name}^{k}")
        return " ".join(parts).lstrip("+")

    def apply(self, fields: FieldAlgebra, poly):
        out = fields.ring(0)
        for s, w in self.words():
            out += s * fields.apply_word(w, poly)
        return out


def generated_dimension(spec: LieAlgebraSpec, generators) -> int:
    """Dimension of the Lie subalgebra generated by the basis vectors ``generators``."""
    n = spec.dim
    basis = []

    def reduce(v):
        v = list(v)
        for piv, b in basis:
            if v[piv]:
                c = v[piv] / b[piv]
                v = [x - c * y for x, y in zip(v, b)]
        return v

    def add(v):
        r = reduce(v)
        nz = [i for i, x in enumerate(r) if x]
        if nz:
            basis.append((nz[0], r))
            return True
        return False

    frontier = []
    for j in generators:
        e = [Fraction(0)] * n
        e[j] = Fraction(1)
        if add(e):
            frontier.append(e)
    gens = list(frontier)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                v = bracket(spec, g, a)
                if any(v) and add(v):
                    new.append(v)
        frontier = new
    return len(basis)


def rockland_build(spec: LieAlgebraSpec, generators, p: int | None = None,
                   strict: bool = True) -> RocklandSpec:
    """``sum_j (-1)^(p / nu_j) E_j^(2p / nu_j)`` over the generating indices.

    With ``strict=False`` a generator set that misses part of the algebra is
    accepted and flagged through ``generates``.
    """
    generators = tuple(generators)
    if not spec.grading_weights:
        raise SymbolClassError("graded structure required")
    w = spec.grading_weights
    generates = generated_dimension(spec, generators) == spec.dim
    if strict and not generates:
        raise SymbolClassError(f"indices {generators} do not generate the algebra")
    lcm = 1
    for j in generators:
        lcm = lcm * w[j] // np.gcd(lcm, w[j])
    p = lcm if p is None else int(p)
    if any(p % w[j] for j in generators):
        raise SymbolClassError("p must be a common multiple of the generator weights")
    terms = tuple((j, 2 * p // w[j], (-1) ** (p // w[j])) for j in generators)
    return RocklandSpec(terms, 2 * p, generators, p, tuple(spec.labels or ()), generates)


# ------------------------------------------------------------------ homogeneity

@dataclass
class HomogeneityReport:
    passed: bool
    order: int
    r: Fraction
    monomials_checked: int
    witness: tuple | None = None
    field_certificate: bool = True

    def to_dict(self) -> dict:
        return {"pass": self.passed, "order": self.order, "r": str(self.r),
                "monomials_checked": self.monomials_checked,
                "witness": list(self.witness) if self.witness else None,
                "field_certificate": self.field_certificate}


def _dilate_poly(spec, poly, r: Fraction) -> dict:
    """``poly o dil_r`` as an exact dict."""
    return {m: Fraction(int(c.numerator), int(c.denominator)) * r ** monomial_degree(spec, m)
            for m, c in poly.to_dict().items()}


def field_homogeneity_certificate(spec: LieAlgebraSpec, max_degree: int) -> bool:
    """Each ``X_j`` lowers homogeneous degree by exactly ``nu_j`` on monomials up to ``max_degree``."""
    fields = FieldAlgebra(spec)
    w = spec.grading_weights
    for D in range(max_degree + 1):
        for g in homogeneous_monomials(spec, D):
            for j in range(spec.dim):
                img = fields.apply(j, fields.ring({g: 1}))
                if any(monomial_degree(spec, m) != D - w[j] for m in img.to_dict()):
                    return False
    return True


def default_test_monomials(spec: LieAlgebraSpec, order: int, variables=None,
                           cap: int = 5000) -> list:
    """Monomials of homogeneous degree up to ``order + 2 step``.

    When that set exceeds ``cap`` the check falls back to monomials in
    ``variables`` (default: weight-one variables) of homogeneous degree
    ``order .. order + 2 step`` plus all monomials of degree at most ``2 step``.
    """
    top = order + 2 * spec.step
    full = []
    for D in range(top + 1):
        full.extend(homogeneous_monomials(spec, D))
        if len(full) > cap:
            break
    else:
        return full
    w = spec.grading_weights
    low = [m for D in range(2 * spec.step + 1) for m in homogeneous_monomials(spec, D)]
    var = sorted(variables) if variables else [j for j in range(spec.dim) if w[j] == 1]
    gen = []

    def rec(i, remaining, acc):
        if i == len(var):
            if order <= top - remaining:
                gen.append(tuple(acc))
            return
        j = var[i]
        for a in range(remaining // w[j] + 1):
            acc[j] = a
            rec(i + 1, remaining - a * w[j], acc)
        acc[j] = 0

    rec(0, top, [0] * spec.dim)
    return low + sorted(set(gen) - set(low))


def homogeneity_check(spec: LieAlgebraSpec, op: RocklandSpec, nu: int, r=Fraction(2),
                      monomials=None) -> HomogeneityReport:
    """Exact check of ``(R (f o dil_r)) o dil_(1/r) = r^nu R f`` on monomials."""
    r = Fraction(r)
    fields = FieldAlgebra(spec)
    if monomials is None:
        monomials = default_test_monomials(spec, nu, op.generators)
    R = fields.ring
    for g in monomials:
        # a monomial g satisfies g o dil_r = r^[g] g, so R(g o dil_r) = r^[g] R g
        Rg = op.apply(fields, R({tuple(g): 1}))
        lhs = {m: c * r ** monomial_degree(spec, g)
               for m, c in _dilate_poly(spec, Rg, 1 / r).items()}
        rhs = {m: c * r ** nu for m, c in _dilate_poly(spec, Rg, Fraction(1)).items()}
        if lhs != rhs:
            return HomogeneityReport(False, nu, r, len(monomials), tuple(g))
    cert = field_homogeneity_certificate(spec, min(2 * spec.step, 8))
    return HomogeneityReport(cert, nu, r, len(monomials), None, cert)


# ------------------------------------------------------------------ seminorms

def _op_norm(mat: np.ndarray) -> float:
    return float(np.linalg.norm(mat, 2)) if mat.size else 0.0


def seminorm_estimate(spec: LieAlgebraSpec, f: GaussSum, m: float, rho: float, delta: float,
                      alpha, beta, gamma: float, xs, charts, taylor: dict | None = None) -> dict:
    """Sampled lower bound for the symbol seminorm of ``f`` on ``G x g*``.

    ``f`` has ``2n`` variables ``(x, X)``.  For every sampled ``x`` and chart the
    operator ``T^(-m + rho[alpha] - delta[beta] + gamma) Ped((X^beta Gamma^alpha f)(x, .)) T^-gamma``
    is formed on the representation grid and its operator norm taken.
    """
    from .quantize.pedersen import orbit_symbol, pedersen_quantize

    n = spec.dim
    if f.n != 2 * n:
        raise SymbolClassError("symbol must have 2n variables")
    alpha, beta = tuple(alpha), tuple(beta)
    g = f
    if any(alpha):
        taylor = taylor or taylor_polynomials(spec, monomial_degree(spec, alpha))
        g = gamma_diff_gauss(reflected(taylor[alpha]), g, axes=range(n, 2 * n))
    for j in reversed(MultiIndex(beta).word()):
        g = apply_field(spec, j, g, offset=0)
    power = -m + rho * monomial_degree(spec, alpha) - delta * monomial_degree(spec, beta) + gamma
    xs = np.atleast_2d(np.asarray(xs, float))
    best = 0.0
    where = None
    for chart in charts:
        nu = 2
        left = represented_T(chart, power, nu).matrix
        right = represented_T(chart, -gamma, nu).matrix
        for x in xs:
            def B(X, x=x):
                X = np.asarray(X, float)
                full = np.concatenate([np.broadcast_to(x, X.shape[:-1] + (n,)), X], axis=-1)
                return g(full)
            S = pedersen_quantize(chart, orbit_symbol(B, chart)).matrix
            val = _op_norm(left @ S @ right)
            if val > best:
                best, where = val, (list(map(float, x)), list(chart.Z))
    return {"value": best, "lower_bound": True, "argmax": where, "power": power,
            "samples": {"x": xs.tolist(), "Z": [list(c.Z) for c in charts]}}
