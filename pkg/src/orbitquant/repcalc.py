"""Schrödinger-type representations of step-two groups with two-dimensional orbits.

Covers the Heisenberg group and the δ-group: with polarization coordinates
``(q, p)`` and central coordinates ``z``, the representation attached to the
central dual point ``Z`` acts on samples of a function on a line by

    [pi(q, p, z) phi](q0) = exp(i(<z|Z> + (q0 p + q p / 2) lam)) phi(q0 + q),

with ``lam = Pf(Z)``.  Translations use a band-limited (FFT) shift.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import circulant, toeplitz

from .lie_core import LieAlgebraSpec, center_indices
from .orbits import FlatOrbitChart, common_predual, flat_chart


class RepresentationError(ValueError):
    pass


class GridResolutionError(ValueError):
    pass


@dataclass(frozen=True)
class Grid1D:
    L: float
    M: int

    def __post_init__(self):
        if self.M < 8 or self.M & (self.M - 1):
            raise ValueError("M must be a power of two and at least 8")
        if self.L <= 0:
            raise ValueError("L must be positive")

    @property
    def h(self) -> float:
        return 2 * self.L / self.M

    @property
    def nodes(self) -> np.ndarray:
        return -self.L + self.h * np.arange(self.M)

    @property
    def freqs(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.M, self.h)


@dataclass
class GridOperator:
    """Dense matrix acting on grid samples; entries already carry the weight ``h``."""

    matrix: np.ndarray
    grid: Grid1D
    meta: dict = field(default_factory=dict)

    def apply(self, phi):
        return self.matrix @ phi

    def __matmul__(self, other):
        if isinstance(other, GridOperator):
            return GridOperator(self.matrix @ other.matrix, self.grid)
        return self.matrix @ other

    def __add__(self, other):
        return GridOperator(self.matrix + other.matrix, self.grid)

    def __sub__(self, other):
        return GridOperator(self.matrix - other.matrix, self.grid)

    def scaled(self, c):
        return GridOperator(c * self.matrix, self.grid)

    def adjoint(self):
        return GridOperator(self.matrix.conj().T, self.grid)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def hs_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))

    def op_norm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def kernel(self) -> np.ndarray:
        """Continuum kernel samples ``K(q_i, q_j)``."""
        return self.matrix / self.grid.h


def boundary_mass(values, frac: float = 1 / 32) -> float:
    """Largest magnitude near the edges relative to the global maximum."""
    v = np.abs(np.asarray(values))
    peak = v.max() if v.size else 0.0
    if peak == 0:
        return 0.0
    k = max(1, int(v.shape[0] * frac))
    return float(max(v[:k].max(), v[-k:].max()) / peak)


def rep_available(spec: LieAlgebraSpec) -> bool:
    om = common_predual(spec)
    cen = center_indices(spec)
    return spec.step == 2 and len(om) == 2 and len(cen) == spec.dim - 2


@dataclass(frozen=True)
class RepChart:
    spec: LieAlgebraSpec
    orbit: FlatOrbitChart
    lam: float
    grid: Grid1D
    q_index: int
    p_index: int
    central_indices: tuple
    Z: tuple

    @property
    def group_id(self) -> str:
        return self.spec.name


def rep_chart(spec: LieAlgebraSpec, Z, grid: Grid1D) -> RepChart:
    if not rep_available(spec):
        raise RepresentationError(f"no explicit representation for {spec.name or 'this group'}")
    Z = tuple(float(z) for z in Z)
    orbit = flat_chart(spec, Z)
    q, p = common_predual(spec)
    return RepChart(spec, orbit, float(orbit.pfaffian), grid, q, p, center_indices(spec), Z)


def _split(chart: RepChart, x):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != chart.spec.dim:
        raise RepresentationError(f"expected {chart.spec.dim} coordinates")
    z = x[..., list(chart.central_indices)]
    return x[..., chart.q_index], x[..., chart.p_index], z


def shift_matrix(grid: Grid1D, a: float) -> np.ndarray:
    """Unitary band-limited translation ``phi -> phi(. + a)``."""
    return circulant(np.fft.ifft(np.exp(1j * grid.freqs * a)))


def _check_shift(chart, q):
    if abs(q) > chart.grid.L:
        raise GridResolutionError(f"translation {q} leaves the grid [-{chart.grid.L}, {chart.grid.L}]")


def rep_phase(chart: RepChart, x) -> np.ndarray:
    q, p, z = _split(chart, x)
    q0 = chart.grid.nodes
    return np.exp(1j * (float(np.dot(z, chart.Z)) + (q0 * p + 0.5 * q * p) * chart.lam))


def rep_apply(chart: RepChart, x, phi) -> np.ndarray:
    q, _, _ = _split(chart, x)
    _check_shift(chart, q)
    phi = np.asarray(phi, dtype=complex)
    kap = chart.grid.freqs
    shifted = np.fft.ifft(np.exp(1j * kap * q).reshape((-1,) + (1,) * (phi.ndim - 1))
                          * np.fft.fft(phi, axis=0), axis=0)
    ph = rep_phase(chart, x).reshape((-1,) + (1,) * (phi.ndim - 1))
    return ph * shifted


def rep_matrix(chart: RepChart, x) -> GridOperator:
    q, _, _ = _split(chart, x)
    _check_shift(chart, q)
    return GridOperator(rep_phase(chart, x)[:, None] * shift_matrix(chart.grid, q), chart.grid)


def central_character(chart: RepChart, z) -> complex:
    z = np.asarray(z, dtype=float)
    mask = np.ones(chart.spec.dim, bool)
    mask[list(chart.central_indices)] = False
    if np.any(z[mask] != 0):
        raise RepresentationError("element is not central")
    return complex(np.exp(1j * float(np.dot(z[list(chart.central_indices)], chart.Z))))


def derivative_matrix(grid: Grid1D) -> np.ndarray:
    """Spectral first derivative with the Nyquist mode removed."""
    k = grid.freqs.copy()
    k[grid.M // 2] = 0.0
    return np.real(circulant(np.fft.ifft(1j * k)))


def second_derivative_matrix(grid: Grid1D) -> np.ndarray:
    """Symmetric periodic spectral second derivative (even M)."""
    M = grid.M
    hh = 2 * np.pi / M
    col = np.empty(M)
    col[0] = -np.pi ** 2 / (3 * hh ** 2) - 1 / 6
    k = np.arange(1, M)
    col[1:] = -0.5 * (-1.0) ** k / np.sin(k * hh / 2) ** 2
    return toeplitz(col * (np.pi / grid.L) ** 2)


def generator(chart: RepChart, j: int) -> GridOperator:
    """Matrix of the derived representation on the basis vector ``E_j``."""
    g = chart.grid
    if j == chart.q_index:
        mat = derivative_matrix(g).astype(complex)
    elif j == chart.p_index:
        mat = np.diag(1j * chart.lam * g.nodes)
    else:
        k = chart.central_indices.index(j)
        mat = 1j * chart.Z[k] * np.eye(g.M)
    return GridOperator(mat, g)


def rep_sub_laplacian(chart: RepChart) -> GridOperator:
    """Image of ``Q^2 + P^2``: ``D2 - lam^2 q^2`` (real symmetric)."""
    g = chart.grid
    return GridOperator(second_derivative_matrix(g) - np.diag((chart.lam * g.nodes) ** 2), g)


def dilation_intertwiner(chart: RepChart, r: float) -> GridOperator:
    """``(U phi)(q0) = r^(1/4) phi(sqrt(r) q0)``; samples mapped off the grid are dropped."""
    if r <= 0:
        raise ValueError("r must be positive")
    g = chart.grid
    y = np.sqrt(r) * g.nodes
    kap = g.freqs
    E = np.exp(1j * np.outer(y + g.L, kap))
    nyq = g.M // 2
    E[:, nyq] = np.cos(kap[nyq] * (y + g.L))
    mat = r ** 0.25 * (E / g.M) @ np.fft.fft(np.eye(g.M), axis=0)
    mat[np.abs(y) > g.L] = 0.0
    if r == 1:
        mat = np.eye(g.M, dtype=complex)
    return GridOperator(mat, g, {"r": r})


def apply_intertwiner(chart: RepChart, r: float, phi, tol: float = 1e-8) -> np.ndarray:
    """Apply the dilation unitary, refusing inputs whose rescaled support leaves the grid."""
    phi = np.asarray(phi)
    g = chart.grid
    # only samples of phi inside |q| <= sqrt(r) L are read back onto the grid
    lim = min(1.0, np.sqrt(r)) * g.L * (1 - 1 / 16)
    outside = np.abs(g.nodes) > lim
    peak = np.abs(phi).max(initial=0.0)
    if peak and np.abs(phi[outside]).max(initial=0.0) > tol * peak:
        raise GridResolutionError("rescaled support exceeds grid")
    return dilation_intertwiner(chart, r).apply(phi)


def represented_T(chart: RepChart, s: float, nu: int = 2) -> GridOperator:
    """``(I + A)^(s / nu)`` with ``A = -rep_sub_laplacian`` via eigendecomposition."""
    A = -rep_sub_laplacian(chart).matrix
    mu, V = np.linalg.eigh(A)
    mat = (V * (1.0 + mu) ** (s / nu)) @ V.T
    return GridOperator(mat.astype(complex), chart.grid, {"power": s, "nu": nu})


def ladder(chart: RepChart, count: int) -> np.ndarray:
    """Lowest eigenvalues of ``-rep_sub_laplacian``."""
    A = -rep_sub_laplacian(chart).matrix
    return np.linalg.eigvalsh(A)[:count]
