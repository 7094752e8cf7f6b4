"""Group Fourier transform over flat orbits and its inverse on a centre-dual grid."""
from __future__ import annotations

import math

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..lie_core import LieAlgebraSpec, bch
from ..orbits import central_measure_const, half_dim, is_admissible, pfaffian_values
from ..parallel import chunks, ordered_map
from ..repcalc import Grid1D, GridResolutionError, GridOperator, RepChart, rep_available, rep_chart
from .grids import GridND
from .pedersen import assemble_sheared, orbit_symbol, pedersen_dequantize, pedersen_quantize


class SupportError(ValueError):
    pass


@dataclass(frozen=True)
class ZGrid:
    """Tensor grid on the centre dual, keeping nodes with ``|Pf| >= eps0``.

    ``center`` translates the grid; useful for sections concentrated off the origin.
    """

    spec: LieAlgebraSpec
    grid: GridND
    eps0: float = 0.25
    center: tuple | None = None

    def __post_init__(self):
        if not is_admissible(self.spec):
            raise SupportError("non-admissible group")
        if half_dim(self.spec) == 0:
            raise SupportError("degenerate group (d = 0) has no quantization")

    @cached_property
    def all_nodes(self) -> np.ndarray:
        pts = self.grid.flat_points()
        return pts if self.center is None else pts + np.asarray(self.center, float)

    @cached_property
    def _all_pf(self) -> np.ndarray:
        return pfaffian_values(self.spec, self.all_nodes)

    @cached_property
    def nodes(self) -> np.ndarray:
        return self.all_nodes[np.abs(self._all_pf) >= self.eps0]

    def pfaffians(self) -> np.ndarray:
        return self._all_pf[np.abs(self._all_pf) >= self.eps0]

    def weights(self) -> np.ndarray:
        """Plancherel density times reference measure of each cell, as Lebesgue weights."""
        d = half_dim(self.spec)
        dens = 2 ** d * math.factorial(d) * np.abs(self.pfaffians())
        return dens * central_measure_const(self.spec) * self.grid.weight

    def charts(self, grid: Grid1D) -> list:
        key = ("charts", grid.L, grid.M)
        if key not in self.__dict__:
            self.__dict__[key] = [rep_chart(self.spec, z, grid) for z in self.nodes]
        return self.__dict__[key]


def check_support(values_on_all_nodes, zgrid: ZGrid, tol: float = 1e-12):
    """Raise if a central profile is non-negligible where ``|Pf| < eps0``."""
    pf = np.abs(zgrid._all_pf)
    vals = np.abs(np.asarray(values_on_all_nodes))
    if vals.max(initial=0) and vals[pf < zgrid.eps0].max(initial=0) > tol * vals.max():
        raise SupportError("section support touches the Pfaffian zero set")


# ------------------------------------------------------------------ forward

def partial_fourier(u, chart: RepChart):
    """``(Id x F)u`` over the polarization-p and central axes for a ``GaussSum`` u."""
    axes = [chart.p_index] + list(chart.central_indices)
    return u.fourier(axes=axes, sign=-1)


def _sheared_points(chart: RepChart):
    g = chart.grid
    q = g.nodes
    Q0, Q = np.meshgrid(q, q, indexing="ij")
    X = np.zeros((g.M, g.M, chart.spec.dim))
    X[..., chart.q_index] = Q0 - Q
    X[..., chart.p_index] = chart.lam * (Q0 + Q) / 2
    for idx, z in zip(chart.central_indices, chart.Z):
        X[..., idx] = z
    return X


def group_fourier(u, chart: RepChart, aux: GridND | None = None,
                  method: str = "auto") -> GridOperator:
    """``int u(x) xi(x)^* dx`` as a grid operator.

    ``method='analytic'`` uses a closed-form partial transform (``u.fourier`` or
    ``u.partial_fourier``); ``'quadrature'`` samples ``u`` on ``aux`` (axes p then
    central coordinates) and transforms numerically.
    """
    if method == "auto":
        method = "analytic" if hasattr(u, "fourier") or hasattr(u, "partial_fourier") else \
            "quadrature"
    if method == "analytic":
        if hasattr(u, "partial_fourier"):
            vals = u.partial_fourier(_sheared_points(chart))
        else:
            vals = partial_fourier(u, chart)(_sheared_points(chart))
        return GridOperator(vals * chart.grid.h, chart.grid, {"Z": chart.Z})
    if aux is None:
        raise ValueError("quadrature route needs an auxiliary grid")
    if np.pi / aux.spacings[0] < abs(chart.lam) * chart.grid.L:
        raise GridResolutionError("auxiliary p spacing aliases the sheared frequencies")
    return GridOperator(_group_fourier_quadrature(u, chart, aux) * chart.grid.h, chart.grid,
                        {"Z": chart.Z})


def _group_fourier_quadrature(u, chart: RepChart, aux: GridND, chunk: int = 8) -> np.ndarray:
    g = chart.grid
    M = g.M
    n = chart.spec.dim
    w = np.arange(-(M - 1), M) * g.h
    p_axis = aux.axis(0)
    c_axes = [aux.axis(a + 1) for a in range(len(chart.central_indices))]
    mesh = np.meshgrid(p_axis, *c_axes, indexing="ij")
    dc = np.prod(aux.spacings[1:]) if len(c_axes) else 1.0
    # central phases exp(-i <z|Z>) on the auxiliary mesh
    zphase = np.ones(mesh[0].shape, dtype=complex)
    for m_, z in zip(mesh[1:], chart.Z):
        zphase = zphase * np.exp(-1j * m_ * z)

    def rows(ws):
        X = np.zeros((len(ws),) + mesh[0].shape + (n,))
        X[..., chart.q_index] = np.asarray(ws).reshape((-1,) + (1,) * len(mesh))
        X[..., chart.p_index] = mesh[0]
        for idx, m_ in zip(chart.central_indices, mesh[1:]):
            X[..., idx] = m_
        vals = np.asarray(u(X)) * zphase
        return vals.reshape(len(ws), p_axis.size, -1).sum(axis=2) * dc

    U1 = np.concatenate(ordered_map(rows, chunks(w, chunk)), axis=0)  # (2M-1, Np)
    v = chart.lam * (-g.L + np.arange(2 * M - 1) * g.h / 2)
    E = np.exp(-1j * np.outer(v, p_axis)) * aux.spacings[0]
    V = E @ U1.T                                                         # V[s, d + M - 1]
    V = np.roll(V, -(M - 1), axis=1)                                     # column index d mod 2M-1
    i = np.arange(M)[:, None]
    k = np.arange(M)[None, :]
    return V[i + k, (i - k) % V.shape[1]]


def group_fourier_weyl(u, chart: RepChart) -> GridOperator:
    """Dual route: ``Weyl_lam`` of the full transform restricted to the orbit."""
    full = u.fourier(sign=-1)
    return pedersen_quantize(chart, orbit_symbol(full, chart))


# ------------------------------------------------------------------ inverse

def _diagonals(b: np.ndarray) -> np.ndarray:
    """``Bd[m, k] = b[(k - m) mod M, k]``."""
    M = b.shape[0]
    k = np.arange(M)[None, :]
    m = np.arange(M)[:, None]
    return b[(k - m) % M, k]


def _trace_with_reps(b: np.ndarray, chart: RepChart, X: np.ndarray, cols: np.ndarray):
    """``Tr[b xi(x)]`` for many x; ``cols[n]`` is the circulant column of the shift by x_q."""
    q0 = chart.grid.nodes
    xq = X[:, chart.q_index]
    xp = X[:, chart.p_index]
    zc = X[:, list(chart.central_indices)] @ np.asarray(chart.Z)
    D = np.exp(1j * (zc[:, None] + (np.outer(xp, q0) + (xq * xp / 2)[:, None]) * chart.lam))
    W = cols @ _diagonals(b)
    return (D * W).sum(axis=1)


def inverse_group_fourier(section, zgrid: ZGrid, grid: Grid1D, points,
                          node_chunk: int = 64) -> np.ndarray:
    """``sum_Z Tr[b(Z) xi_Z(x)] * Plancherel weight`` at each point ``x``.

    ``section(chart)`` returns the operator at the node described by ``chart``.
    """
    X = np.atleast_2d(np.asarray(points, float))
    charts = zgrid.charts(grid)
    weights = zgrid.weights()
    if not charts:
        return np.zeros(len(X), dtype=complex)
    q_idx = charts[0].q_index
    cols = np.stack([np.fft.ifft(np.exp(1j * grid.freqs * xq)) for xq in X[:, q_idx]])

    def work(idx):
        acc = np.zeros(len(X), dtype=complex)
        for j in idx:
            b = section(charts[j])
            if b is None:
                continue
            acc += weights[j] * _trace_with_reps(b.matrix, charts[j], X, cols)
        return acc

    parts = ordered_map(work, chunks(range(len(charts)), node_chunk))
    out = np.zeros(len(X), dtype=complex)
    for p in parts:
        out += p
    return out


def plancherel_norm_sq(section, zgrid: ZGrid, grid: Grid1D) -> float:
    charts = zgrid.charts(grid)
    w = zgrid.weights()
    return float(sum(wj * section(c).hs_norm() ** 2 for wj, c in zip(w, charts)))


# ------------------------------------------------------------------ W transform

def w_transform(B):
    """Section ``Z -> Ped(B restricted to the orbit of Z)`` for a dual symbol ``B``."""

    def section(chart: RepChart) -> GridOperator:
        if not rep_available(chart.spec):
            raise SupportError("representation not available for this group")
        return pedersen_quantize(chart, orbit_symbol(B, chart))

    return section


def w_inverse(section, chart: RepChart, rho, theta, check: float | None = 1e-8):
    """Orbit symbol recovered from the operator at ``chart``."""
    return pedersen_dequantize(chart, section(chart), rho, theta, check)


def inverse_fourier_gstar(B, points) -> np.ndarray:
    """Closed-form ``(2 pi)^-n int exp(i<x|X>) B(X) dX`` for a ``GaussSum`` B."""
    inv = B.fourier(sign=1)
    return inv(np.atleast_2d(np.asarray(points, float))) / (2 * np.pi) ** B.n


def group_log_quotient(spec: LieAlgebraSpec, x, y) -> list:
    """``log(y^-1 x) = (-y) . x`` in exponential coordinates."""
    return bch(spec, [-a for a in y], list(x))
