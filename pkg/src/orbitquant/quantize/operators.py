"""Quantizations on G x g* and G x (centre dual), sampled-kernel and apply modes.

Kernels are only ever produced at requested ``(x, y)`` pairs; the Haar measure
in exponential coordinates is Lebesgue, so applying an operator to samples of
``u`` on a tensor grid is a weighted sum over that grid.
"""
from __future__ import annotations

import numpy as np

from ..lie_core import LieAlgebraSpec, bch_numeric
from ..parallel import chunks, ordered_map
from ..repcalc import Grid1D
from ..symbols import GaussPoly, GaussSum
from .grids import GridND, fourier_at
from .groupfourier import ZGrid, _trace_with_reps, w_transform


def log_quotient(spec: LieAlgebraSpec, x, y) -> np.ndarray:
    """``log(y^-1 x) = (-y) . x`` for arrays of points."""
    return bch_numeric(spec, -np.asarray(y, float), np.asarray(x, float))


# ------------------------------------------------------------------ scalar symbols

class SeparableSymbol:
    """``f(x, X) = sum_k a_k(x) B_k(X)``.

    ``a_k`` are callables on G, ``B_k`` dual symbols that know their inverse
    transform (``GaussSum`` or ``CentralBumpSymbol``).
    """

    def __init__(self, terms):
        self.terms = tuple(terms)
        if not self.terms:
            raise ValueError("empty symbol")

    @classmethod
    def from_gauss(cls, f: GaussSum, n: int):
        """Split a ``GaussSum`` in ``2n`` variables ``(x, X)`` into separable terms."""
        if f.n != 2 * n:
            raise ValueError("symbol must have 2n variables")
        terms = []
        for t in f.terms:
            for e, c in t.poly:
                a = GaussPoly.gaussian(t.center[:n], t.prec[:n], t.mod[:n], {e[:n]: c}, t.const)
                B = GaussPoly.gaussian(t.center[n:], t.prec[n:], t.mod[n:], {e[n:]: 1.0})
                terms.append((GaussSum([a]), GaussSum([B])))
        return cls(terms)

    def __call__(self, x, X):
        x = np.asarray(x, float)
        X = np.asarray(X, float)
        return sum(np.asarray(a(x)) * np.asarray(B(X)) for a, B in self.terms)


def _dual_inverse(B, points) -> np.ndarray:
    if hasattr(B, "inverse_fourier"):
        return B.inverse_fourier(points)
    inv = B.fourier(sign=1)
    return inv(np.atleast_2d(points)) / (2 * np.pi) ** B.n


def _x_factor(a, X) -> np.ndarray:
    if a is None:
        return np.ones(len(X))
    return np.asarray(a(X) if callable(a) else a, dtype=complex)


def _as_separable(f, n: int) -> SeparableSymbol:
    if isinstance(f, SeparableSymbol):
        return f
    if isinstance(f, GaussSum) and f.n == 2 * n:
        return SeparableSymbol.from_gauss(f, n)
    if getattr(f, "n", None) == n:
        return SeparableSymbol([(None, f)])
    raise TypeError("unsupported symbol; use SeparableSymbol or sampled_kernel_g_gstar")


def kernel_g_gstar(spec: LieAlgebraSpec, f, xs, ys) -> np.ndarray:
    """``K(x, y) = (2 pi)^-n int exp(i<log(y^-1 x)|X>) f(x, X) dX`` at paired points."""
    xs = np.atleast_2d(np.asarray(xs, float))
    ys = np.atleast_2d(np.asarray(ys, float))
    Zs = log_quotient(spec, xs, ys)
    sym = _as_separable(f, spec.dim)
    out = np.zeros(len(xs), dtype=complex)
    for a, B in sym.terms:
        out += _x_factor(a, xs) * _dual_inverse(B, Zs)
    return out


def sampled_kernel_g_gstar(spec: LieAlgebraSpec, f, xs, ys, dual_grid: GridND) -> np.ndarray:
    """Same kernel for an arbitrary callable ``f(x, X)`` by quadrature on ``dual_grid``."""
    xs = np.atleast_2d(np.asarray(xs, float))
    ys = np.atleast_2d(np.asarray(ys, float))
    Zs = log_quotient(spec, xs, ys)
    pts = dual_grid.points()
    out = np.empty(len(xs), dtype=complex)
    for i, (x, z) in enumerate(zip(xs, Zs)):
        vals = f(np.broadcast_to(x, pts.shape), pts)
        out[i] = fourier_at(vals, dual_grid, z[None, :], sign=1, normalize=True)[0]
    return out


def kernel_group_concrete(spec: LieAlgebraSpec, section, xs, ys, zgrid: ZGrid,
                          grid: Grid1D, x_factor=None) -> np.ndarray:
    """``K(x, y) = sum_Z w(Z) Tr[Sigma(x, Z) xi_Z(y^-1 x)]`` at paired points.

    ``Sigma(x, Z) = a(x) * section(chart)`` with ``a = x_factor`` (default 1);
    sums of such terms are handled by ``op_group_kernel``.
    """
    xs = np.atleast_2d(np.asarray(xs, float))
    ys = np.atleast_2d(np.asarray(ys, float))
    Zs = log_quotient(spec, xs, ys)
    charts = zgrid.charts(grid)
    weights = zgrid.weights()
    if not charts:
        return np.zeros(len(xs), dtype=complex)
    q_idx = charts[0].q_index
    cols = np.stack([np.fft.ifft(np.exp(1j * grid.freqs * zq)) for zq in Zs[:, q_idx]])

    def work(idx):
        acc = np.zeros(len(Zs), dtype=complex)
        for j in idx:
            b = section(charts[j])
            acc += weights[j] * _trace_with_reps(b.matrix, charts[j], Zs, cols)
        return acc

    out = np.zeros(len(Zs), dtype=complex)
    for part in ordered_map(work, chunks(range(len(charts)), 64)):
        out += part
    return _x_factor(x_factor, xs) * out


def op_group_kernel(spec: LieAlgebraSpec, f, xs, ys, zgrid: ZGrid, grid: Grid1D) -> np.ndarray:
    """Group-side kernel of the Pedersen section of the scalar symbol ``f``."""
    sym = _as_separable(f, spec.dim)
    out = np.zeros(len(np.atleast_2d(xs)), dtype=complex)
    for a, B in sym.terms:
        out += kernel_group_concrete(spec, w_transform(B), xs, ys, zgrid, grid, x_factor=a)
    return out


# ------------------------------------------------------------------ apply modes

def _apply(kernel_fn, u_values, x_points, ygrid: GridND, chunk: int = 4096) -> np.ndarray:
    """``sum_y K(x, y) u(y) dy`` on the tensor grid ``ygrid``."""
    Y = ygrid.flat_points()
    u = np.asarray(u_values, dtype=complex).reshape(-1)
    X = np.atleast_2d(np.asarray(x_points, float))
    out = np.zeros(len(X), dtype=complex)
    for i, x in enumerate(X):
        acc = 0j
        for s in range(0, len(Y), chunk):
            ys = Y[s:s + chunk]
            acc += np.dot(kernel_fn(np.broadcast_to(x, ys.shape), ys), u[s:s + chunk])
        out[i] = acc * ygrid.weight
    return out


def op_g_gstar(spec: LieAlgebraSpec, f, u_values, x_points, ygrid: GridND) -> np.ndarray:
    """``[Op(f) u](x)`` with ``u`` sampled on ``ygrid``."""
    return _apply(lambda xs, ys: kernel_g_gstar(spec, f, xs, ys), u_values, x_points, ygrid)


def op_group_concrete(spec: LieAlgebraSpec, f, u_values, x_points, ygrid: GridND,
                      zgrid: ZGrid, grid: Grid1D) -> np.ndarray:
    """Group-side quantization of the Pedersen section of ``f`` applied to ``u``."""
    return _apply(lambda xs, ys: op_group_kernel(spec, f, xs, ys, zgrid, grid),
                  u_values, x_points, ygrid)


def conv_right(spec: LieAlgebraSpec, w, u, x_points, ygrid: GridND) -> np.ndarray:
    """``int u(y) w(y^-1 x) dy`` with callables ``w`` and ``u`` on G."""
    Y = ygrid.flat_points()
    uy = np.asarray(u(Y), dtype=complex)
    X = np.atleast_2d(np.asarray(x_points, float))
    out = np.empty(len(X), dtype=complex)
    for i, x in enumerate(X):
        out[i] = np.dot(np.asarray(w(log_quotient(spec, x[None, :], Y))), uy) * ygrid.weight
    return out
