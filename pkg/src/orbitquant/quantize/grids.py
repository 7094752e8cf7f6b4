"""Tensor grids and the Fourier transform between the algebra and its dual.

Forward: ``F h(Xi) = int exp(-i <X|Xi>) h(X) dX`` (Lebesgue).
Inverse: ``h(X) = (2 pi)^-n int exp(i <X|Xi>) F(Xi) dXi``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MEMORY_CAP_POINTS = 1 << 24


class AliasingError(ValueError):
    pass


@dataclass(frozen=True)
class GridND:
    half_widths: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.half_widths) != len(self.counts):
            raise ValueError("half_widths and counts differ in length")
        for c in self.counts:
            if c < 2 or c & (c - 1):
                raise ValueError("point counts must be powers of two")
        if int(np.prod(self.counts)) > MEMORY_CAP_POINTS:
            raise ValueError("grid exceeds the configured memory cap")

    @classmethod
    def uniform(cls, n: int, L: float, N: int):
        return cls((float(L),) * n, (int(N),) * n)

    @property
    def ndim(self) -> int:
        return len(self.counts)

    @property
    def spacings(self) -> tuple:
        return tuple(2 * L / N for L, N in zip(self.half_widths, self.counts))

    @property
    def weight(self) -> float:
        return float(np.prod(self.spacings))

    def axis(self, a: int) -> np.ndarray:
        L, N = self.half_widths[a], self.counts[a]
        return -L + (2 * L / N) * np.arange(N)

    def axes(self) -> list:
        return [self.axis(a) for a in range(self.ndim)]

    def points(self) -> np.ndarray:
        """Array of shape ``counts + (ndim,)``."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def flat_points(self) -> np.ndarray:
        return self.points().reshape(-1, self.ndim)

    def dual(self):
        """Grid on which the FFT of samples on this grid lives."""
        return GridND(tuple(np.pi / h for h in self.spacings), self.counts)


def boundary_ratio(values: np.ndarray) -> float:
    """Max magnitude on the outer faces relative to the global max."""
    v = np.abs(values)
    peak = v.max()
    if peak == 0:
        return 0.0
    edge = 0.0
    for a in range(v.ndim):
        edge = max(edge, np.take(v, 0, axis=a).max(), np.take(v, -1, axis=a).max())
    return float(edge / peak)


def _check(values, threshold, what):
    if threshold is not None:
        r = boundary_ratio(values)
        if r > threshold:
            raise AliasingError(f"{what} not resolved: boundary ratio {r:.2e} > {threshold:.0e}")


def fourier_g_gstar(values: np.ndarray, grid: GridND, threshold: float | None = 1e-12):
    """Samples on ``grid`` to samples of the transform on ``grid.dual()``."""
    values = np.asarray(values)
    _check(values, threshold, "input")
    axes = tuple(range(grid.ndim))
    out = np.fft.fftshift(np.fft.fftn(np.fft.ifftshift(values, axes=axes), axes=axes), axes=axes)
    return grid.dual(), out * grid.weight


def inverse_fourier_g_gstar(values: np.ndarray, dual_grid: GridND,
                            threshold: float | None = 1e-12):
    """Inverse of ``fourier_g_gstar``; ``dual_grid`` is the transform-side grid."""
    values = np.asarray(values)
    _check(values, threshold, "transform")
    axes = tuple(range(dual_grid.ndim))
    out = np.fft.fftshift(np.fft.ifftn(np.fft.ifftshift(values, axes=axes), axes=axes), axes=axes)
    base = GridND(tuple(np.pi / h for h in dual_grid.spacings), dual_grid.counts)
    scale = np.prod([N * h for N, h in zip(dual_grid.counts, dual_grid.spacings)])
    return base, out * scale / (2 * np.pi) ** dual_grid.ndim


def fourier_at(values: np.ndarray, grid: GridND, points, sign: int = -1,
               normalize: bool = False) -> np.ndarray:
    """Direct quadrature ``sum exp(sign i <x|w>) values(x) dx`` at arbitrary ``points``.

    Contracts one axis at a time.  ``normalize`` divides by ``(2 pi)^n``.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    acc = np.asarray(values, dtype=complex)[None, ...]
    for a in range(grid.ndim):
        phase = np.exp(sign * 1j * points[:, a:a + 1] * grid.axis(a)[None, :])
        acc = np.einsum("pk,pk...->p...", phase, acc) if a else np.einsum(
            "pk,k...->p...", phase, acc[0])
    out = acc * grid.weight
    if normalize:
        out = out / (2 * np.pi) ** grid.ndim
    return out
