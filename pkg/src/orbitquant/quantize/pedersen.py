"""λ-Weyl operators and the orbit (Pedersen) calculus for two-dimensional flat orbits.

With the canonical orbit measure ``dgamma = Leb / (2 pi |lam|)`` and the
paired predual measure ``|lam| Leb / (2 pi)``, quantization on the orbit is
exactly the λ-Weyl operator

    [Weyl_lam(g) phi](q0) = (2 pi)^-1 int int exp(i (q0 - q) eta) g(eta, lam (q0 + q) / 2) phi(q) dq deta,

so ``Ped(1) = 1`` and ``Tr Ped(Psi) = int Psi dgamma``.
"""
from __future__ import annotations

import numpy as np

from ..repcalc import Grid1D, GridOperator, RepChart


class DecayError(ValueError):
    pass


def weyl_tables(grid: Grid1D, lam: float):
    """Quadrature nodes: ``eta`` (2M values) and the sheared ``v`` values (2M - 1)."""
    M, L = grid.M, grid.L
    deta = np.pi / (2 * L)
    eta = (np.arange(2 * M) - M) * deta
    v = lam * (-L + np.arange(2 * M - 1) * grid.h / 2)
    return eta, v, deta


def assemble_sheared(T: np.ndarray, M: int) -> np.ndarray:
    """``K[i, k] = T[i + k, i - k]`` with ``T`` indexed by sum and signed difference."""
    i = np.arange(M)[:, None]
    k = np.arange(M)[None, :]
    return T[i + k, (i - k) % T.shape[1]]


def weyl_lambda(gamma, lam: float, grid: Grid1D) -> GridOperator:
    """Matrix of ``Weyl_lam(gamma)``; ``gamma(eta, v)`` must accept broadcast arrays."""
    if lam == 0:
        raise ValueError("lam must be nonzero")
    M = grid.M
    eta, v, deta = weyl_tables(grid, lam)
    G = np.asarray(gamma(eta[None, :], v[:, None]), dtype=complex)
    G = np.broadcast_to(G, (v.size, eta.size))
    # sum_j exp(i d h eta_j) G[s, j] = (-1)^d 2M ifft(G)[s, d]
    T = np.fft.ifft(G, axis=1) * (2 * M)
    d = np.arange(2 * M)
    T *= ((-1.0) ** d)[None, :]
    T *= deta / (2 * np.pi)
    K = assemble_sheared(T, M)
    return GridOperator(K * grid.h, grid, {"lam": lam})


def orbit_symbol(B, chart: RepChart):
    """Restriction of a dual-space symbol ``B(X)`` (last axis = coordinates) to the orbit."""
    n = chart.spec.dim

    def psi(rho, theta):
        if hasattr(B, "eval_coords"):
            coords = [0.0] * n
            coords[chart.q_index] = rho
            coords[chart.p_index] = theta
            for idx, z in zip(chart.central_indices, chart.Z):
                coords[idx] = z
            return np.broadcast_to(B.eval_coords(coords),
                                   np.broadcast_shapes(np.shape(rho), np.shape(theta)))
        rho, theta = np.broadcast_arrays(np.asarray(rho, float), np.asarray(theta, float))
        X = np.zeros(rho.shape + (n,))
        X[..., chart.q_index] = rho
        X[..., chart.p_index] = theta
        for idx, z in zip(chart.central_indices, chart.Z):
            X[..., idx] = z
        return B(X)

    return psi


def pedersen_quantize(chart: RepChart, psi) -> GridOperator:
    """``Ped(psi)`` for ``psi(rho, theta)`` on the predual-dual orbit coordinates."""
    op = weyl_lambda(psi, chart.lam, chart.grid)
    op.meta["Z"] = chart.Z
    return op


def predual_grid(chart: RepChart):
    """Predual nodes ``(y_q, y_p)`` matched to the representation grid."""
    g = chart.grid
    M = g.M
    m = np.arange(-M // 2, M // 2)
    yq = m * g.h
    dp = np.pi / (abs(chart.lam) * g.L)
    yp = (np.arange(M) - M // 2) * dp
    return m, yq, yp, dp


def dep_inverse(chart: RepChart, S: GridOperator, check: float | None = 1e-8):
    """``psi(Y) = Tr[S xi(exp Y)^*]`` on the predual grid; returns ``(yq, yp, psi)``."""
    g = chart.grid
    M = g.M
    mat = S.matrix
    m, yq, yp, _ = predual_grid(chart)
    cols = np.arange(M)[None, :]
    C = mat[(cols - m[:, None]) % M, cols]          # C[m, l] = S[l - m, l]
    E = np.exp(-1j * chart.lam * np.outer(g.nodes, yp))
    psi = (C @ E) * np.exp(0.5j * chart.lam * np.outer(yq, yp))
    if check is not None:
        peak = np.abs(psi).max()
        edge = max(np.abs(psi[[0, -1], :]).max(), np.abs(psi[:, [0, -1]]).max())
        if peak and edge > check * peak:
            raise DecayError(f"trace integrand not decayed on the predual grid ({edge / peak:.1e})")
    return yq, yp, psi


def adapted_fourier(chart: RepChart, psi_orbit, yq, yp, window: float = 12.0, n: int = 256):
    """Oracle ``F(psi)(Y) = int exp(-i<Y|X>) psi dgamma`` by 2D quadrature on a square window."""
    x = np.linspace(-window, window, n, endpoint=False)
    dx = x[1] - x[0]
    R, T = np.meshgrid(x, x, indexing="ij")
    vals = psi_orbit(R, T)
    A = np.exp(-1j * np.outer(yq, x))
    B = np.exp(-1j * np.outer(x, yp))
    return A @ vals @ B * dx * dx / (2 * np.pi * abs(chart.lam))


def pedersen_dequantize(chart: RepChart, S: GridOperator, rho, theta,
                        check: float | None = 1e-8) -> np.ndarray:
    """Orbit symbol of ``S`` on the tensor grid ``rho x theta``."""
    g = chart.grid
    yq, yp, psi = dep_inverse(chart, S, check)
    dp = yp[1] - yp[0]
    A = np.exp(1j * np.outer(np.asarray(rho, float), yq))
    B = np.exp(1j * np.outer(yp, np.asarray(theta, float)))
    return (A @ psi @ B) * (abs(chart.lam) / (2 * np.pi)) * g.h * dp


def sharp_product(chart: RepChart, psi1, psi2, rho, theta, check: float | None = 1e-8):
    """Orbit symbol of ``Ped(psi1) Ped(psi2)`` on ``rho x theta``."""
    S = pedersen_quantize(chart, psi1) @ pedersen_quantize(chart, psi2)
    return pedersen_dequantize(chart, S, rho, theta, check)


def orbit_integral(chart: RepChart, psi, window: float = 12.0, n: int = 512) -> complex:
    """``int psi dgamma`` by tensor quadrature (for callables without a closed form)."""
    x = np.linspace(-window, window, n, endpoint=False)
    dx = x[1] - x[0]
    R, T = np.meshgrid(x, x, indexing="ij")
    return complex(psi(R, T).sum() * dx * dx / (2 * np.pi * abs(chart.lam)))
