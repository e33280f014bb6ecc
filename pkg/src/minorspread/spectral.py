"""Adjacency spectra, spread, and the interior-eigenvalue bound for joins.

Dense solves go through LAPACK's symmetric driver by default; a cyclic Jacobi
solver is kept in-repo as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalError, UnsupportedSizeError
from .graph import Graph

DEFAULT_TOL = 1e-10
TIE_TOL = 1e-9
DENSE_CAP = 512


@dataclass(frozen=True)
class Spectrum:
    values: tuple[float, ...]  # descending
    residual: float
    tol: float

    @property
    def lambda1(self) -> float:
        return self.values[0]

    @property
    def lambdan(self) -> float:
        return self.values[-1]

    @property
    def spread(self) -> float:
        return self.values[0] - self.values[-1]

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SpreadReport:
    lambda1: float
    lambdan: float
    spread: float
    residual: float


def join_adjacency(h: Graph, m: int) -> np.ndarray:
    """Adjacency matrix of h ∨ mK1 with h's vertices first; not limited to 62 vertices."""
    if m < 0:
        raise DomainError("m must be non-negative")
    p = h.n
    a = np.zeros((p + m, p + m))
    a[:p, :p] = h.adjacency_matrix()
    a[:p, p:] = 1.0
    a[p:, :p] = 1.0
    return a


def jacobi_eigh(a: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a real symmetric matrix.

    Returns ascending eigenvalues and the matching orthonormal eigenvectors
    (columns). Deterministic: rotations follow the fixed row-cyclic order.
    """
    a = np.array(a, dtype=float, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.abs(a).max(initial=0.0), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.hypot(t, 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        raise NumericalError("Jacobi sweeps exhausted", achieved=float(off))
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def matrix_spectrum(a: np.ndarray, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    """Spectrum of a symmetric matrix with a checked residual."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n > DENSE_CAP:
        raise UnsupportedSizeError(f"dense solves are capped at n={DENSE_CAP}")
    if method == "lapack":
        try:
            w, v = np.linalg.eigh(a)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigh failed: {exc}") from exc
    elif method == "jacobi":
        w, v = jacobi_eigh(a)
    else:
        raise DomainError(f"unknown eigensolver {method!r}")
    residual = float(np.abs(a @ v - v * w).max(initial=0.0))
    lam1 = float(w[-1]) if n else 0.0
    if residual > tol * max(1.0, abs(lam1)):
        raise NumericalError(
            f"eigen-residual {residual:.3e} above tolerance {tol:.1e}", achieved=residual
        )
    return Spectrum(tuple(float(x) for x in w[::-1]), residual, tol)


def spectrum(g: Graph, tol: float = DEFAULT_TOL, method: str = "lapack") -> Spectrum:
    return matrix_spectrum(g.adjacency_matrix(), tol=tol, method=method)


def spread(g: Graph, tol: float = DEFAULT_TOL) -> SpreadReport:
    """λ1 − λn of the adjacency matrix."""
    sp = spectrum(g, tol)
    if g.e == 0:
        return SpreadReport(0.0, 0.0, 0.0, sp.residual)
    return SpreadReport(sp.lambda1, sp.lambdan, sp.spread, sp.residual)


def spectrum_identity_errors(sp: Spectrum, edges: int) -> tuple[float, float]:
    """(|Σλ|, |Σλ² − 2e|): both vanish for an adjacency spectrum."""
    vals = np.array(sp.values)
    return float(abs(vals.sum())), float(abs((vals**2).sum() - 2 * edges))


def weyl_sandwich_check(h: Graph, m: int, tol: float = TIE_TOL) -> list[tuple[int, float, float]]:
    """Interior eigenvalues of h ∨ mK1 that escape [−λ1(h), λ1(h)].

    Returns ``(i, λ_i, bound)`` triples with 1-based index ``i`` in 2..n−1;
    an empty list means the bound holds.
    """
    if m < 1:
        raise DomainError("m must be at least 1")
    bound = matrix_spectrum(h.adjacency_matrix()).lambda1 if h.e else 0.0
    vals = matrix_spectrum(join_adjacency(h, m)).values
    return [
        (i + 1, vals[i], bound)
        for i in range(1, len(vals) - 1)
        if abs(vals[i]) > bound + tol
    ]
