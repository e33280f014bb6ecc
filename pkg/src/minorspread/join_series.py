"""Extreme eigenvalues of joins H ∨ mK1 via the secular equation and its
Laurent expansion in 1/λ.

If y is an eigenvector of H ∨ mK1 that equals 1 on the m independent vertices,
its restriction to H is m (λI − A_H)^{-1} 1, and λ must satisfy

    λ = m Σ_j β_j / (λ − μ_j),        β_j = (v_j · 1)^2,

over the eigenpairs (μ_j, v_j) of A_H. Expanding the resolvent for |λ| > λ1(A_H)
gives λ² = γ² + Σ_{k≥1} a_k / λ^k with γ² = p m, a_k = m ℓ_k, ℓ_k = 1ᵀ A_H^k 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericalError, SeriesDivergenceError
from .graph import Graph
from .spectral import DEFAULT_TOL, matrix_spectrum

DEFAULT_ORDER = 8
_CLUSTER_TOL = 1e-9
_BETA_TOL = 1e-10
_POLE_GUARD = 1e-13


@dataclass(frozen=True)
class JoinModel:
    """H ∨ mK1 described by its base graph and the size of the independent part."""

    H: Graph
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"m must be a positive integer, got {self.m!r}")

    @classmethod
    def extremal(cls, r: int, n: int) -> JoinModel:
        """K_{r−2} ∨ (n−r+2)K1."""
        from .graph import complete

        if not 3 <= r <= n:
            raise DomainError(f"need 3 <= r <= n, got r={r}, n={n}")
        return cls(complete(r - 2), n - r + 2)

    @property
    def p(self) -> int:
        return self.H.n

    @property
    def order(self) -> int:
        return self.p + self.m

    @property
    def gamma_sq(self) -> int:
        return self.p * self.m

    @property
    def gamma(self) -> float:
        return math.sqrt(self.p * self.m)


@dataclass(frozen=True)
class MomentVector:
    ell: tuple[int, ...]
    m: int

    @property
    def a(self) -> tuple[int, ...]:
        return tuple(self.m * x for x in self.ell)


@dataclass(frozen=True)
class SeriesCoefficients:
    c1: Fraction
    c2: Fraction


def gamma(r: int, n: int) -> float:
    """√((r−2)(n−r+2)), the spectral radius of K_{r−2, n−r+2}."""
    return math.sqrt((r - 2) * (n - r + 2))


def moments(H: Graph, K: int, m: int = 1) -> MomentVector:
    """ℓ_0..ℓ_K with ℓ_k = 1ᵀ A_H^k 1, in exact integer arithmetic."""
    if K < 0:
        raise DomainError("K must be non-negative")
    nbrs = [H.neighbors(v) for v in range(H.n)]
    x = [1] * H.n
    ell = [H.n]
    for _ in range(K):
        x = [sum(x[u] for u in nbrs[v]) for v in range(H.n)]
        ell.append(sum(x))
    return MomentVector(tuple(ell), m)


def series_coefficients(model: JoinModel) -> SeriesCoefficients:
    """c1 = ℓ1/(2p) and c2 = −3ℓ1²/(8p²) + ℓ2/(2p) as exact fractions."""
    p = model.p
    _, l1, l2 = moments(model.H, 2).ell
    c1 = Fraction(l1, 2 * p)
    c2 = Fraction(-3 * l1 * l1, 8 * p * p) + Fraction(l2, 2 * p)
    return SeriesCoefficients(c1, c2)


# secular equation ---------------------------------------------------------


@dataclass(frozen=True)
class _Cluster:
    mu: float
    beta: float
    mult: int


def _clusters(H: Graph) -> list[_Cluster]:
    w, v = np.linalg.eigh(H.adjacency_matrix())
    overlap = v.T @ np.ones(H.n)
    out: list[_Cluster] = []
    i = 0
    while i < len(w):
        j = i
        while j + 1 < len(w) and w[j + 1] - w[i] <= _CLUSTER_TOL * max(1.0, abs(w[i])):
            j += 1
        mu = float(np.mean(w[i : j + 1]))
        beta = float(np.sum(overlap[i : j + 1] ** 2))
        out.append(_Cluster(mu, beta, j - i + 1))
        i = j + 1
    return out


def _phi(lam: float, m: int, mus: np.ndarray, betas: np.ndarray) -> tuple[float, float]:
    d = lam - mus
    q = betas / d
    return lam - m * float(q.sum()), 1.0 + m * float((q / d).sum())


def _root_in(lo: float, hi: float, m: int, mus, betas, tol: float, max_iter: int = 200) -> float:
    """Unique root of the increasing secular function on (lo, hi)."""
    flo, _ = _phi(lo, m, mus, betas)
    fhi, _ = _phi(hi, m, mus, betas)
    if flo > 0:
        return lo
    if fhi < 0:
        return hi
    eps = np.finfo(float).eps
    x = 0.5 * (lo + hi)
    f = flo
    for _ in range(max_iter):
        f, df = _phi(x, m, mus, betas)
        if f == 0.0:
            return x
        if f < 0:
            lo = x
        else:
            hi = x
        step = x - f / df
        # Newton when it stays inside the bracket, bisection otherwise.
        nxt = step if lo < step < hi else 0.5 * (lo + hi)
        if abs(nxt - x) <= 2 * eps * max(1.0, abs(x)) or hi - lo <= 4 * eps * max(1.0, abs(x)):
            # Near a pole φ is steep; |φ/φ'| measures the distance to the root.
            if min(abs(f), abs(f) / df) <= tol * max(1.0, abs(x)):
                return nxt
            break
        x = nxt
    raise NumericalError(
        "secular root did not converge", achieved=abs(f), state={"bracket": (lo, hi)}
    )


def secular_roots(model: JoinModel, tol: float = DEFAULT_TOL) -> list[float]:
    """All roots of λ = m Σ β_j/(λ − μ_j), ascending; one per pole gap plus two outer roots."""
    clusters = [c for c in _clusters(model.H) if c.beta > _BETA_TOL]
    mus = np.array([c.mu for c in clusters])
    betas = np.array([c.beta for c in clusters])
    m = model.m
    reach = math.sqrt(m * model.p) + 1.0
    roots = []
    first, last = float(mus[0]), float(mus[-1])
    guard = lambda mu: _POLE_GUARD * max(1.0, abs(mu))  # noqa: E731
    roots.append(_root_in(first - abs(first) - reach, first - guard(first), m, mus, betas, tol))
    for a, b in zip(mus[:-1], mus[1:]):
        roots.append(_root_in(a + guard(a), b - guard(b), m, mus, betas, tol))
    roots.append(_root_in(last + guard(last), last + abs(last) + reach, m, mus, betas, tol))
    return roots


def join_spectrum(model: JoinModel, tol: float = DEFAULT_TOL) -> list[float]:
    """Full spectrum of H ∨ mK1, descending, assembled without forming the join.

    Secular roots cover eigenvectors constant on the independent part; the rest
    are eigenvalues of A_H orthogonal to 1 (zero on the independent part) and
    0 with multiplicity m−1 (zero on H, summing to 0 on the independent part).
    """
    vals = list(secular_roots(model, tol))
    for c in _clusters(model.H):
        vals.extend([c.mu] * (c.mult - (1 if c.beta > _BETA_TOL else 0)))
    vals.extend([0.0] * (model.m - 1))
    return sorted(vals, reverse=True)


def secular_extremes(model: JoinModel, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """(λ1, λn) of H ∨ mK1.

    λ1 is always the largest secular root. λn is the smallest secular root
    unless an eigenvalue of A_H with eigenvector orthogonal to 1 lies lower,
    as for K_{a,a} ∨ mK1 with m < a.
    """
    roots = secular_roots(model, tol)
    lo = roots[0]
    for c in _clusters(model.H):
        if c.beta <= _BETA_TOL or c.mult > 1:
            lo = min(lo, c.mu)
    if model.m > 1:
        lo = min(lo, 0.0)
    return roots[-1], lo


# truncated Laurent series -------------------------------------------------


def _lambda1_of(H: Graph) -> float:
    return matrix_spectrum(H.adjacency_matrix()).lambda1 if H.e else 0.0


def truncated_series_extremes(
    model: JoinModel, K: int = DEFAULT_ORDER, tol: float = 1e-13, max_iter: int = 100
) -> tuple[float, float]:
    """Roots near ±γ of λ² − γ² − Σ_{k=1..K} a_k λ^{−k}, by safeguarded Newton."""
    if K < 0:
        raise DomainError("K must be non-negative")
    rho = _lambda1_of(model.H)
    if not model.m > model.p * rho * rho:
        raise SeriesDivergenceError(
            f"series divergence region: need m > p·λ1(H)^2 = {model.p * rho * rho:.6g}, got m={model.m}"
        )
    a = [float(x) for x in moments(model.H, K, model.m).a]
    g2 = float(model.gamma_sq)

    def F(lam: float) -> tuple[float, float]:
        val, der = lam * lam - g2, 2.0 * lam
        inv = 1.0 / lam
        power = inv
        for k in range(1, K + 1):
            val -= a[k] * power
            power *= inv
            der += k * a[k] * power
        return val, der

    def solve(seed: float) -> float:
        x = seed
        f, df = F(x)
        for _ in range(max_iter):
            if f == 0.0:
                return x
            step = f / df
            t = 1.0
            while True:
                cand = x - t * step
                if abs(cand) > rho and np.sign(cand) == np.sign(seed):
                    fc, dfc = F(cand)
                    if abs(fc) < abs(f) or t < 1e-8:
                        break
                t *= 0.5
                if t < 1e-12:
                    raise NumericalError("series Newton stalled", achieved=abs(f), state=x)
            moved = abs(cand - x)
            x, f, df = cand, fc, dfc
            if moved <= tol * max(1.0, abs(x)):
                return x
        raise NumericalError("series Newton did not converge", achieved=abs(f), state=x)

    gam = math.sqrt(g2)
    return solve(gam), solve(-gam)


# closed forms and the coefficient comparison ------------------------------


def second_order_spread(model: JoinModel) -> float:
    """2γ + 2c2/γ."""
    c2 = series_coefficients(model).c2
    g = model.gamma
    return 2.0 * g + 2.0 * float(c2) / g


def closed_form_extremal_spread(r: int, n: int) -> float:
    """√(4(r−2)(n−r+2) + (r−3)²), the spread of K_{r−2} ∨ (n−r+2)K1."""
    if not isinstance(r, int) or not isinstance(n, int) or not 3 <= r <= n:
        raise DomainError(f"need integers 3 <= r <= n, got r={r}, n={n}")
    return math.sqrt(4 * (r - 2) * (n - r + 2) + (r - 3) ** 2)


def extremal_join_extremes(r: int, n: int) -> tuple[float, float]:
    """((r−3) ± √(4γ² + (r−3)²))/2 from the 2×2 quotient of K_{r−2} ∨ (n−r+2)K1."""
    root = closed_form_extremal_spread(r, n)
    return 0.5 * (r - 3 + root), 0.5 * (r - 3 - root)


def zagreb_index(H: Graph) -> int:
    """Σ d(v)², equal to ℓ2."""
    return sum(d * d for d in H.degrees())


def zagreb_bound(H: Graph) -> Fraction:
    """e(2e/(n−1) + n − 2), an upper bound on Σ d(v)² for any graph of order n ≥ 2."""
    if H.n < 2:
        raise DomainError("bound needs at least two vertices")
    e, n = H.e, H.n
    return e * (Fraction(2 * e, n - 1) + n - 2)


def c2_f(r: int, ell1: int | Fraction) -> Fraction:
    """f(ℓ1) = (5−r)/(4(r−2)(r−3)) ℓ1² + (r−4)/2 ℓ1."""
    ell1 = Fraction(ell1)
    return Fraction(5 - r, 4 * (r - 2) * (r - 3)) * ell1 * ell1 + Fraction(r - 4, 2) * ell1


def f_increasing_up_to(r: int) -> Fraction | None:
    """Right end of the interval [0, ·] where f is increasing; None means unbounded."""
    if r in (4, 5):
        return None
    return Fraction((r - 2) * (r - 3) * (r - 4), r - 5)


def c2_upper_bound_chain(H: Graph, r: int) -> tuple[Fraction, Fraction, Fraction]:
    """(c2 of H, f(ℓ1)/(2(r−2)), f(ℓ1)) for H of order r−2.

    The middle value comes from bounding ℓ2 with the Zagreb bound; it never
    falls below c2 and reaches (r−3)²/8 only at ℓ1 = (r−2)(r−3), i.e. H = K_{r−2}.
    """
    if r < 4:
        raise DomainError("the comparison needs r >= 4")
    if H.n != r - 2:
        raise DomainError(f"H must have order r-2 = {r - 2}, got {H.n}")
    c2 = series_coefficients(JoinModel(H, 1)).c2
    ell1 = 2 * H.e
    f = c2_f(r, ell1)
    return c2, f / (2 * (r - 2)), f


def tait_spectral_radius_bound(r: int, n: int) -> float:
    """½(r−3 + √(4(r−2)(n−r+2) + (r−3)²))."""
    return extremal_join_extremes(r, n)[0]
