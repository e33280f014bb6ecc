"""Exact clique- and biclique-minor detection by branch-set search.

A K_r minor is a family of r disjoint vertex sets ("bags"), each inducing a
connected subgraph, with an edge between every pair of bags. The search assigns
vertices, in descending-degree order, to a bag or to no bag and prunes on bag
reachability and on whether each missing cross edge can still appear.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .errors import DomainError, UnsupportedSizeError
from .graph import Graph, _bits, canonical_code, canonical_form

SEARCH_CAP = 11


@dataclass(frozen=True)
class MinorCertificate:
    """Branch sets witnessing a minor.

    ``kind`` is ``"clique"`` (``shape == (r,)``) or ``"biclique"``
    (``shape == (s, t)``; the first ``s`` sets form the left side).
    """

    kind: str
    shape: tuple[int, ...]
    branch_sets: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "clique":
            out["r"] = self.shape[0]
        else:
            out["s"], out["t"] = self.shape
        out["branch_sets"] = [list(b) for b in self.branch_sets]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> MinorCertificate:
        kind = data["kind"]
        if kind == "clique":
            shape: tuple[int, ...] = (int(data["r"]),)
        elif kind == "biclique":
            shape = (int(data["s"]), int(data["t"]))
        else:
            raise DomainError(f"unknown certificate kind {kind!r}")
        sets = tuple(tuple(int(v) for v in b) for b in data["branch_sets"])
        return cls(kind, shape, sets)

    @classmethod
    def from_json(cls, text: str) -> MinorCertificate:
        return cls.from_dict(json.loads(text))


def verify_certificate(g: Graph, cert: MinorCertificate) -> bool:
    """Check a certificate against g using only plain set and BFS logic."""
    try:
        kind, shape, sets = cert.kind, tuple(cert.shape), [list(b) for b in cert.branch_sets]
        if kind == "clique":
            if len(shape) != 1 or len(sets) != shape[0]:
                return False
            pairs = list(combinations(range(len(sets)), 2))
        elif kind == "biclique":
            if len(shape) != 2 or len(sets) != shape[0] + shape[1]:
                return False
            s = shape[0]
            pairs = [(i, j) for i in range(s) for j in range(s, len(sets))]
        else:
            return False
        seen: set[int] = set()
        for b in sets:
            if not b:
                return False
            for v in b:
                if not isinstance(v, int) or not 0 <= v < g.n or v in seen:
                    return False
                seen.add(v)
        nbrs = [set(g.neighbors(v)) for v in range(g.n)]
        for b in sets:
            members = set(b)
            reached = {b[0]}
            stack = [b[0]]
            while stack:
                u = stack.pop()
                for w in nbrs[u] & members:
                    if w not in reached:
                        reached.add(w)
                        stack.append(w)
            if reached != members:
                return False
        for i, j in pairs:
            if not any(nbrs[u] & set(sets[j]) for u in sets[i]):
                return False
        return True
    except (TypeError, ValueError, IndexError, KeyError, AttributeError):
        return False


# search -------------------------------------------------------------------


def _check_size(g: Graph) -> None:
    if g.n > SEARCH_CAP:
        raise UnsupportedSizeError(f"exact minor search is capped at n <= {SEARCH_CAP}")


def _find_clique(g: Graph, r: int) -> list[int] | None:
    def grow(chosen: list[int], cand: int) -> list[int] | None:
        if len(chosen) == r:
            return chosen
        if len(chosen) + cand.bit_count() < r:
            return None
        for v in _bits(cand):
            found = grow(chosen + [v], cand & g.adj[v] & ~((2 << v) - 1))
            if found:
                return found
        return None

    return grow([], g.full_mask)


def clique_number(g: Graph) -> int:
    w = 1
    while _find_clique(g, w + 1):
        w += 1
    return w


class _ModelSearch:
    def __init__(self, g: Graph, groups: Sequence[int], required: Sequence[tuple[int, int]]):
        self.g = g
        n = g.n
        self.order = sorted(range(n), key=lambda v: (-g.degree(v), v))
        nb = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            nb[mask] = nb[mask ^ low] | g.adj[low.bit_length() - 1]
        self.nb = nb
        self.k = sum(groups)
        starts = []
        acc = 0
        for size in groups:
            starts.append(acc)
            acc += size
        self.groups = list(zip(starts, groups))
        self.partners = [0] * self.k
        for i, j in required:
            self.partners[i] |= 1 << j
            self.partners[j] |= 1 << i
        self.required = list(required)

    def _component(self, start_mask: int, allowed: int) -> int:
        seen = start_mask & -start_mask
        frontier = seen
        nb = self.nb
        while frontier:
            frontier = nb[frontier] & allowed & ~seen
            seen |= frontier
        return seen

    def _complete(self, bags: list[int]) -> bool:
        nb = self.nb
        for b in bags:
            if not b or self._component(b, b) != b:
                return False
        return all(nb[bags[i]] & bags[j] for i, j in self.required)

    def _feasible(self, bags: list[int], unassigned: int) -> bool:
        nb = self.nb
        closure = [0] * self.k
        unopened = 0
        for i, b in enumerate(bags):
            if not b:
                unopened += 1
                continue
            comp = self._component(b, b | unassigned)
            if b & ~comp:
                return False
            closure[i] = comp
        if unopened > unassigned.bit_count():
            return False
        for i, j in self.required:
            bi, bj = bags[i], bags[j]
            if bi and bj:
                if not nb[bi] & bj and not nb[closure[i]] & closure[j]:
                    return False
            elif bi or bj:
                c = closure[i] if bi else closure[j]
                if not (nb[c] | c) & unassigned:
                    return False
        return True

    def run(self) -> list[int] | None:
        bags = [0] * self.k
        opened = [0] * len(self.groups)
        order = self.order
        n = len(order)
        adj = self.g.adj

        def dfs(idx: int, unassigned: int) -> list[int] | None:
            if all(bags) and self._complete(bags):
                return list(bags)
            if idx == n or not self._feasible(bags, unassigned):
                return None
            v = order[idx]
            rest = unassigned & ~(1 << v)
            # Bags already touching v first, then the others, then a fresh bag, then skip.
            live = [i for i in range(self.k) if bags[i]]
            live.sort(key=lambda i: 0 if adj[v] & bags[i] else 1)
            for i in live:
                bags[i] |= 1 << v
                found = dfs(idx + 1, rest)
                bags[i] &= ~(1 << v)
                if found:
                    return found
            for gi, (start, size) in enumerate(self.groups):
                if opened[gi] < size:
                    i = start + opened[gi]
                    bags[i] = 1 << v
                    opened[gi] += 1
                    found = dfs(idx + 1, rest)
                    opened[gi] -= 1
                    bags[i] = 0
                    if found:
                        return found
            return dfs(idx + 1, rest)

        return dfs(0, self.g.full_mask)


def _sets_from_masks(masks: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(_bits(m)) for m in masks)


def has_clique_minor(g: Graph, r: int) -> tuple[bool, MinorCertificate | None]:
    """Whether g has a K_r minor, with branch sets when it does."""
    if r < 1:
        raise DomainError("r must be at least 1")
    _check_size(g)
    if r > g.n or g.e < comb(r, 2):
        return False, None
    clique = _find_clique(g, r)
    if clique:
        return True, MinorCertificate("clique", (r,), tuple((v,) for v in clique))
    masks = _ModelSearch(g, [r], list(combinations(range(r), 2))).run()
    if masks is None:
        return False, None
    return True, MinorCertificate("clique", (r,), _sets_from_masks(masks))


def hadwiger_number(g: Graph) -> tuple[int, MinorCertificate]:
    """Largest r such that g has a K_r minor, with its certificate."""
    _check_size(g)
    best = MinorCertificate("clique", (1,), ((0,),))
    r = 2
    while True:
        found, cert = has_clique_minor(g, r)
        if not found:
            return r - 1, best
        best = cert
        r += 1


def has_biclique_minor(g: Graph, s: int, t: int) -> tuple[bool, MinorCertificate | None]:
    """Whether g has a K_{s,t} minor; left bags come first in the certificate."""
    if s < 1 or t < 1:
        raise DomainError("s and t must be at least 1")
    _check_size(g)
    if s + t > g.n or g.e < s * t:
        return False, None
    required = [(i, j) for i in range(s) for j in range(s, s + t)]
    masks = _ModelSearch(g, [s, t], required).run()
    if masks is None:
        return False, None
    return True, MinorCertificate("biclique", (s, t), _sets_from_masks(masks))


# independent oracle -------------------------------------------------------


def contract(g: Graph, u: int, v: int) -> Graph:
    """G/uv: merge v into u and drop v; vertices above v shift down by one."""
    if not g.has_edge(u, v):
        raise DomainError(f"({u}, {v}) is not an edge")
    keep = [w for w in range(g.n) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    edges = set()
    for a, b in g.edges():
        a2 = u if a == v else a
        b2 = u if b == v else b
        if a2 != b2:
            x, y = index[a2], index[b2]
            edges.add((min(x, y), max(x, y)))
    return Graph.from_edges(g.n - 1, edges)


_CLOSURE_MEMO: dict[bytes, int] = {}


def _closure_hadwiger(code: bytes, g: Graph) -> int:
    if code not in _CLOSURE_MEMO:
        best = clique_number(g)
        for u, v in g.edges():
            h = canonical_form(contract(g, u, v))
            best = max(best, _closure_hadwiger(canonical_code(h), h))
        _CLOSURE_MEMO[code] = best
    return _CLOSURE_MEMO[code]


def contraction_hadwiger(g: Graph) -> int:
    """Hadwiger number by exploring every graph reachable through edge contractions.

    Slow and obviously correct: a K_r minor exists iff some contraction of g
    has clique number at least r. Results are memoised per isomorphism class.
    """
    h = canonical_form(g)
    return _closure_hadwiger(canonical_code(h), h)


# edge bounds --------------------------------------------------------------


def mader_exact_form(r: int, n: int) -> int:
    """(r−2)n − C(r−1, 2): edge count of K_{r−2} ∨ (n−r+2)K_1."""
    return (r - 2) * n - comb(r - 1, 2)


def thomason_constant(r: int) -> int:
    """Bipartite edge-bound constant 4^r (r−1)! (r−1), i.e. Thomason at s = t = r−1."""
    return 4**r * factorial(r - 1) * (r - 1)


@dataclass(frozen=True)
class EdgeBoundReport:
    r: int
    n: int
    e: int
    mader_linear_bound: Fraction  # e/n, the smallest C with e <= C n for this graph
    mader_exact_form: int | None  # only for r <= 7
    bipartite_bound: int | None  # only for bipartite graphs
    small_side: int | None
    mader_exact_ok: bool | None
    bipartite_ok: bool | None

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "n": self.n,
            "e": self.e,
            "edges_per_vertex": float(self.mader_linear_bound),
            "mader_exact_form": self.mader_exact_form,
            "mader_exact_ok": self.mader_exact_ok,
            "bipartite_bound": self.bipartite_bound,
            "small_side": self.small_side,
            "bipartite_ok": self.bipartite_ok,
        }


def edge_bound_report(g: Graph, r: int) -> EdgeBoundReport:
    """Compare e(g) against the K_r-minor-free edge bounds."""
    if r < 3:
        raise DomainError("r must be at least 3")
    n, e = g.n, g.e
    exact = mader_exact_form(r, n) if r <= 7 else None
    parts = g.bipartition()
    if parts is not None:
        k = parts[1].bit_count()
        bip = (r - 2) * n + thomason_constant(r) * k
    else:
        k = bip = None
    return EdgeBoundReport(
        r=r,
        n=n,
        e=e,
        mader_linear_bound=Fraction(e, n),
        mader_exact_form=exact,
        bipartite_bound=bip,
        small_side=k,
        mader_exact_ok=None if exact is None else e <= exact,
        bipartite_ok=None if bip is None else e <= bip,
    )
