"""Immutable simple graphs stored as adjacency bitrows, plus the graph6 codec,
family constructors and canonical codes used for isomorph rejection."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import DomainError, Graph6Error, UnsupportedSizeError

MAX_ORDER = 62
CANON_LIMIT = 10
GRAPH6_HEADER = ">>graph6<<"

CanonicalCode = bytes


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an int whose bit ``u`` is set iff ``uv`` is an edge. Instances
    are validated on construction and never mutated; edits return new graphs.
    """

    n: int
    adj: tuple[int, ...]
    _edges: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"graph order must be a positive integer, got {self.n!r}")
        if self.n > MAX_ORDER:
            raise UnsupportedSizeError(f"graph order {self.n} exceeds {MAX_ORDER}")
        adj = tuple(int(row) for row in self.adj)
        if len(adj) != self.n:
            raise DomainError(f"expected {self.n} adjacency rows, got {len(adj)}")
        full = (1 << self.n) - 1
        total = 0
        for v, row in enumerate(adj):
            if row & ~full or row < 0:
                raise DomainError(f"row {v} refers to vertices outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"loop at vertex {v}")
            for u in _bits(row):
                if not adj[u] >> v & 1:
                    raise DomainError(f"adjacency not symmetric at ({v}, {u})")
            total += row.bit_count()
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_edges", total // 2)

    # construction -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"graph order must be a positive integer, got {n!r}")
        if n > MAX_ORDER:
            raise UnsupportedSizeError(f"graph order {n} exceeds {MAX_ORDER}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, matrix) -> Graph:
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError("adjacency matrix must be square")
        rows = []
        for i in range(a.shape[0]):
            rows.append(vertex_mask(int(j) for j in np.flatnonzero(a[i])))
        return cls(a.shape[0], tuple(rows))

    # queries ------------------------------------------------------------

    @property
    def e(self) -> int:
        """Number of edges."""
        return self._edges

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def adjacency_matrix(self, dtype=float) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1
        return a

    def component_of(self, v: int, within: int | None = None) -> int:
        """Bitmask of the component containing ``v`` in the subgraph induced by ``within``."""
        allowed = self.full_mask if within is None else within
        seen = 1 << v
        frontier = seen
        while frontier:
            nxt = 0
            for u in _bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & allowed & ~seen
            seen |= frontier
        return seen

    def is_connected(self, within: int | None = None) -> bool:
        allowed = self.full_mask if within is None else within
        if not allowed:
            return False
        start = (allowed & -allowed).bit_length() - 1
        return self.component_of(start, allowed) == allowed

    def components(self) -> list[int]:
        left = self.full_mask
        comps = []
        while left:
            start = (left & -left).bit_length() - 1
            comp = self.component_of(start)
            comps.append(comp)
            left &= ~comp
        return comps

    def bipartition(self) -> tuple[int, int] | None:
        """Return masks (A, B) of a 2-colouring with |A| >= |B| per component, or None."""
        side = [-1] * self.n
        a_mask = b_mask = 0
        for comp in self.components():
            start = (comp & -comp).bit_length() - 1
            side[start] = 0
            stack = [start]
            members = [0, 0]
            while stack:
                u = stack.pop()
                members[side[u]] |= 1 << u
                for w in _bits(self.adj[u]):
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        return None
            big = 0 if members[0].bit_count() >= members[1].bit_count() else 1
            a_mask |= members[big]
            b_mask |= members[1 - big]
        return a_mask, b_mask

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled so that ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in combinations(vertices, 2) if self.has_edge(u, v)]
        return Graph.from_edges(len(vertices), edges)

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("relabelling must be a permutation of 0..n-1")
        return Graph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def with_edge(self, u: int, v: int) -> Graph:
        return Graph.from_edges(self.n, self.edges() + [(u, v)])

    def without_edge(self, u: int, v: int) -> Graph:
        drop = {(min(u, v), max(u, v))}
        return Graph.from_edges(self.n, [e for e in self.edges() if e not in drop])

    def complement(self) -> Graph:
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.e}, g6={emit_graph6(self)!r})"


# graph6 -------------------------------------------------------------------


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line (header optional) with at most 62 vertices."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    base = 0
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
        base = len(GRAPH6_HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", offset=base)
    for i, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", offset=base + i)
    if ord(s[0]) == 126:
        raise Graph6Error(f"graph orders above {MAX_ORDER} are not supported", offset=base)
    n = ord(s[0]) - 63
    if n == 0:
        raise Graph6Error("zero-vertex graphs are not supported", offset=base)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(s) != expected:
        raise Graph6Error(
            f"expected {expected} bytes for n={n}, got {len(s)}",
            offset=base + min(len(s), expected),
        )
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(s[1 + k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    """Encode ``g`` as graph6, without header or newline."""
    if g.n > MAX_ORDER:
        raise UnsupportedSizeError(f"graph6 emission supports n <= {MAX_ORDER}")
    out = [chr(g.n + 63)]
    acc = 0
    k = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            k += 1
            if k == 6:
                out.append(chr(acc + 63))
                acc = k = 0
    if k:
        out.append(chr((acc << (6 - k)) + 63))
    return "".join(out)


# operations ---------------------------------------------------------------


def join(g: Graph, h: Graph) -> Graph:
    """g ∨ h with g's vertices first, then h's shifted by g.n."""
    n = g.n + h.n
    if n > MAX_ORDER:
        raise UnsupportedSizeError(f"join would have {n} > {MAX_ORDER} vertices")
    g_block = (1 << g.n) - 1
    h_block = ((1 << h.n) - 1) << g.n
    rows = [row | h_block for row in g.adj] + [(row << g.n) | g_block for row in h.adj]
    return Graph(n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    if n > MAX_ORDER:
        raise UnsupportedSizeError(f"union would have {n} > {MAX_ORDER} vertices")
    return Graph(n, tuple(g.adj) + tuple(row << g.n for row in h.adj))


def complete(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Mapping[str, int] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.family, tuple(sorted(self.params.items()))))


def _need(params: Mapping[str, int], *names: str) -> list[int]:
    missing = [k for k in names if k not in params]
    if missing:
        raise DomainError(f"missing parameter(s): {', '.join(missing)}")
    values = []
    for k in names:
        v = params[k]
        if not isinstance(v, int) or isinstance(v, bool):
            raise DomainError(f"parameter {k} must be an integer")
        values.append(v)
    return values


def make_family(spec: FamilySpec | str, **params: int) -> Graph:
    """Build a member of a named family.

    Families: ``complete(n)``, ``empty(n)``, ``star(n)`` = K_{1,n-1},
    ``path(n)``, ``cycle(n)``, ``complete_bipartite(a, b)``,
    ``join_star(r, n)`` = K_{r-2} ∨ (n-r+2)K_1, ``ghk(n)`` =
    K_{floor(2n/3)} ∨ ceil(n/3)K_1, and ``petersen``.
    """
    if isinstance(spec, str):
        spec = FamilySpec(spec, params)
    name, p = spec.family, dict(spec.params)
    if name == "complete":
        (n,) = _need(p, "n")
        if n < 1:
            raise DomainError("complete graph needs n >= 1")
        return complete(n)
    if name == "empty":
        (n,) = _need(p, "n")
        if n < 1:
            raise DomainError("empty graph needs n >= 1")
        return empty(n)
    if name == "star":
        (n,) = _need(p, "n")
        if n < 2:
            raise DomainError("star needs n >= 2")
        return join(complete(1), empty(n - 1))
    if name == "path":
        (n,) = _need(p, "n")
        if n < 1:
            raise DomainError("path needs n >= 1")
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if name == "cycle":
        (n,) = _need(p, "n")
        if n < 3:
            raise DomainError("cycle needs n >= 3")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if name == "complete_bipartite":
        a, b = _need(p, "a", "b")
        if a < 1 or b < 1:
            raise DomainError("complete bipartite graph needs a, b >= 1")
        return join(empty(a), empty(b))
    if name == "join_star":
        r, n = _need(p, "r", "n")
        if not 3 <= r <= n:
            raise DomainError(f"join_star needs 3 <= r <= n, got r={r}, n={n}")
        return join(complete(r - 2), empty(n - r + 2))
    if name == "ghk":
        (n,) = _need(p, "n")
        if n < 2:
            raise DomainError("ghk needs n >= 2")
        return join(complete(2 * n // 3), empty(-(-n // 3)))
    if name == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, outer + spokes + inner)
    raise DomainError(f"unknown family {name!r}")


def join_star_edges(r: int, n: int) -> int:
    return (r - 2) * (n - r + 2) + (r - 2) * (r - 3) // 2


# canonical codes ----------------------------------------------------------


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    # Split cells by neighbour counts into each splitter cell until equitable.
    # Cell order is label-independent, so leaves of the search tree are too.
    while True:
        for splitter in cells:
            smask = vertex_mask(splitter)
            out: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) > 1:
                    split = True
                    out.extend(groups[k] for k in sorted(groups))
                else:
                    out.append(cell)
            if split:
                cells = out
                break
        else:
            return cells


def _code_of(adj: tuple[int, ...], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for i in range(n):
        row = adj[order[i]]
        for j in range(i + 1, n):
            code = code << 1 | (row >> order[j] & 1)
    return code


def canonical_labeling(g: Graph) -> tuple[CanonicalCode, list[int]]:
    """Canonical code and an ordering (position -> original vertex) attaining it.

    The code is the minimum upper-triangle bitstring over all vertex orderings
    reachable by individualisation-refinement from the degree partition. Twin
    vertices are tried once per cell since swapping them is an automorphism.
    """
    if g.n > CANON_LIMIT:
        raise UnsupportedSizeError(f"canonical codes are limited to n <= {CANON_LIMIT}")
    adj = g.adj
    degs = g.degrees()
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(degs[v], []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]

    best_code = -1
    best_order: list[int] = []

    def visit(cells: list[list[int]]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [c[0] for c in cells]
            code = _code_of(adj, order)
            if best_code < 0 or code < best_code:
                best_code, best_order = code, order
            return
        tried: list[int] = []
        for v in cell:
            if any((adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u)) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            visit(cells[:idx] + [[v], rest] + cells[idx + 1:])

    visit(start)
    nbits = g.n * (g.n - 1) // 2
    body = best_code.to_bytes((nbits + 7) // 8, "big") if nbits else b""
    return bytes([g.n]) + body, best_order


def canonical_code(g: Graph) -> CanonicalCode:
    return canonical_labeling(g)[0]


def canonical_form(g: Graph) -> Graph:
    """The representative of g's isomorphism class with canonical vertex order."""
    _, order = canonical_labeling(g)
    perm = [0] * g.n
    for pos, v in enumerate(order):
        perm[v] = pos
    return g.relabel(perm)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.e != h.e or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)


# set utilities ------------------------------------------------------------


def intersection_lower_bound(sizes: Sequence[int], union_size: int) -> int:
    """Σ|A_i| − (k−1)|∪A_i|, a lower bound on |A_1 ∩ ... ∩ A_k| (possibly negative)."""
    if not sizes:
        raise DomainError("need at least one set")
    return sum(sizes) - (len(sizes) - 1) * union_size
