"""Exhaustive spread maximisation over K_r-minor-free graphs.

Small orders are enumerated internally (one graph per isomorphism class);
larger orders are read from graph6 files produced by an external generator
such as nauty's ``geng``.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, Graph6Error, MinorSpreadError, UnsupportedSizeError
from .graph import (
    CANON_LIMIT,
    Graph,
    canonical_code,
    canonical_form,
    canonical_labeling,
    emit_graph6,
    make_family,
    parse_graph6,
    vertex_mask,
)
from .join_series import closed_form_extremal_spread, gamma
from .minor import has_clique_minor, mader_exact_form
from .spectral import TIE_TOL, spectrum

log = logging.getLogger(__name__)

ENUM_LIMIT = 7


# enumeration ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple[tuple[bytes, Graph], ...]:
    if n == 1:
        g = Graph(1, (0,))
        return ((canonical_code(g), g),)
    found: dict[bytes, Graph] = {}
    for _, base in _classes(n - 1):
        for nbhd in range(1 << (n - 1)):
            rows = list(base.adj) + [nbhd]
            for v in range(n - 1):
                if nbhd >> v & 1:
                    rows[v] |= 1 << (n - 1)
            g = Graph(n, tuple(rows))
            code, order = canonical_labeling(g)
            if code not in found:
                perm = [0] * n
                for pos, v in enumerate(order):
                    perm[v] = pos
                found[code] = g.relabel(perm)
    return tuple(sorted(found.items()))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on n vertices, ordered by canonical code.

    Built by adding a vertex with every possible neighbourhood to each class on
    n−1 vertices. Orders above 7 must come from an external generator.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError("n must be a positive integer")
    if n > ENUM_LIMIT:
        raise UnsupportedSizeError(
            f"internal enumeration stops at n={ENUM_LIMIT}; generate larger families "
            f"externally (e.g. `geng {n} > graphs{n}.g6`) and use ingest_graph6_stream"
        )
    for _, g in _classes(n):
        yield g


def ingest_graph6_stream(
    path: str | Path, strict: bool = False, problems: list[tuple[int, str]] | None = None
) -> Iterator[Graph]:
    """Graphs from a graph6 file in file order.

    Blank lines and a leading ``>>graph6<<`` header are accepted. Malformed lines
    raise :class:`Graph6Error` carrying the 1-based line number when ``strict``;
    otherwise they are logged, appended to ``problems`` and skipped.
    """
    with open(path, encoding="ascii", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield parse_graph6(line)
            except Graph6Error as exc:
                if strict:
                    raise Graph6Error(exc.message, offset=exc.offset, line=lineno) from exc
                log.warning("skipping line %d: %s", lineno, exc)
                if problems is not None:
                    problems.append((lineno, str(exc)))


# structure ------------------------------------------------------------------


@dataclass(frozen=True)
class LUVPartition:
    L: tuple[int, ...]
    U: tuple[int, ...]
    V: tuple[int, ...]


def luv_partition(g: Graph, L: Iterable[int]) -> LUVPartition:
    """U: vertices outside L adjacent to all of L; V: everything else outside L."""
    L = tuple(sorted(set(L)))
    if any(not 0 <= v < g.n for v in L):
        raise DomainError("L must be a subset of the vertex set")
    lmask = vertex_mask(L)
    U, V = [], []
    for v in range(g.n):
        if lmask >> v & 1:
            continue
        (U if g.adj[v] & lmask == lmask else V).append(v)
    return LUVPartition(L, tuple(U), tuple(V))


def structure_check(g: Graph, r: int) -> tuple[bool, tuple[int, ...] | None]:
    """Whether g = g[L] ∨ (n−r+2)K1 for some (r−2)-set L; returns the first such L."""
    k = r - 2
    if k < 1 or g.n < k:
        raise DomainError(f"need 1 <= r-2 <= n, got r={r}, n={g.n}")
    for L in combinations(range(g.n), k):
        lmask = vertex_mask(L)
        rest = g.full_mask & ~lmask
        if all(g.adj[v] & lmask == lmask and not g.adj[v] & rest for v in range(g.n) if rest >> v & 1):
            return True, L
    return False, None


def high_degree_set(g: Graph, size: int) -> tuple[int, ...]:
    """The ``size`` vertices of largest degree, ties broken by index."""
    return tuple(sorted(sorted(range(g.n), key=lambda v: (-g.degree(v), v))[:size]))


def luv_observations(g: Graph, L: Iterable[int]) -> dict[str, bool]:
    """The structural facts an extremal graph satisfies for its L/U/V split.

    ``u_independent``: no edges inside U. ``v_one_u_neighbour``: each vertex of
    V has at most one neighbour in U. ``v_components_split``: two vertices of V
    attached to different U-vertices lie in different components of g[V].
    """
    part = luv_partition(g, L)
    umask, vmask = vertex_mask(part.U), vertex_mask(part.V)
    u_indep = all(not g.adj[u] & umask for u in part.U)
    one_u = all((g.adj[v] & umask).bit_count() <= 1 for v in part.V)
    split = True
    attached = [v for v in part.V if (g.adj[v] & umask).bit_count() == 1]
    for p, q in combinations(attached, 2):
        if g.adj[p] & umask != g.adj[q] & umask and g.component_of(p, vmask) >> q & 1:
            split = False
            break
    return {"u_independent": u_indep, "v_one_u_neighbour": one_u, "v_components_split": split}


def rewire_to_join(g: Graph, L: Iterable[int]) -> Graph:
    """Strip every V-vertex of its edges into U ∪ V and join it to all of L.

    When g[U] has no edges the result is a spanning subgraph of
    K_{|L|} ∨ (n−|L|)K1 on the same labels.
    """
    part = luv_partition(g, L)
    lmask = vertex_mask(part.L)
    rows = list(g.adj)
    for v in part.V:
        for u in range(g.n):
            if rows[v] >> u & 1 and not lmask >> u & 1:
                rows[v] &= ~(1 << u)
                rows[u] &= ~(1 << v)
        for u in part.L:
            rows[v] |= 1 << u
            rows[u] |= 1 << v
    return Graph(g.n, tuple(rows))


# search ---------------------------------------------------------------------


@dataclass(frozen=True)
class SurvivorRow:
    code: str
    graph6: str
    e: int
    lambda1: float
    lambdan: float
    spread: float


@dataclass
class SearchReport:
    n: int
    r: int
    family_size: int = 0
    prescreened: int = 0
    survivors: int = 0
    maximizers: list[str] = field(default_factory=list)
    max_spread: float = 0.0
    formula_value: float = 0.0
    join_star_spread: float | None = None
    baseline_2gamma: float = 0.0
    structure_ok: bool = False
    predicted_wins: bool = False
    max_edges: int = 0
    mader_exact_form: int | None = None
    observations: list[dict] = field(default_factory=list)
    rows: list[SurvivorRow] = field(default_factory=list)
    complete: bool = True

    def to_dict(self, include_rows: bool = True) -> dict:
        d = asdict(self)
        if not include_rows:
            d.pop("rows")
        return d

    def to_json(self, include_rows: bool = True) -> str:
        return json.dumps(self.to_dict(include_rows), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["graph6", "e", "lambda1", "lambdan", "spread"])
        for row in self.rows:
            w.writerow([row.graph6, row.e, repr(row.lambda1), repr(row.lambdan), repr(row.spread)])
        return buf.getvalue()


class SearchAborted(MinorSpreadError):
    """A minor or eigen computation failed mid-search; ``partial`` holds what was done."""

    def __init__(self, message: str, partial: SearchReport):
        super().__init__(message)
        self.partial = partial


def _screen(args: tuple[list[str], int, bool]) -> tuple[int, int, list[SurvivorRow], str | None]:
    lines, r, prescreen = args
    rows: list[SurvivorRow] = []
    skipped = examined = 0
    try:
        for line in lines:
            g = parse_graph6(line)
            examined += 1
            if prescreen and r <= 7 and g.e > mader_exact_form(r, g.n):
                skipped += 1
                continue
            if has_clique_minor(g, r)[0]:
                continue
            canon = canonical_form(g)
            sp = spectrum(canon)
            spread = 0.0 if g.e == 0 else sp.spread
            rows.append(
                SurvivorRow(
                    canonical_code(canon).hex(),
                    emit_graph6(canon),
                    g.e,
                    sp.lambda1,
                    sp.lambdan,
                    spread,
                )
            )
    except MinorSpreadError as exc:
        return examined, skipped, rows, f"{type(exc).__name__}: {exc}"
    return examined, skipped, rows, None


def _summarise(report: SearchReport) -> None:
    n, r = report.n, report.r
    rows = report.rows
    report.survivors = len(rows)
    report.formula_value = closed_form_extremal_spread(r, n)
    report.baseline_2gamma = 2 * gamma(r, n)
    report.mader_exact_form = mader_exact_form(r, n) if r <= 7 else None
    if not rows:
        return
    report.max_edges = max(row.e for row in rows)
    report.max_spread = max(row.spread for row in rows)
    winners = [row for row in rows if row.spread >= report.max_spread - TIE_TOL]
    report.maximizers = [row.graph6 for row in winners]
    star = canonical_form(make_family("join_star", r=r, n=n))
    star_g6 = emit_graph6(star)
    for row in rows:
        if row.graph6 == star_g6:
            report.join_star_spread = row.spread
    report.predicted_wins = report.maximizers == [star_g6]
    report.structure_ok = True
    report.observations = []
    for row in winners:
        g = parse_graph6(row.graph6)
        shaped, L = structure_check(g, r)
        report.structure_ok &= shaped
        if L is None:
            L = high_degree_set(g, r - 2)
        obs: dict = {"graph6": row.graph6, "shape_ok": shaped, "L": list(L)}
        obs.update(luv_observations(g, L))
        if not shaped:
            rewired = rewire_to_join(g, L)
            obs["rewired_graph6"] = emit_graph6(rewired)
            obs["rewire_spread_delta"] = spectrum(rewired).spread - row.spread
        report.observations.append(obs)


def search_max_spread(
    n: int,
    r: int,
    source: Iterable[Graph] | None = None,
    shards: int = 1,
    mader_prescreen: bool = True,
) -> SearchReport:
    """Maximise spread over the K_r-minor-free graphs of ``source``.

    ``source`` defaults to the internal enumeration (n <= 7). With
    ``mader_prescreen`` (r <= 7 only) graphs above the Mader edge count are
    dropped without a minor search. Survivors are ordered by canonical code, so
    the report does not depend on input order or on ``shards``.
    """
    if not isinstance(r, int) or not isinstance(n, int) or not 3 <= r <= n:
        raise DomainError(f"need 3 <= r <= n, got r={r}, n={n}")
    if n > CANON_LIMIT:
        raise UnsupportedSizeError(f"search is limited to n <= {CANON_LIMIT}")
    if shards < 1:
        raise DomainError("shards must be at least 1")
    if source is None:
        source = enumerate_graphs(n)
    lines = []
    for g in source:
        if g.n != n:
            raise DomainError(f"stream graph has {g.n} vertices, expected {n}")
        lines.append(emit_graph6(g))
    chunks = [lines[i::shards] for i in range(shards)]
    jobs = [(chunk, r, mader_prescreen) for chunk in chunks]
    if shards == 1:
        results = [_screen(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=shards) as pool:
            results = list(pool.map(_screen, jobs))
    report = SearchReport(n=n, r=r)
    failures = []
    for examined, skipped, rows, err in results:
        report.family_size += examined
        report.prescreened += skipped
        report.rows.extend(rows)
        if err:
            failures.append(err)
    report.rows.sort(key=lambda row: (row.code, row.graph6))
    if failures:
        report.complete = False
        try:
            _summarise(report)
        except MinorSpreadError as exc:
            failures.append(f"summary: {type(exc).__name__}: {exc}")
        raise SearchAborted("; ".join(failures), report)
    _summarise(report)
    return report


def max_edges_minor_free(n: int, r: int, source: Iterable[Graph] | None = None) -> int:
    """Largest edge count among K_r-minor-free graphs in ``source`` (default: all of order n)."""
    if source is None:
        source = enumerate_graphs(n)
    best = -1
    for g in sorted(source, key=lambda h: -h.e):
        if g.e <= best:
            break
        if not has_clique_minor(g, r)[0]:
            best = g.e
    return best


def smallest_winning_n(reports: Sequence[SearchReport]) -> int | None:
    """Smallest tested n from which K_{r−2} ∨ (n−r+2)K1 is the unique maximiser at every larger tested n."""
    ordered = sorted(reports, key=lambda rep: rep.n)
    answer = None
    for rep in reversed(ordered):
        if not rep.predicted_wins:
            break
        answer = rep.n
    return answer
