"""Runtime verification suites behind ``minorspread verify``.

Each suite returns a :class:`SuiteReport`; randomised checks draw from a
``random.Random(seed)`` so runs are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .graph import (
    MAX_ORDER,
    Graph,
    canonical_code,
    complete,
    emit_graph6,
    empty,
    make_family,
    parse_graph6,
)
from .join_series import (
    JoinModel,
    c2_upper_bound_chain,
    closed_form_extremal_spread,
    secular_extremes,
    series_coefficients,
    truncated_series_extremes,
)
from .minor import (
    MinorCertificate,
    contraction_hadwiger,
    has_clique_minor,
    verify_certificate,
)
from .search import enumerate_graphs, search_max_spread
from .spectral import join_adjacency, matrix_spectrum, spectrum, spectrum_identity_errors, weyl_sandwich_check

SUITES = ("codec", "spectral", "minor", "series", "search")


@dataclass
class SuiteReport:
    name: str
    details: list[tuple[str, bool, str]] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def run(self) -> int:
        return len(self.details)

    @property
    def passed(self) -> int:
        return sum(ok for _, ok, _ in self.details)

    @property
    def failed(self) -> int:
        return self.run - self.passed

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        self.details.append((label, bool(ok), detail))

    def render(self) -> str:
        lines = [f"suite {self.name}: {self.passed}/{self.run} passed in {self.wall_time:.2f}s"]
        for label, ok, detail in self.details:
            lines.append(f"  [{'PASS' if ok else 'FAIL'}] {label}" + (f" ({detail})" if detail else ""))
        return "\n".join(lines)


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def all_graphs_up_to(n_max: int) -> list[Graph]:
    return [g for n in range(1, n_max + 1) for g in enumerate_graphs(n)]


# suites ---------------------------------------------------------------------


def codec_suite(seed: int = 0, trials: int = 10_000) -> SuiteReport:
    rep = SuiteReport("codec")
    rng = random.Random(seed)
    bad = 0
    for _ in range(trials):
        g = random_graph(rng, rng.randint(1, MAX_ORDER))
        text = emit_graph6(g)
        if parse_graph6(text) != g or emit_graph6(parse_graph6(text)) != text:
            bad += 1
    rep.check(f"random round trips ({trials})", bad == 0, f"{bad} mismatches")
    known = {"Bw": complete(3), "Bg": make_family("path", n=3), "@": complete(1), "A?": empty(2)}
    rep.check(
        "reference strings",
        all(parse_graph6(k) == g and emit_graph6(g) == k for k, g in known.items()),
    )
    exhaustive = all(
        parse_graph6(emit_graph6(g)) == g
        for n in range(1, 6)
        for g in (
            Graph.from_edges(n, [e for i, e in enumerate(combinations(range(n), 2)) if mask >> i & 1])
            for mask in range(1 << (n * (n - 1) // 2))
        )
    )
    rep.check("all labelled graphs n <= 5", exhaustive)
    return rep


def spectral_suite(seed: int = 0, trials: int = 300) -> SuiteReport:
    rep = SuiteReport("spectral")
    rng = random.Random(seed)
    worst_trace = worst_frob = 0.0
    bip_bad = mono_bad = 0
    for _ in range(trials):
        n = rng.randint(1, 40)
        g = random_graph(rng, n)
        sp = spectrum(g)
        t, f = spectrum_identity_errors(sp, g.e)
        worst_trace = max(worst_trace, t / (n * sp.tol))
        worst_frob = max(worst_frob, f / (n * n * sp.tol))
        a, b = rng.randint(1, 10), rng.randint(1, 10)
        half = random_graph(rng, a + b)
        bip = Graph.from_edges(a + b, [(u, v) for u, v in half.edges() if (u < a) != (v < a)])
        vals = spectrum(bip).values
        if any(abs(x + y) > 1e-9 for x, y in zip(vals, reversed(vals))):
            bip_bad += 1
        missing = [(u, v) for u, v in combinations(range(n), 2) if not g.has_edge(u, v)]
        if missing:
            u, v = rng.choice(missing)
            if spectrum(g.with_edge(u, v)).lambda1 < sp.lambda1 - 1e-9:
                mono_bad += 1
    rep.check("trace identity", worst_trace <= 1.0, f"worst |Σλ|/(n·tol) = {worst_trace:.3g}")
    rep.check("Frobenius identity", worst_frob <= 1.0, f"worst |Σλ²−2e|/(n²·tol) = {worst_frob:.3g}")
    rep.check("bipartite spectra symmetric", bip_bad == 0, f"{bip_bad} asymmetric")
    rep.check("λ1 monotone under edge addition", mono_bad == 0, f"{mono_bad} decreases")
    violations = 0
    for _ in range(100):
        h = random_graph(rng, rng.randint(1, 6))
        violations += len(weyl_sandwich_check(h, rng.randint(1, 30)))
    rep.check("interior eigenvalues of joins within ±λ1(H)", violations == 0, f"{violations} violations")
    return rep


def minor_suite(seed: int = 0, n_max: int = 7, mutations: int = 10_000) -> SuiteReport:
    rep = SuiteReport("minor")
    rng = random.Random(seed)
    graphs = all_graphs_up_to(n_max)
    mismatches = bad_certs = 0
    positives: list[tuple[Graph, MinorCertificate]] = []
    for g in graphs:
        h = contraction_hadwiger(g)
        for r in (3, 4, 5):
            found, cert = has_clique_minor(g, r)
            if found != (h >= r):
                mismatches += 1
            if found:
                if not verify_certificate(g, cert):
                    bad_certs += 1
                positives.append((g, cert))
    rep.check(
        f"branch-set search matches contraction oracle ({len(graphs)} graphs, r=3..5)",
        mismatches == 0,
        f"{mismatches} disagreements",
    )
    rep.check("positive answers carry valid certificates", bad_certs == 0, f"{bad_certs} invalid")
    accepted = 0
    for _ in range(mutations):
        g, cert = rng.choice(positives)
        mutated = mutate_certificate(rng, g, cert)
        if mutated is not None and verify_certificate(*mutated):
            accepted += 1
    rep.check(f"mutated certificates rejected ({mutations})", accepted == 0, f"{accepted} accepted")
    mono_bad = 0
    for _ in range(300):
        g = random_graph(rng, rng.randint(4, 8))
        r = rng.randint(3, 5)
        if has_clique_minor(g, r)[0]:
            continue
        edges = g.edges()
        if edges and has_clique_minor(g.without_edge(*rng.choice(edges)), r)[0]:
            mono_bad += 1
    rep.check("edge deletion never creates a clique minor", mono_bad == 0, f"{mono_bad} violations")
    return rep


def mutate_certificate(
    rng: random.Random, g: Graph, cert: MinorCertificate
) -> tuple[Graph, MinorCertificate] | None:
    """A (graph, certificate) pair broken in one of several ways, each guaranteed invalid.

    Returns None when the drawn mutation does not apply to this certificate.
    """
    sets = [list(b) for b in cert.branch_sets]
    kinds = ["drop_set", "duplicate", "out_of_range", "empty", "wrong_shape"]
    # Edges whose removal breaks the model: the only edge between two bags,
    # or a bridge inside a bag.
    sole_cross = []
    for i, j in combinations(range(len(sets)), 2):
        cross = [(u, v) for u in sets[i] for v in sets[j] if g.has_edge(u, v)]
        if len(cross) == 1:
            sole_cross.append(cross[0])
    bridges = []
    for b in sets:
        mask = sum(1 << w for w in b)
        for u, v in combinations(b, 2):
            if g.has_edge(u, v) and not g.without_edge(u, v).is_connected(mask):
                bridges.append((u, v))
    if sole_cross or bridges:
        kinds.append("cut_edge")
    kind = rng.choice(kinds)

    def rebuilt() -> MinorCertificate:
        return MinorCertificate(cert.kind, cert.shape, tuple(tuple(b) for b in sets))

    if kind == "drop_set":
        del sets[rng.randrange(len(sets))]
        return g, rebuilt()
    if kind == "duplicate":
        if len(sets) < 2:
            return None
        i, j = rng.sample(range(len(sets)), 2)
        sets[j].append(sets[i][0])
        return g, rebuilt()
    if kind == "out_of_range":
        sets[rng.randrange(len(sets))].append(g.n + rng.randint(0, 5))
        return g, rebuilt()
    if kind == "empty":
        sets[rng.randrange(len(sets))] = []
        return g, rebuilt()
    if kind == "wrong_shape":
        shape = (cert.shape[0] + 1,) + tuple(cert.shape[1:])
        return g, MinorCertificate(cert.kind, shape, cert.branch_sets)
    u, v = rng.choice(sole_cross + bridges)
    return g.without_edge(u, v), cert


def series_suite(seed: int = 0, trials: int = 200) -> SuiteReport:
    rep = SuiteReport("series")
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        h = random_graph(rng, rng.randint(1, 6))
        m = rng.randint(1, 40)
        l1, ln = secular_extremes(JoinModel(h, m))
        sp = matrix_spectrum(join_adjacency(h, m))
        worst = max(worst, abs(l1 - sp.lambda1), abs(ln - sp.lambdan))
    rep.check(f"secular extremes match dense solve ({trials} joins)", worst <= 1e-9, f"max error {worst:.2e}")
    rep.check(
        "c2 of K_{r-2} equals (r-3)^2/8 for r = 4..10",
        all(series_coefficients(JoinModel(complete(r - 2), 1)).c2 * 8 == (r - 3) ** 2 for r in range(4, 11)),
    )
    strict = True
    for r in range(4, 9):
        p = r - 2
        pairs = list(combinations(range(p), 2))
        for mask in range((1 << len(pairs)) - 1):
            H = Graph.from_edges(p, [e for i, e in enumerate(pairs) if mask >> i & 1])
            c2, bound, _ = c2_upper_bound_chain(H, r)
            if not (c2 <= bound and c2 * 8 < (r - 3) ** 2):
                strict = False
    rep.check("proper subgraphs of K_{r-2} have smaller c2, r = 4..8", strict)
    spread_err = 0.0
    for r in range(3, 9):
        for m in range(2, 51):
            n = m + r - 2
            s = matrix_spectrum(join_adjacency(complete(r - 2), m)).spread
            spread_err = max(spread_err, abs(s - closed_form_extremal_spread(r, n)))
    rep.check("closed-form extremal spread", spread_err <= 1e-8, f"max error {spread_err:.2e}")
    m = 48
    model = JoinModel(complete(2), m)
    exact = secular_extremes(model)
    approx = truncated_series_extremes(model, 8)
    rep.check("order-8 series matches secular root", abs(approx[0] - exact[0]) <= 1e-6)
    return rep


def search_suite(seed: int = 0) -> SuiteReport:
    rep = SuiteReport("search")
    for n in range(4, 8):
        result = search_max_spread(n, 3)
        star = emit_graph6(make_family("star", n=n))
        ok = len(result.maximizers) == 1 and canonical_code(parse_graph6(result.maximizers[0])) == canonical_code(
            parse_graph6(star)
        )
        rep.check(f"r=3 n={n}: unique maximiser K_1,{n - 1}", ok and abs(result.max_spread - 2 * (n - 1) ** 0.5) <= 1e-8)
    for n in range(5, 8):
        result = search_max_spread(n, 4)
        detail = f"maximisers {result.maximizers}, spread {result.max_spread:.9f}"
        ok = True
        if result.predicted_wins:
            ok = abs(result.max_spread - closed_form_extremal_spread(4, n)) <= 1e-8
        rep.check(f"r=4 n={n}: harness completes", ok, detail)
    for r in (4, 5, 6, 7):
        for n in range(max(r, 3), 8):
            result = search_max_spread(n, r, mader_prescreen=False)
            expected = (r - 2) * n - (r - 1) * (r - 2) // 2
            rep.check(f"r={r} n={n}: max edges {result.max_edges}", result.max_edges == expected, f"expected {expected}")
    a = search_max_spread(6, 4, shards=1).to_json()
    b = search_max_spread(6, 4, shards=3).to_json()
    rep.check("report independent of shard count", a == b)
    return rep


RUNNERS: dict[str, Callable[..., SuiteReport]] = {
    "codec": codec_suite,
    "spectral": spectral_suite,
    "minor": minor_suite,
    "series": series_suite,
    "search": search_suite,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    if name not in RUNNERS:
        raise KeyError(name)
    start = time.perf_counter()
    report = RUNNERS[name](seed=seed)
    report.wall_time = time.perf_counter() - start
    return report
