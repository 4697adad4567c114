"""Batch solving over graph corpora, with a small connected-cubic enumerator."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Iterable, TextIO

from .canonical import canonical_form
from .codes import SIC, CodeSpec, admits_ic, admits_sic
from .generators import complete, prism_ring, triangle_ring
from .graph import Graph, GraphError, build_graph
from .graph6 import emit_graph6, parse_graph6
from .solver import SolveBudget, count_min_solutions, solve_min, triangle_partition

CUBIC_MAX_N = 12
# Connected cubic graphs per order (OEIS A002851).
CUBIC_COUNTS = {4: 1, 6: 2, 8: 5, 10: 19, 12: 85}


def _insert_edge(g: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> Graph:
    """Subdivide two distinct edges and join the two new vertices."""
    x, y = g.n, g.n + 1
    edges = [e for e in g.edges() if e != e1 and e != e2]
    edges += [(e1[0], x), (x, e1[1]), (e2[0], y), (y, e2[1]), (x, y)]
    return build_graph(g.n + 2, edges)


def _insert_diamond(g: Graph, e: tuple[int, int]) -> Graph:
    """Replace edge ``uv`` by the path u-a, v-d through a diamond a,b,c,d."""
    a, b, c, d = range(g.n, g.n + 4)
    edges = [f for f in g.edges() if f != e]
    edges += [(e[0], a), (a, b), (a, c), (b, c), (b, d), (c, d), (d, e[1])]
    return build_graph(g.n + 4, edges)


def _bridge(g: Graph, h: Graph, e1: tuple[int, int], e2: tuple[int, int]) -> Graph:
    """Subdivide one edge in each of two graphs and join the new vertices."""
    off = g.n
    x, y = g.n + h.n, g.n + h.n + 1
    edges = [e for e in g.edges() if e != e1]
    edges += [(a + off, b + off) for a, b in h.edges() if (a, b) != e2]
    edges += [(e1[0], x), (x, e1[1]), (e2[0] + off, y), (y, e2[1] + off), (x, y)]
    return build_graph(g.n + h.n + 2, edges)


def enumerate_cubic(n: int) -> list[Graph]:
    """Connected cubic graphs on ``n`` vertices, one per isomorphism class.

    Graphs grow from K4 by three moves: subdivide two distinct edges and
    join the new vertices, replace an edge by a path through a diamond, or
    bridge two smaller graphs through subdivided edges.  One graph per
    canonical form is kept.  The result is checked against the known class
    sizes, which makes the list provably complete.
    """
    if n % 2 or not 4 <= n <= CUBIC_MAX_N:
        raise GraphError(f"cubic enumeration needs even 4 <= n <= {CUBIC_MAX_N}")
    levels: dict[int, dict[str, Graph]] = {4: {canonical_form(complete(4)): complete(4)}}
    for order in range(6, n + 1, 2):
        nxt: dict[str, Graph] = {}

        def keep(h: Graph) -> None:
            key = canonical_form(h)
            if key not in nxt:
                nxt[key] = parse_graph6(key)

        for g in levels[order - 2].values():
            edges = g.edges()
            for i, e1 in enumerate(edges):
                for e2 in edges[i + 1 :]:
                    keep(_insert_edge(g, e1, e2))
        for g in levels.get(order - 4, {}).values():
            for e in g.edges():
                keep(_insert_diamond(g, e))
        for a in range(4, (order - 2) // 2 + 1, 2):
            for g in levels[a].values():
                for h in levels[order - 2 - a].values():
                    for e1 in g.edges():
                        for e2 in h.edges():
                            keep(_bridge(g, h, e1, e2))
        levels[order] = nxt
    out = [levels[n][k] for k in sorted(levels[n])]
    if len(out) != CUBIC_COUNTS[n]:
        raise AssertionError(f"found {len(out)} cubic graphs on {n} vertices, expected {CUBIC_COUNTS[n]}")
    return out


@dataclass
class GraphResult:
    index: int
    n: int
    graph6: str
    admits: bool
    status: str  # "optimal", "no_code" or "budget_exceeded"
    value: int | None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SweepRow:
    n: int
    total_graphs: int = 0
    graphs_with_sic: int = 0
    min_sic: int | None = None
    max_sic: int | None = None
    complete: bool = True
    details: list[GraphResult] = field(default_factory=list, repr=False)

    def add(self, r: GraphResult) -> None:
        self.details.append(r)
        self.total_graphs += 1
        if not r.admits:
            return
        self.graphs_with_sic += 1
        if r.status != "optimal":
            self.complete = False
            return
        self.min_sic = r.value if self.min_sic is None else min(self.min_sic, r.value)
        self.max_sic = r.value if self.max_sic is None else max(self.max_sic, r.value)

    def as_tuple(self) -> tuple:
        return (self.total_graphs, self.graphs_with_sic, self.min_sic, self.max_sic)


def _admits(g: Graph, spec: CodeSpec) -> bool | None:
    if spec == SIC:
        return admits_sic(g)
    if spec.combiner.name == "SUM" and spec.dom_threshold == spec.dist_threshold == 1:
        return admits_ic(g)
    return None


def _solve_one(job) -> GraphResult:
    index, g6, spec, budget = job
    g = parse_graph6(g6)
    admits = _admits(g, spec)
    if admits is False:
        return GraphResult(index, g.n, g6, False, "no_code", None)
    res = solve_min(g, spec, budget)
    if res.status == "infeasible":
        return GraphResult(index, g.n, g6, False, "no_code", None)
    return GraphResult(index, g.n, g6, True, res.status, res.size if res.optimal else None)


def solve_corpus(
    graphs: Iterable[Graph],
    spec: CodeSpec = SIC,
    budget: SolveBudget | None = None,
    workers: int = 1,
) -> list[GraphResult]:
    budget = budget or SolveBudget()
    jobs = [(i, emit_graph6(g), spec, budget) for i, g in enumerate(graphs)]
    if workers <= 1:
        return [_solve_one(j) for j in jobs]
    with Pool(workers) as pool:
        return pool.map(_solve_one, jobs, chunksize=1)


def aggregate(results: Iterable[GraphResult]) -> list[SweepRow]:
    rows: dict[int, SweepRow] = {}
    for r in sorted(results, key=lambda r: r.index):
        rows.setdefault(r.n, SweepRow(r.n)).add(r)
    return [rows[n] for n in sorted(rows)]


def sweep(
    graphs: Iterable[Graph],
    spec: CodeSpec = SIC,
    budget: SolveBudget | None = None,
    workers: int = 1,
) -> SweepRow:
    """Existence and optimum statistics for a corpus of graphs of one order."""
    rows = aggregate(solve_corpus(graphs, spec, budget, workers))
    if len(rows) != 1:
        raise GraphError("sweep expects a non-empty corpus of a single order; use sweep_by_order")
    return rows[0]


def sweep_by_order(
    graphs: Iterable[Graph],
    spec: CodeSpec = SIC,
    budget: SolveBudget | None = None,
    workers: int = 1,
) -> list[SweepRow]:
    return aggregate(solve_corpus(graphs, spec, budget, workers))


CSV_COLUMNS = ["n", "total", "with_sic", "min", "max", "complete"]


def write_csv(rows: Iterable[SweepRow], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([
            r.n, r.total_graphs, r.graphs_with_sic,
            "" if r.min_sic is None else r.min_sic,
            "" if r.max_sic is None else r.max_sic,
            int(r.complete),
        ])


def write_jsonl(rows: Iterable[SweepRow], fh: TextIO) -> None:
    for r in rows:
        for d in r.details:
            fh.write(json.dumps(d.to_dict()) + "\n")


def format_table(rows: Iterable[SweepRow]) -> str:
    lines = [f"{'n':>4} {'total':>6} {'with':>6} {'min':>4} {'max':>4}"]
    for r in rows:
        lo = "-" if r.min_sic is None else r.min_sic
        hi = "-" if r.max_sic is None else r.max_sic
        flag = "" if r.complete else "  (incomplete)"
        lines.append(f"{r.n:>4} {r.total_graphs:>6} {r.graphs_with_sic:>6} {lo:>4} {hi:>4}{flag}")
    return "\n".join(lines)


@dataclass
class ExtremalReport:
    k: int
    ring_n: int
    ring_sic: int
    ring_partition: bool
    prism_n: int
    prism_sic: int
    prism_iso_classes: int

    @property
    def ok(self) -> bool:
        return (
            self.ring_sic == self.ring_n
            and self.ring_partition
            and self.prism_sic == 4 * self.k
            and self.prism_iso_classes == 1
        )

    def to_dict(self) -> dict:
        return {**self.__dict__, "ok": self.ok}


def extremal_family_check(k: int, budget: SolveBudget | None = None) -> ExtremalReport:
    """Solve the triangle ring on 6k vertices and the prism C_3k x P2."""
    if not 2 <= k <= 4:
        raise GraphError("extremal family check needs 2 <= k <= 4")
    ring = triangle_ring(k)
    res = solve_min(ring, SIC, budget)
    if not res.optimal:
        raise GraphError(f"triangle ring solve did not finish: {res.status}")
    prism = prism_ring(k)
    opt, _, classes = count_min_solutions(prism, SIC, budget)
    return ExtremalReport(
        k=k,
        ring_n=ring.n,
        ring_sic=res.size,
        ring_partition=triangle_partition(ring) is not None,
        prism_n=prism.n,
        prism_sic=opt,
        prism_iso_classes=classes,
    )
