"""Exact minimum codes by branch and bound.

Every code requirement is turned into covering atoms ``|S & mask| >= k``.
SUM and MIN distinguishing give plain atoms, MAX gives a disjunction of two
atoms.  The search branches include/exclude on one vertex of the open
constraint with the fewest undecided vertices, propagates tight atoms, and
prunes with a domination-deficit counting bound.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .canonical import canonical_form
from .codes import SIC, CodeSpec, Combiner, admits_ic, admits_sic, is_code, IC
from .generators import cartesian_product, path
from .graph import Graph, GraphError, VertexSet, iter_bits

DEFAULT_MAX_NODES = 10**7
DEFAULT_TIME_LIMIT = 60.0
MAX_COUNT_N = 32


@dataclass(frozen=True)
class SolveBudget:
    max_nodes: int = DEFAULT_MAX_NODES
    time_limit: float = DEFAULT_TIME_LIMIT

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


@dataclass
class SolveResult:
    status: str  # "optimal", "infeasible" or "budget_exceeded"
    size: int | None
    witness: VertexSet | None
    nodes: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "size": self.size,
            "witness": self.witness.sorted() if self.witness is not None else None,
            "nodes": self.nodes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class BudgetExceeded(Exception):
    pass


def forced_vertices(g: Graph) -> VertexSet:
    """Vertices that lie in every SIC: sole members of some ``N[u] - N[v]``."""
    forced = 0
    closed = g.closed
    for u in range(g.n):
        cu = closed[u]
        for v in range(g.n):
            if u != v:
                d = cu & ~closed[v]
                if d and d & (d - 1) == 0:
                    forced |= d
    return VertexSet(g.n, forced)


def _constraints(g: Graph, spec: CodeSpec):
    """Return (atoms, disjunctions) for ``spec`` or None when trivially infeasible."""
    closed = g.closed
    t = spec.dist_threshold
    sic_like = spec.combiner is Combiner.MIN and t == 1 and spec.dom_threshold == 1
    atoms: list[tuple[int, int]] = []
    ors: list[tuple[int, int, int, int]] = []
    for v in range(g.n):
        k = spec.dom_threshold
        if sic_like and g.adj[v]:
            k = 2  # a non-isolated vertex dominated once is never separated from its detector
        atoms.append((closed[v], k))
    far_implied = t <= spec.dom_threshold
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if far_implied and not closed[u] & closed[v]:
                continue
            left, right = closed[u] & ~closed[v], closed[v] & ~closed[u]
            if spec.combiner is Combiner.SUM:
                atoms.append((left | right, t))
            elif spec.combiner is Combiner.MIN:
                atoms.append((left, t))
                atoms.append((right, t))
            else:
                ors.append((left, t, right, t))
    for m, k in atoms:
        if m.bit_count() < k:
            return None
    atoms = _prune_implied(atoms)
    kept_ors = []
    for m1, k1, m2, k2 in ors:
        ok1, ok2 = m1.bit_count() >= k1, m2.bit_count() >= k2
        if not ok1 and not ok2:
            return None
        if not ok1 or not ok2:
            atoms.append((m2, k2) if ok2 else (m1, k1))
        elif not any(_implies(a, (m1, k1)) or _implies(a, (m2, k2)) for a in atoms):
            kept_ors.append((m1, k1, m2, k2))
    return _prune_implied(atoms), kept_ors


def _implies(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a[0] & ~b[0] == 0 and a[1] >= b[1]


def _prune_implied(atoms: list[tuple[int, int]]) -> list[tuple[int, int]]:
    uniq = sorted(set(atoms), key=lambda a: (a[0].bit_count() - a[1], a[0].bit_count(), a[0]))
    kept: list[tuple[int, int]] = []
    for a in uniq:
        if not any(_implies(b, a) for b in kept):
            kept.append(a)
    return kept


class _Search:
    def __init__(self, g: Graph, spec: CodeSpec, budget: SolveBudget):
        self.g = g
        self.n = g.n
        self.full = (1 << g.n) - 1
        self.budget = budget
        self.nodes = 0
        self.best: tuple[int, int] | None = None
        self.found: list[int] = []
        self.start = time.monotonic()
        self.sic_mode = spec.combiner is Combiner.MIN and spec.dist_threshold == 1 and spec.dom_threshold == 1
        closed = g.closed
        self.closed = closed
        if self.sic_mode:
            self.base_need = [2 if g.adj[v] else 1 for v in range(g.n)]
            self.extra_need = [1 if g.adj[v] else 0 for v in range(g.n)]
            self.gain_mask = [closed[v] & ~(1 << v) if g.adj[v] else closed[v] for v in range(g.n)]
            self.det_vertices = [v for v in range(g.n) if g.adj[v]]
        else:
            self.base_need = [spec.dom_threshold] * g.n
            self.extra_need = [0] * g.n
            self.gain_mask = list(closed)
            self.det_vertices = []

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded
        if self.nodes & 1023 == 0 and time.monotonic() - self.start > self.budget.time_limit:
            raise BudgetExceeded

    def propagate(self, inn: int, out: int, atoms, ors):
        closed = self.closed
        while True:
            changed = False
            decided = inn | out
            live = []
            for m, k in atoms:
                have = (inn & m).bit_count()
                if have >= k:
                    continue
                free = m & ~decided
                slack = have + free.bit_count() - k
                if slack < 0:
                    return None
                if slack == 0:
                    inn |= free
                    decided |= free
                    changed = True
                    continue
                live.append((m, k))
            live_ors = []
            for c in ors:
                m1, k1, m2, k2 = c
                h1 = (inn & m1).bit_count()
                if h1 >= k1:
                    continue
                h2 = (inn & m2).bit_count()
                if h2 >= k2:
                    continue
                f1, f2 = m1 & ~decided, m2 & ~decided
                s1 = h1 + f1.bit_count() - k1
                s2 = h2 + f2.bit_count() - k2
                if s1 < 0 and s2 < 0:
                    return None
                if s2 < 0 and s1 == 0:
                    inn |= f1
                    decided |= f1
                    changed = True
                    continue
                if s1 < 0 and s2 == 0:
                    inn |= f2
                    decided |= f2
                    changed = True
                    continue
                live_ors.append(c)
            for v in self.det_vertices:
                m = closed[v]
                have = (inn & m).bit_count()
                if have >= 3:
                    continue
                free = m & ~decided
                total = have + free.bit_count()
                if inn >> v & 1:
                    if total < 3:
                        return None
                    if total == 3 and free:
                        inn |= free
                        decided |= free
                        changed = True
                elif not decided >> v & 1 and total < 3:
                    out |= 1 << v
                    decided |= 1 << v
                    changed = True
            atoms, ors = live, live_ors
            if not changed:
                return inn, out, atoms, ors

    def lower_bound(self, inn: int, out: int) -> int | None:
        """Detectors still needed to pay off the total domination deficit."""
        closed, base, extra = self.closed, self.base_need, self.extra_need
        phi = 0
        deficient = 0
        for v in range(self.n):
            need = base[v] + (extra[v] if inn >> v & 1 else 0)
            d = need - (closed[v] & inn).bit_count()
            if d > 0:
                phi += d
                deficient |= 1 << v
        size = inn.bit_count()
        if phi == 0:
            return size
        gm = self.gain_mask
        gains = sorted(
            ((gm[x] & deficient).bit_count() for x in iter_bits(self.full & ~(inn | out))),
            reverse=True,
        )
        acc = 0
        for t, gain in enumerate(gains):
            acc += gain
            if acc >= phi:
                return size + t + 1
        return None

    def pick(self, inn: int, out: int, atoms, ors) -> int:
        decided = inn | out
        best_key = None
        for m, _ in atoms:
            free = m & ~decided
            key = (free.bit_count(), (free & -free).bit_length())
            if best_key is None or key < best_key:
                best_key = key
                if key[0] <= 2:
                    break
        if best_key is None or best_key[0] > 2:
            for m1, _, m2, _ in ors:
                free = (m1 | m2) & ~decided
                key = (free.bit_count(), (free & -free).bit_length())
                if best_key is None or key < best_key:
                    best_key = key
        return best_key[1] - 1


def _solve_core(search: "_Search", spec: CodeSpec, target: int | None = None) -> None:
    """Run the search, filling ``search.best`` or, with ``target``, ``search.found``."""
    g = search.g
    built = _constraints(g, spec)
    if built is None:
        return
    atoms, ors = built
    seed = forced_vertices(g).mask if search.sic_mode else 0
    if target is None and is_code(g, search.full, spec):
        search.best = (g.n, search.full)

    def dfs(inn: int, out: int, atoms, ors) -> None:
        search.tick()
        r = search.propagate(inn, out, atoms, ors)
        if r is None:
            return
        inn, out, atoms, ors = r
        if not atoms and not ors:
            size = inn.bit_count()
            if target is None:
                if search.best is None or size < search.best[0]:
                    search.best = (size, inn)
            elif size == target:
                search.found.append(inn)
            return
        lb = search.lower_bound(inn, out)
        if lb is None:
            return
        if target is None:
            if search.best is not None and lb >= search.best[0]:
                return
        elif lb > target:
            return
        bit = 1 << search.pick(inn, out, atoms, ors)
        dfs(inn | bit, out, atoms, ors)
        dfs(inn, out | bit, atoms, ors)

    dfs(seed, 0, atoms, ors)


def solve_min(g: Graph, spec: CodeSpec = SIC, budget: SolveBudget | None = None) -> SolveResult:
    budget = budget or SolveBudget()
    start = time.monotonic()
    if (spec == SIC and not admits_sic(g)) or (spec == IC and not admits_ic(g)):
        return SolveResult("infeasible", None, None, 0, 0.0)
    search = _Search(g, spec, budget)
    try:
        _solve_core(search, spec)
    except BudgetExceeded:
        best = search.best
        witness = VertexSet(g.n, best[1]) if best else None
        return SolveResult(
            "budget_exceeded", best[0] if best else None, witness, search.nodes,
            time.monotonic() - start,
        )
    elapsed = time.monotonic() - start
    if search.best is None:
        return SolveResult("infeasible", None, None, search.nodes, elapsed)
    size, mask = search.best
    witness = VertexSet(g.n, mask)
    if not is_code(g, witness, spec):
        raise AssertionError("solver produced an invalid code")
    return SolveResult("optimal", size, witness, search.nodes, elapsed)


def all_min_solutions(
    g: Graph, spec: CodeSpec = SIC, budget: SolveBudget | None = None
) -> tuple[int, list[VertexSet]]:
    """The optimum and every code attaining it."""
    budget = budget or SolveBudget()
    res = solve_min(g, spec, budget)
    if not res.optimal:
        raise GraphError(f"no optimal {spec} available ({res.status})")
    search = _Search(g, spec, budget)
    try:
        _solve_core(search, spec, target=res.size)
    except BudgetExceeded:
        raise GraphError("budget exceeded while enumerating optimal codes") from None
    return res.size, [VertexSet(g.n, m) for m in sorted(search.found)]


def count_min_solutions(
    g: Graph, spec: CodeSpec = SIC, budget: SolveBudget | None = None
) -> tuple[int, int, int]:
    """(optimum, number of optimal sets, number of optimal sets up to automorphism)."""
    if g.n > MAX_COUNT_N:
        raise GraphError(f"solution counting limited to n <= {MAX_COUNT_N}")
    opt, sols = all_min_solutions(g, spec, budget)
    classes = {canonical_form(g, [1 if v in s else 0 for v in range(g.n)]) for s in sols}
    return opt, len(sols), len(classes)


def doubling_construction(g: Graph, S) -> tuple[Graph, VertexSet]:
    """Copy a code into both layers of ``g □ P2``; vertex (a, b) is ``2a + b``."""
    s = VertexSet(g.n, S)
    h = cartesian_product(g, path(2))
    doubled = VertexSet(h.n, [2 * a + b for a in s for b in (0, 1)])
    if not is_code(h, doubled, SIC):
        raise GraphError("doubled set is not a self-identifying code")
    return h, doubled


def triangle_partition(g: Graph) -> list[tuple[int, int, int]] | None:
    """Split the vertices into disjoint triangles, or return None."""
    if g.n % 3:
        return None
    used = [False] * g.n
    parts: list[tuple[int, int, int]] = []

    def rec() -> bool:
        try:
            v = used.index(False)
        except ValueError:
            return True
        nbrs = sorted(u for u in g.adj[v] if not used[u])
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if b in g.adj[a]:
                    used[v] = used[a] = used[b] = True
                    parts.append((v, a, b))
                    if rec():
                        return True
                    parts.pop()
                    used[v] = used[a] = used[b] = False
        return False

    return parts if rec() else None


@dataclass
class CubicReport:
    is_cubic: bool
    admits: bool
    sic_value: int
    is_n: bool
    partitionable_into_triangles: bool
    n_mod_6: int


def cubic_extremal_check(g: Graph, budget: SolveBudget | None = None) -> CubicReport:
    if not g.is_regular(3) or not g.is_connected() or g.n < 8:
        raise GraphError("expected a connected cubic graph on at least 8 vertices")
    if not admits_sic(g):
        raise GraphError("graph has no SIC")
    res = solve_min(g, SIC, budget)
    if not res.optimal:
        raise GraphError(f"solver did not finish: {res.status}")
    return CubicReport(
        is_cubic=True,
        admits=True,
        sic_value=res.size,
        is_n=res.size == g.n,
        partitionable_into_triangles=triangle_partition(g) is not None,
        n_mod_6=g.n % 6,
    )
