"""Toroidal quotients of the square, king, triangular and hexagonal grids.

A periodic detector pattern on the infinite grid is searched for on an
``m x n`` torus.  The dimension floors below make every closed neighbourhood
of radius two embed injectively, so a code on the torus lifts to a periodic
code on the infinite grid with the same density.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from .codes import SIC, domination_histogram, is_code
from .graph import Graph, GraphError, GridFamily, VertexSet, build_graph
from .solver import SolveBudget, solve_min

_OFFSETS = {
    GridFamily.SQR: [(1, 0), (0, 1)],
    GridFamily.KNG: [(1, 0), (0, 1), (1, 1), (1, -1)],
    GridFamily.TRI: [(1, 0), (0, 1), (1, 1)],
}

# Best known (and, by the matching lower bounds, optimal) densities.
TARGET_DENSITY = {
    GridFamily.KNG: Fraction(1, 3),
    GridFamily.SQR: Fraction(1, 2),
    GridFamily.TRI: Fraction(1, 2),
    GridFamily.HEX: Fraction(2, 3),
}


@dataclass(frozen=True)
class TorusSpec:
    family: GridFamily
    m: int
    n: int

    def __post_init__(self):
        if self.family is GridFamily.HEX:
            if self.m < 6 or self.n < 6 or self.m % 2 or self.n % 2:
                raise GraphError("HEX torus needs even dimensions >= 6")
        elif self.m < 5 or self.n < 5:
            raise GraphError(f"{self.family.name} torus needs dimensions >= 5")

    @classmethod
    def of(cls, family: str | GridFamily, m: int, n: int) -> "TorusSpec":
        if not isinstance(family, GridFamily):
            family = GridFamily(family.lower())
        return cls(family, m, n)

    @property
    def size(self) -> int:
        return self.m * self.n

    def index(self, i: int, j: int) -> int:
        return (i % self.m) * self.n + (j % self.n)

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.n)


def torus(spec: TorusSpec) -> Graph:
    """Vertex (i, j) has index ``i * n + j``; all arithmetic is modular."""
    edges = []
    for i in range(spec.m):
        for j in range(spec.n):
            v = spec.index(i, j)
            if spec.family is GridFamily.HEX:
                edges.append((v, spec.index(i, j + 1)))
                if (i + j) % 2 == 0:
                    edges.append((v, spec.index(i + 1, j)))
            else:
                for di, dj in _OFFSETS[spec.family]:
                    edges.append((v, spec.index(i + di, j + dj)))
    g = build_graph(spec.size, edges)
    if not g.is_regular(spec.family.degree):
        raise GraphError(f"torus {spec} is not {spec.family.degree}-regular")
    return g


@dataclass
class DensityReport:
    spec: TorusSpec
    optimum_size: int
    density: Fraction
    witness: VertexSet
    domination_histogram: dict[int, int]
    nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "family": self.spec.family.name,
            "dims": [self.spec.m, self.spec.n],
            "optimum_size": self.optimum_size,
            "density": str(self.density),
            "detectors": [list(self.spec.coords(v)) for v in self.witness],
            "domination_histogram": {str(k): c for k, c in self.domination_histogram.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def ascii(self) -> str:
        return render_ascii(self.spec, self.witness)


def render_ascii(spec: TorusSpec, S) -> str:
    members = set(S)
    return "\n".join(
        "".join("#" if spec.index(i, j) in members else "." for j in range(spec.n))
        for i in range(spec.m)
    )


def min_torus_density(spec: TorusSpec, budget: SolveBudget | None = None) -> DensityReport:
    g = torus(spec)
    res = solve_min(g, SIC, budget)
    if not res.optimal:
        raise GraphError(f"torus solve did not finish: {res.status}")
    return DensityReport(
        spec=spec,
        optimum_size=res.size,
        density=Fraction(res.size, spec.size),
        witness=res.witness,
        domination_histogram=domination_histogram(g, res.witness),
        nodes=res.nodes,
    )


def density_lower_bound(mode: str, *params: int) -> Fraction:
    """``regular_share(k)`` gives 2/k; ``dom_counting(k, a, b)`` gives b/(k+b-a).

    For ``dom_counting``, ``k`` is the closed-neighbourhood size and ``a``,
    ``b`` bound the average domination of detectors and non-detectors.
    """
    if any(p < 1 for p in params):
        raise ValueError("parameters must be positive")
    if mode == "regular_share":
        (k,) = params
        return Fraction(2, k)
    if mode == "dom_counting":
        k, a, b = params
        if k + b - a <= 0:
            raise ValueError("k + b - a must be positive")
        return Fraction(b, k + b - a)
    raise ValueError(f"unknown bound mode {mode!r}")


FAMILY_BOUND = {
    GridFamily.KNG: ("dom_counting", 9, 3, 3),
    GridFamily.TRI: ("dom_counting", 7, 3, 4),
    GridFamily.SQR: ("regular_share", 4),
    GridFamily.HEX: ("regular_share", 3),
}


def family_lower_bound(family: GridFamily) -> Fraction:
    mode, *params = FAMILY_BOUND[family]
    return density_lower_bound(mode, *params)


def scan_dimensions(family: GridFamily, limit: int = 12) -> list[TorusSpec]:
    """Admissible dimension pairs up to ``limit``, smallest tori first.

    Pairs whose vertex count cannot hold the target density exactly are
    skipped; the torus optimum can never fall below the target there.
    """
    lo = 6 if family is GridFamily.HEX else 5
    step = 2 if family is GridFamily.HEX else 1
    target = TARGET_DENSITY[family]
    specs = []
    for m in range(lo, limit + 1, step):
        for n in range(m, limit + 1, step):
            if (m * n * target).denominator == 1:
                specs.append(TorusSpec(family, m, n))
    return sorted(specs, key=lambda s: (s.size, s.m))


def find_target_density(
    family: GridFamily, budget: SolveBudget | None = None, limit: int = 12
) -> tuple[DensityReport | None, list[DensityReport]]:
    """Solve tori in scan order until one reaches the target density."""
    target = TARGET_DENSITY[family]
    done = []
    for spec in scan_dimensions(family, limit):
        rep = min_torus_density(spec, budget)
        done.append(rep)
        if rep.density == target:
            return rep, done
    return None, done


def _check_sic(g: Graph, S) -> None:
    if not is_code(g, S, SIC):
        raise GraphError("detector set is not a self-identifying code")


def kng_domination_check(spec: TorusSpec, S) -> bool:
    """Every vertex of a king-grid code is dominated at least three times."""
    if spec.family is not GridFamily.KNG:
        raise GraphError("expected a KNG torus")
    g = torus(spec)
    _check_sic(g, S)
    s = VertexSet(g.n, S).mask
    return all((c & s).bit_count() >= 3 for c in g.closed)


def tri_forbidden_path_check(spec: TorusSpec, S) -> bool:
    """No three non-detectors ``u, x, v`` run consecutively around a common neighbour.

    Such a run is exactly ``N[p] - N[q]`` for an edge ``pq``, so it would leave
    ``p`` and ``q`` undistinguished.  Equivalently: ``x`` has two non-detector
    neighbours at offsets ``d1``, ``d2`` whose sum is again a unit offset.
    """
    if spec.family is not GridFamily.TRI:
        raise GraphError("expected a TRI torus")
    g = torus(spec)
    _check_sic(g, S)
    members = VertexSet(g.n, S)
    units = _OFFSETS[GridFamily.TRI] + [(-a, -b) for a, b in _OFFSETS[GridFamily.TRI]]
    bent = [(d1, d2) for d1 in units for d2 in units if (d1[0] + d2[0], d1[1] + d2[1]) in units]
    for i in range(spec.m):
        for j in range(spec.n):
            if spec.index(i, j) in members:
                continue
            for (a1, b1), (a2, b2) in bent:
                if (
                    spec.index(i + a1, j + b1) not in members
                    and spec.index(i + a2, j + b2) not in members
                ):
                    return False
    return True


def _solve_torus_job(job) -> DensityReport | None:
    spec, budget = job
    try:
        return min_torus_density(spec, budget)
    except GraphError:
        return None


def solve_tori(
    specs: list[TorusSpec], budget: SolveBudget | None = None, workers: int = 1
) -> list[DensityReport | None]:
    """Solve several tori; unfinished solves come back as None."""
    jobs = [(s, budget) for s in specs]
    if workers <= 1:
        return [_solve_torus_job(j) for j in jobs]
    with Pool(workers) as pool:
        return pool.map(_solve_torus_job, jobs, chunksize=1)
