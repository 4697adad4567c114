"""Verification of identifying-code variants.

Every variant is a threshold on the domination value ``|N_S[v]|`` plus a
threshold on a combination (sum, max or min) of the two one-sided
differences ``|N_S[u] - N_S[v]|`` and ``|N_S[v] - N_S[u]|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import reduce
from typing import Iterable, Union

from .graph import Graph, GraphError, VertexSet, iter_bits, mask_of


class Combiner(Enum):
    SUM = "sum"
    MAX = "max"
    MIN = "min"

    def __call__(self, left: int, right: int) -> int:
        if self is Combiner.SUM:
            return left + right
        if self is Combiner.MAX:
            return max(left, right)
        return min(left, right)


@dataclass(frozen=True)
class CodeSpec:
    dom_threshold: int
    combiner: Combiner
    dist_threshold: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dom_threshold < 1 or self.dist_threshold < 1:
            raise ValueError("thresholds must be positive")

    def __str__(self) -> str:
        return self.name or f"({self.dom_threshold},{self.combiner.name},{self.dist_threshold})"


IC = CodeSpec(1, Combiner.SUM, 1, "IC")
SIC = CodeSpec(1, Combiner.MIN, 1, "SIC")
RED_IC = CodeSpec(2, Combiner.SUM, 2, "RED:IC")
DET_IC = CodeSpec(2, Combiner.MAX, 2, "DET:IC")
ERR_IC = CodeSpec(3, Combiner.SUM, 3, "ERR:IC")

PRESETS = {"ic": IC, "sic": SIC, "red": RED_IC, "det": DET_IC, "err": ERR_IC}


def code_spec(name: str) -> CodeSpec:
    key = name.lower().replace(":ic", "").replace("_ic", "")
    try:
        return PRESETS[key]
    except KeyError:
        raise ValueError(f"unknown code {name!r}; expected one of {sorted(PRESETS)}") from None


@dataclass(frozen=True)
class UnderDominated:
    v: int
    dom_value: int

    def to_dict(self) -> dict:
        return {"kind": "UnderDominated", "vertices": [self.v], "counts": [self.dom_value]}


@dataclass(frozen=True)
class Undistinguished:
    u: int
    v: int
    left_count: int
    right_count: int

    def to_dict(self) -> dict:
        return {
            "kind": "Undistinguished",
            "vertices": [self.u, self.v],
            "counts": [self.left_count, self.right_count],
        }


Violation = Union[UnderDominated, Undistinguished]

SetLike = Union[VertexSet, Iterable[int], int]


def _mask(g: Graph, S: SetLike) -> int:
    if isinstance(S, VertexSet):
        return S.mask
    if isinstance(S, int):
        return S
    m = mask_of(S)
    if m >> g.n:
        raise GraphError("detector set contains vertices outside the graph")
    return m


def dom(g: Graph, S: SetLike, v: int) -> int:
    g._check(v)
    return (g.closed[v] & _mask(g, S)).bit_count()


def diff_counts(g: Graph, S: SetLike, u: int, v: int) -> tuple[int, int]:
    g._check(u)
    g._check(v)
    if u == v:
        raise GraphError("diff_counts needs two distinct vertices")
    s = _mask(g, S)
    a, b = g.closed[u] & s, g.closed[v] & s
    return (a & ~b).bit_count(), (b & ~a).bit_count()


def verify_code(
    g: Graph, S: SetLike, spec: CodeSpec = SIC, fail_fast: bool = False
) -> list[Violation]:
    """All violations of ``spec`` by ``S``, vertices first, then pairs ``u < v``."""
    s = _mask(g, S)
    codes = [c & s for c in g.closed]
    out: list[Violation] = []
    for v, c in enumerate(codes):
        d = c.bit_count()
        if d < spec.dom_threshold:
            out.append(UnderDominated(v, d))
            if fail_fast:
                return out
    combine, t = spec.combiner, spec.dist_threshold
    for u in range(g.n):
        cu = codes[u]
        for v in range(u + 1, g.n):
            cv = codes[v]
            left, right = (cu & ~cv).bit_count(), (cv & ~cu).bit_count()
            if combine(left, right) < t:
                out.append(Undistinguished(u, v, left, right))
                if fail_fast:
                    return out
    return out


def is_code(g: Graph, S: SetLike, spec: CodeSpec = SIC) -> bool:
    return not verify_code(g, S, spec, fail_fast=True)


def violations_jsonl(violations: Iterable[Violation]) -> str:
    return "".join(json.dumps(v.to_dict()) + "\n" for v in violations)


def verify_sic_definition(g: Graph, S: SetLike) -> tuple[bool, int | None]:
    """Check the intersection form directly: each alarm pattern pins one vertex.

    Returns ``(True, None)`` or ``(False, x)`` for the first failing vertex ``x``.
    """
    s = _mask(g, S)
    full = (1 << g.n) - 1
    for x in range(g.n):
        alarm = g.closed[x] & s
        if not alarm:
            return False, x
        common = reduce(lambda acc, w: acc & g.closed[w], iter_bits(alarm), full)
        if common != 1 << x:
            return False, x
    return True, None


@dataclass(frozen=True)
class Located:
    x: int


@dataclass(frozen=True)
class Candidates:
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class Inconsistent:
    pass


def locate(g: Graph, S: SetLike, A: SetLike) -> Located | Candidates | Inconsistent:
    """Find the intruder from the set ``A`` of alarmed detectors."""
    s, a = _mask(g, S), _mask(g, A)
    if not a:
        raise GraphError("alarm set is empty")
    if a & ~s:
        raise GraphError("alarm set contains non-detectors")
    common = reduce(lambda acc, w: acc & g.closed[w], iter_bits(a), (1 << g.n) - 1)
    survivors = [x for x in iter_bits(common) if g.closed[x] & s == a]
    if len(survivors) == 1:
        return Located(survivors[0])
    if survivors:
        return Candidates(tuple(survivors))
    return Inconsistent()


@dataclass
class TwinReport:
    closed_twins: list[tuple[int, int]]
    semi_closed_twins: list[tuple[int, int]]
    open_twins: list[tuple[int, int]]
    semi_open_twins: list[tuple[int, int]]


def _nested(a: int, b: int) -> bool:
    return a & ~b == 0 or b & ~a == 0


def twin_scan(g: Graph) -> TwinReport:
    rep = TwinReport([], [], [], [])
    closed = g.closed
    opened = [c & ~(1 << v) for v, c in enumerate(closed)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if closed[u] == closed[v]:
                rep.closed_twins.append((u, v))
            if _nested(closed[u], closed[v]):
                rep.semi_closed_twins.append((u, v))
            if opened[u] == opened[v]:
                rep.open_twins.append((u, v))
            if _nested(opened[u], opened[v]):
                rep.semi_open_twins.append((u, v))
    return rep


def admits_ic(g: Graph) -> bool:
    return len(set(g.closed)) == g.n


def admits_sic(g: Graph) -> bool:
    closed = g.closed
    return not any(
        _nested(closed[u], closed[v]) for u in range(g.n) for v in range(u + 1, g.n)
    )


def share(g: Graph, S: SetLike, v: int) -> Fraction:
    """Sum of ``1/dom(u)`` over ``u`` in ``N[v]``, for a detector ``v``."""
    s = _mask(g, S)
    g._check(v)
    if not s >> v & 1:
        raise GraphError(f"vertex {v} is not a detector")
    total = Fraction(0)
    for u in iter_bits(g.closed[v]):
        d = (g.closed[u] & s).bit_count()
        if d == 0:
            raise GraphError(f"vertex {u} is not dominated")
        total += Fraction(1, d)
    return total


def domination_histogram(g: Graph, S: SetLike) -> dict[int, int]:
    s = _mask(g, S)
    hist: dict[int, int] = {}
    for c in g.closed:
        d = (c & s).bit_count()
        hist[d] = hist.get(d, 0) + 1
    return dict(sorted(hist.items()))
