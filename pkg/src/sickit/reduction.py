"""Polynomial reduction from 3-SAT to the minimum self-identifying code problem.

Each variable gets a 14-vertex gadget holding its two literal vertices, each
clause an 8-vertex gadget whose port is joined to the clause's three literal
vertices.  All gadget vertices other than literals and ports are forced into
every code by the singleton-difference rule, so with ``K = |core| + N`` a code
of size at most ``K`` picks exactly one literal per variable, and every port
then needs one of its literals chosen.

Vertex order: variable gadgets by variable index, then clause gadgets by
clause index.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass

from .codes import SIC, is_code
from .graph import Graph, GraphError, VertexSet, build_graph
from .solver import SolveBudget, solve_min

# Local layout of a variable gadget.
#   0 x, 1 not-x, 2 y, 3 z, 4-7 anchors a1..a4, 8 p, 9 q, 10 r, 11 s, 12 u, 13 w
# y and z can only be told apart by a literal detector; the rest is forced.
VAR_SIZE = 14
VAR_EDGES = [
    (0, 1), (0, 2), (1, 2), (2, 3),
    (0, 4), (0, 5), (1, 6), (1, 7),
    (3, 8), (8, 10), (10, 4),
    (3, 9), (9, 11), (11, 6),
    (5, 12), (12, 13), (13, 7),
    (4, 7), (5, 6), (6, 8), (7, 8),
]
VAR_CORE = list(range(3, 14))

# Clause gadget: port 0 plus seven forced vertices 1..7.
CLAUSE_SIZE = 8
CLAUSE_EDGES = [
    (1, 2), (1, 4), (1, 6), (2, 3), (2, 6),
    (3, 4), (3, 7), (4, 7), (5, 6), (5, 7),
    (0, 6),
]
CLAUSE_CORE = list(range(1, 8))


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class Cnf3:
    """A 3-CNF; literals are signed 1-based variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ReductionError("formula needs at least one variable")
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for c in self.clauses:
            if len(c) != 3:
                raise ReductionError(f"clause {c} does not have exactly three literals")
            if any(lit == 0 or abs(lit) > self.num_vars for lit in c):
                raise ReductionError(f"clause {c} has a literal out of range")
            if len({abs(lit) for lit in c}) != 3:
                raise ReductionError(f"clause {c} repeats a variable")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment) -> bool:
        """``assignment[i - 1]`` is the truth value of variable ``i``."""
        return all(
            any(assignment[abs(lit) - 1] == (lit > 0) for lit in c) for c in self.clauses
        )

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.num_clauses}"]
        lines += [" ".join(map(str, c)) + " 0" for c in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> Cnf3:
    header = None
    literals: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):  # end marker used by some benchmark sets
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ReductionError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ReductionError(f"line {lineno}: malformed header {line!r}") from None
            continue
        if header is None:
            raise ReductionError(f"line {lineno}: clause before header")
        try:
            literals += [int(tok) for tok in line.split()]
        except ValueError:
            raise ReductionError(f"line {lineno}: bad literal in {line!r}") from None
    if header is None:
        raise ReductionError("missing 'p cnf' header")
    if literals and literals[-1] != 0:
        raise ReductionError("last clause is not terminated by 0")
    clauses, cur = [], []
    for lit in literals:
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    n, m = header
    if len(clauses) != m:
        raise ReductionError(f"header announces {m} clauses, found {len(clauses)}")
    return Cnf3(n, tuple(clauses))


@dataclass
class ReductionInstance:
    graph: Graph
    K: int
    literal_vertex: dict[int, int]
    clause_vertex: dict[int, int]
    forced_core: VertexSet
    phi: Cnf3

    def sidecar(self) -> dict:
        return {
            "K": self.K,
            "literal_vertices": {str(lit): v for lit, v in sorted(self.literal_vertex.items())},
            "clause_vertices": {str(j): v for j, v in sorted(self.clause_vertex.items())},
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2)


def reduce_3sat(phi: Cnf3) -> ReductionInstance:
    edges: list[tuple[int, int]] = []
    core: list[int] = []
    literal_vertex: dict[int, int] = {}
    clause_vertex: dict[int, int] = {}
    for i in range(1, phi.num_vars + 1):
        base = (i - 1) * VAR_SIZE
        edges += [(base + a, base + b) for a, b in VAR_EDGES]
        core += [base + v for v in VAR_CORE]
        literal_vertex[i] = base
        literal_vertex[-i] = base + 1
    offset = phi.num_vars * VAR_SIZE
    for j, clause in enumerate(phi.clauses):
        base = offset + j * CLAUSE_SIZE
        edges += [(base + a, base + b) for a, b in CLAUSE_EDGES]
        core += [base + v for v in CLAUSE_CORE]
        clause_vertex[j] = base
        edges += [(base, literal_vertex[lit]) for lit in clause]
    n = offset + phi.num_clauses * CLAUSE_SIZE
    return ReductionInstance(
        graph=build_graph(n, edges),
        K=len(core) + phi.num_vars,
        literal_vertex=literal_vertex,
        clause_vertex=clause_vertex,
        forced_core=VertexSet(n, core),
        phi=phi,
    )


def assignment_to_code(inst: ReductionInstance, assignment) -> VertexSet:
    """The forced core plus the vertex of every true literal."""
    lits = [inst.literal_vertex[i if val else -i] for i, val in enumerate(assignment, 1)]
    return inst.forced_core | VertexSet(inst.graph.n, lits)


def extract_assignment(inst: ReductionInstance, S) -> list[bool]:
    s = VertexSet(inst.graph.n, S)
    if len(s) > inst.K:
        raise ReductionError(f"code has {len(s)} vertices, budget is {inst.K}")
    if not is_code(inst.graph, s, SIC):
        raise ReductionError("set is not a self-identifying code")
    assignment = []
    for i in range(1, inst.phi.num_vars + 1):
        pos, neg = inst.literal_vertex[i] in s, inst.literal_vertex[-i] in s
        if pos == neg:
            raise ReductionError(f"variable {i} has {'both' if pos else 'neither'} literal vertices")
        assignment.append(pos)
    if not inst.phi.satisfied_by(assignment):
        raise ReductionError("extracted assignment does not satisfy the formula")
    return assignment


def brute_force_sat(phi: Cnf3) -> list[bool] | None:
    for bits in itertools.product([False, True], repeat=phi.num_vars):
        if phi.satisfied_by(bits):
            return list(bits)
    return None


@dataclass
class SelfCheckReport:
    sat_oracle: bool
    sic_leq_K: bool
    agree: bool
    K: int
    sic_value: int | None
    status: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def reduction_selfcheck(phi: Cnf3, budget: SolveBudget | None = None) -> SelfCheckReport:
    """Compare brute-force satisfiability with ``SIC(graph) <= K``.

    An unfinished solve is inconclusive and reported as disagreement.
    """
    if phi.num_vars > 4 or phi.num_clauses > 8:
        raise ReductionError("self-check is limited to N <= 4 and M <= 8")
    inst = reduce_3sat(phi)
    sat = brute_force_sat(phi) is not None
    res = solve_min(inst.graph, SIC, budget)
    leq = res.optimal and res.size <= inst.K
    agree = res.optimal and sat == leq
    if agree and leq:
        extract_assignment(inst, res.witness)
    return SelfCheckReport(sat, leq, agree, inst.K, res.size, res.status)


def random_cnf3(num_vars: int, num_clauses: int, rng: random.Random) -> Cnf3:
    clauses = []
    for _ in range(num_clauses):
        vs = rng.sample(range(1, num_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Cnf3(num_vars, tuple(clauses))


def all_sign_patterns(vars3=(1, 2, 3)) -> Cnf3:
    """The eight clauses over three variables; unsatisfiable."""
    clauses = [
        tuple(v if s else -v for v, s in zip(vars3, signs))
        for signs in itertools.product([True, False], repeat=3)
    ]
    return Cnf3(max(vars3), tuple(clauses))
