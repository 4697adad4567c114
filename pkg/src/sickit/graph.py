"""Simple undirected graphs, vertex sets and neighbourhood queries.

Vertices are the integers ``0..n-1``.  Internally every vertex set is an
``int`` bitmask, which keeps the solver's inner loop down to a handful of
machine-level operations.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator


class GraphError(ValueError):
    pass


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class VertexSet:
    """Immutable set of vertices of a graph on ``n`` vertices, stored as a bitmask."""

    __slots__ = ("n", "mask")

    def __init__(self, n: int, vertices: Iterable[int] | int = ()):
        if isinstance(vertices, int):
            mask = vertices
        elif isinstance(vertices, VertexSet):
            mask = vertices.mask
        else:
            mask = 0
            for v in vertices:
                if not 0 <= v < n:
                    raise GraphError(f"vertex {v} out of range for n={n}")
                mask |= 1 << v
        if mask >> n:
            raise GraphError(f"vertex set has members >= n={n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name, value):
        raise AttributeError("VertexSet is immutable")

    def __reduce__(self):
        return (VertexSet, (self.n, self.mask))

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and 0 <= v < self.n and bool(self.mask >> v & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self.mask == mask_of(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def _other(self, other) -> int:
        return other.mask if isinstance(other, VertexSet) else mask_of(other)

    def __and__(self, other) -> "VertexSet":
        return VertexSet(self.n, self.mask & self._other(other))

    def __or__(self, other) -> "VertexSet":
        return VertexSet(self.n, self.mask | self._other(other))

    def __sub__(self, other) -> "VertexSet":
        return VertexSet(self.n, self.mask & ~self._other(other))

    def __xor__(self, other) -> "VertexSet":
        return VertexSet(self.n, self.mask ^ self._other(other))

    def __le__(self, other) -> bool:
        return self.mask & ~self._other(other) == 0

    def __ge__(self, other) -> bool:
        return self._other(other) & ~self.mask == 0

    def sorted(self) -> list[int]:
        return list(iter_bits(self.mask))

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph given by its vertex count and adjacency sets."""

    n: int
    adj: tuple[frozenset[int], ...]
    closed: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError("adjacency list length differs from n")
        for v, nbrs in enumerate(self.adj):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(
            self, "closed", tuple(mask_of(nbrs) | 1 << v for v, nbrs in enumerate(self.adj))
        )

    # -- basic queries -------------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        return len(degs) == 1 and (k is None or k in degs)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_distances(self, 0)) == self.n

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def relabel(self, perm: list[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges()])

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError("negative vertex count")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj))


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return build_graph(int(data["n"]), [tuple(e) for e in data["edges"]])


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check(v)
    return VertexSet(g.n, g.closed[v])


def open_neighborhood(g: Graph, v: int) -> VertexSet:
    g._check(v)
    return VertexSet(g.n, g.closed[v] & ~(1 << v))


def bfs_distances(g: Graph, source: int, radius: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if radius is not None and dist[u] >= radius:
            continue
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def ball(g: Graph, c: int, r: int) -> VertexSet:
    g._check(c)
    if r < 0:
        raise GraphError("negative radius")
    return VertexSet(g.n, bfs_distances(g, c, r).keys())


class GridFamily(Enum):
    SQR = "sqr"
    KNG = "kng"
    TRI = "tri"
    HEX = "hex"

    @property
    def degree(self) -> int:
        return {"sqr": 4, "kng": 8, "tri": 6, "hex": 3}[self.value]

    @property
    def closed_size(self) -> int:
        return self.degree + 1
