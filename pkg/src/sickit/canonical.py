"""Canonical labelling of small graphs by colour refinement and backtracking.

The canonical leaf is the lexicographically smallest sequence of node
invariants along a root-to-leaf path of the individualisation tree, followed
by the edge certificate of the leaf.  No automorphism pruning is done, so the
cost grows with the automorphism group; graphs up to a few dozen vertices are
fine.
"""

from __future__ import annotations

from typing import Sequence

from .graph import Graph, GraphError, build_graph
from .graph6 import emit_graph6

MAX_CANON_N = 64


def _compress(keys: list) -> list[int]:
    rank = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [rank[k] for k in keys]


def refine(g: Graph, cells: list[int]) -> tuple[list[int], tuple]:
    """Refine to the coarsest equitable partition below ``cells``.

    Returns the new cell index per vertex and an isomorphism-invariant
    summary of the final refinement step.
    """
    ncells = len(set(cells))
    adj = g.adj
    while True:
        keys = [(cells[v], tuple(sorted(cells[u] for u in adj[v]))) for v in range(g.n)]
        new = _compress(keys)
        k = max(new) + 1 if new else 0
        if k == ncells:
            inv = tuple(sorted(keys))
            return new, inv
        cells, ncells = new, k


def _individualize(cells: list[int], v: int) -> list[int]:
    return _compress([2 * c + (0 if u != v else -1) for u, c in enumerate(cells)])


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None) -> list[int]:
    """Return ``perm`` such that ``g.relabel(perm)`` is the canonical representative."""
    if g.n > MAX_CANON_N:
        raise GraphError(f"canonical form limited to n <= {MAX_CANON_N}")
    if g.n == 0:
        return []
    init = _compress(list(colors)) if colors is not None else [0] * g.n
    best: list = [None, None]  # [path, perm]

    def cert(cells: list[int]) -> tuple:
        edges = sorted(
            (min(cells[u], cells[v]), max(cells[u], cells[v])) for u, v in g.edges()
        )
        return tuple(init[v] for v in sorted(range(g.n), key=cells.__getitem__)), tuple(edges)

    def search(cells: list[int], path: list) -> None:
        cells, inv = refine(g, cells)
        path = path + [inv]
        if best[0] is not None and path > best[0][: len(path)]:
            return
        sizes: dict[int, int] = {}
        for c in cells:
            sizes[c] = sizes.get(c, 0) + 1
        if len(sizes) == g.n:
            full = path + [cert(cells)]
            if best[0] is None or full < best[0]:
                best[0], best[1] = full, cells
            return
        target = min((s, c) for c, s in sizes.items() if s > 1)[1]
        for v in range(g.n):
            if cells[v] == target:
                search(_individualize(cells, v), path)

    search(init, [])
    return best[1]


def canonical_form(g: Graph, colors: Sequence[int] | None = None) -> str:
    """A string equal for two (vertex-coloured) graphs iff they are isomorphic."""
    perm = canonical_labeling(g, colors)
    h = build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    label = emit_graph6(h)
    if colors is not None:
        by_pos = [0] * g.n
        for v, p in enumerate(perm):
            by_pos[p] = colors[v]
        label += ":" + ",".join(map(str, by_pos))
    return label


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)
