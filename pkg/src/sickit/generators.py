"""Named graph families."""

from __future__ import annotations

from .graph import Graph, GraphError, build_graph


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs at least one vertex")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle length must be at least 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError("complete graph needs at least one vertex")
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty(n: int) -> Graph:
    return build_graph(n, [])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H; vertex (a, b) gets index ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        for b1, b2 in h.edges():
            edges.append((a * h.n + b1, a * h.n + b2))
    for a1, a2 in g.edges():
        for b in range(h.n):
            edges.append((a1 * h.n + b, a2 * h.n + b))
    return build_graph(g.n * h.n, edges)


def hypercube(d: int) -> Graph:
    """Q_d on vertices 0..2^d-1; adjacent iff the indices differ in one bit."""
    if d < 0:
        raise GraphError("hypercube dimension must be non-negative")
    n = 1 << d
    return build_graph(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if not v >> b & 1])


def triangle_ring(k: int) -> Graph:
    """Cubic graph on 6k vertices that splits into 2k disjoint triangles.

    Triangles T_0..T_{2k-1} are chained in a ring and each is joined to its
    antipode; equivalently, the truncation of the Moebius ladder on 2k vertices.
    """
    if k < 2:
        raise GraphError("triangle ring needs k >= 2")
    t = 2 * k
    edges = []
    for i in range(t):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (b, c), (a, c)]
        edges.append((b, 3 * ((i + 1) % t)))
        if i < k:
            edges.append((c, 3 * (i + k) + 2))
    return build_graph(6 * k, edges)


def prism_ring(k: int) -> Graph:
    """C_{3k} □ P_2."""
    return cartesian_product(cycle(3 * k), path(2))


def generate(family: str, *params) -> Graph:
    """Build a graph by family name, e.g. ``generate("hypercube", 4)``."""
    family = family.lower()
    if family == "path":
        return path(*params)
    if family == "cycle":
        return cycle(*params)
    if family == "complete":
        return complete(*params)
    if family == "empty":
        return empty(*params)
    if family == "petersen":
        if params:
            raise GraphError("petersen takes no parameters")
        return petersen()
    if family == "hypercube":
        return hypercube(*params)
    if family == "cartesian_product":
        return cartesian_product(*params)
    if family == "triangle_ring":
        return triangle_ring(*params)
    if family == "prism_ring":
        return prism_ring(*params)
    if family == "torus":
        from .grids import TorusSpec, torus

        fam, m, n = params
        return torus(TorusSpec.of(fam, m, n))
    raise GraphError(f"unknown graph family {family!r}")
