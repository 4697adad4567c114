"""Reading and writing the graph6 text format (one undirected graph per line)."""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph, GraphError, build_graph

HEADER = ">>graph6<<"
MAX_N = 68719476735  # 2**36 - 1, the largest order the format can express


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= MAX_N:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError(f"graph6 cannot encode n={n}")


def _decode_n(data: str) -> tuple[int, int]:
    """Return (n, number of header characters consumed)."""
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != "~":
        return ord(data[0]) - 63, 1
    if len(data) > 1 and data[1] == "~":
        width, start = 6, 2
    else:
        width, start = 3, 1
    chunk = data[start : start + width]
    if len(chunk) < width:
        raise GraphError("truncated graph6 size header")
    n = 0
    for ch in chunk:
        n = (n << 6) | (ord(ch) - 63)
    return n, start + width


def parse_graph6(line: str) -> Graph:
    data = line.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    for ch in data:
        if not 63 <= ord(ch) <= 126:
            raise GraphError(f"invalid graph6 character {ch!r}")
    n, pos = _decode_n(data)
    payload = data[pos:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(payload) < need:
        raise GraphError(f"truncated graph6 payload: need {need} bytes, got {len(payload)}")
    if len(payload) > need:
        raise GraphError("trailing characters after graph6 payload")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = ord(payload[k // 6]) - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def emit_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        adj_j = g.adj[j]
        for i in range(j):
            bits.append(1 if i in adj_j else 0)
    bits.extend([0] * (-len(bits) % 6))
    out = [_encode_n(g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if not line or line == HEADER:
            continue
        yield parse_graph6(line)


def read_graph6_file(path: str) -> list[Graph]:
    with open(path) as fh:
        return list(read_graph6_lines(fh))


def write_graph6(graphs: Iterable[Graph], fh: TextIO) -> None:
    for g in graphs:
        fh.write(emit_graph6(g) + "\n")
