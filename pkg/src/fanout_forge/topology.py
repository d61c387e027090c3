"""Undirected coupling graphs: built-in lattices and edge-list files."""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import ParseError

HEAVY_HEX_LONG_ROWS = 8
HEAVY_HEX_ROW_LENGTH = 16
HEAVY_HEX_BRIDGES = 4


@dataclass(frozen=True)
class CouplingGraph:
    n: int
    edges: frozenset[tuple[int, int]]
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "_adjacency", tuple(tuple(sorted(a)) for a in adj))

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adjacency

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adjacency), default=0)

    def distances(self, source: int) -> list[int]:
        """BFS hop counts from ``source``; -1 for unreachable nodes."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self._adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def eccentricity(self, v: int) -> int:
        dist = self.distances(v)
        if min(dist) < 0:
            raise ValueError("graph is disconnected")
        return max(dist)

    def is_connected(self) -> bool:
        return self.n == 0 or min(self.distances(0)) >= 0

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def full(n: int) -> CouplingGraph:
    return CouplingGraph(n, frozenset(itertools.combinations(range(n), 2)), name=f"full-{n}")


def line(n: int) -> CouplingGraph:
    return CouplingGraph(n, frozenset((i, i + 1) for i in range(n - 1)), name=f"line-{n}")


def grid(dims) -> CouplingGraph:
    """Axis-aligned grid, row-major (last axis varies fastest)."""
    dims = [int(d) for d in dims]
    if not dims or min(dims) < 1:
        raise ValueError(f"grid extents must be >= 1: {dims}")
    strides = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    n = strides[0] * dims[0]
    edges = set()
    for coord in itertools.product(*(range(d) for d in dims)):
        idx = sum(c * s for c, s in zip(coord, strides))
        for k, d in enumerate(dims):
            if coord[k] + 1 < d:
                edges.add((idx, idx + strides[k]))
    return CouplingGraph(n, frozenset(edges), name="grid-" + "x".join(map(str, dims)))


def heavy_hex_156() -> CouplingGraph:
    """156-qubit heavy-hex lattice in fez-style indexing.

    Eight rows of 16 chained qubits, with a row of 4 bridge qubits between
    consecutive long rows.  Bridges sit on columns 3, 7, 11, 15 below even
    long rows and on columns 1, 5, 9, 13 below odd ones, so e.g. bridge 78
    joins 69 and 89, and bridge 98 joins 91 and 111.
    """
    edges = set()
    row_start = 0
    for r in range(HEAVY_HEX_LONG_ROWS):
        for c in range(HEAVY_HEX_ROW_LENGTH - 1):
            edges.add((row_start + c, row_start + c + 1))
        if r == HEAVY_HEX_LONG_ROWS - 1:
            break
        bridge_start = row_start + HEAVY_HEX_ROW_LENGTH
        next_row = bridge_start + HEAVY_HEX_BRIDGES
        offset = 3 if r % 2 == 0 else 1
        for k in range(HEAVY_HEX_BRIDGES):
            col = 4 * k + offset
            edges.add((row_start + col, bridge_start + k))
            edges.add((bridge_start + k, next_row + col))
        row_start = next_row
    n = row_start + HEAVY_HEX_ROW_LENGTH
    return CouplingGraph(n, frozenset(edges), name="heavy-hex-156 (fez-style)")


_N_HEADER = re.compile(r"^n\s*=\s*(\d+)$")


def load_edge_list(text: str) -> CouplingGraph:
    """Parse ``u v`` lines; ``#`` starts a comment, ``n=<count>`` fixes the node count."""
    edges = set()
    n_header = None
    max_index = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _N_HEADER.match(line)
        if m:
            n_header = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"expected 'u v', got {raw.strip()!r}", lineno)
        u, v = int(parts[0]), int(parts[1])
        if u == v:
            raise ParseError(f"self-loop on node {u}", lineno)
        if n_header is not None and max(u, v) >= n_header:
            raise ParseError(f"node {max(u, v)} exceeds declared n={n_header}", lineno)
        max_index = max(max_index, u, v)
        edges.add((min(u, v), max(u, v)))
    n = n_header if n_header is not None else max_index + 1
    return CouplingGraph(n, frozenset(edges), name="edge-list")


def emit_edge_list(g: CouplingGraph) -> str:
    lines = [f"# {g.name}", f"n={g.n}"]
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def builtin(name: str, n: int | None = None, dims=None) -> CouplingGraph:
    if name == "heavy-hex-156":
        return heavy_hex_156()
    if name == "grid":
        if not dims:
            raise ValueError("grid topology needs dims")
        return grid(dims)
    if n is None:
        raise ValueError(f"{name} topology needs n")
    if name == "full":
        return full(n)
    if name == "line":
        return line(n)
    raise ValueError(f"unknown topology {name!r}")
