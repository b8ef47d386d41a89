"""Simple undirected graphs on vertices 0..n-1, classic instances, and DIMACS I/O.

Graphs are immutable. Adjacency is kept as one integer bitmask per vertex so
edge queries and the coloring engine stay O(1) per probe.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class ParseError(ValueError):
    """Malformed input text; the message names the offending line."""


def normalize_edge(u: int, v: int) -> tuple[int, int]:
    """Return the pair ordered (low, high). Self-loops are rejected."""
    if u == v:
        raise ValueError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph: vertex count plus a set of (u, v) pairs, u < v."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph, normalizing pair order and dropping duplicates."""
        return cls(n, frozenset(normalize_edge(u, v) for u, v in pairs))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask of neighbors per vertex; bit v of adjacency[u] means edge (u, v)."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1) if u != v else False

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(m.bit_count() for m in self.adjacency)

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def parse_graph(text: str) -> Graph:
    """Read a DIMACS edge-format graph ("p edge n m" header, "e u v" lines, 1-indexed).

    Comment lines starting with "c" and blank lines are skipped.  Duplicate
    edges are deduplicated.  Malformed headers, endpoints out of range, and
    self-loops raise ParseError naming the line.
    """
    n = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate header {line!r}")
            if len(fields) != 4 or fields[1] != "edge":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                n = int(fields[2])
                int(fields[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            if n < 0:
                raise ParseError(f"line {lineno}: negative vertex count {line!r}")
        elif fields[0] == "e":
            if n is None:
                raise ParseError(f"line {lineno}: edge before header {line!r}")
            if len(fields) != 3:
                raise ParseError(f"line {lineno}: malformed edge line {line!r}")
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed edge line {line!r}") from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: endpoint out of range {line!r}")
            if u == v:
                raise ParseError(f"line {lineno}: self-loop {line!r}")
            edges.add(normalize_edge(u - 1, v - 1))
        else:
            raise ParseError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise ParseError("missing 'p edge' header")
    return Graph(n, frozenset(edges))


def serialize_graph(g: Graph) -> str:
    """Write DIMACS edge format with edges sorted; parse(serialize(g)) == g."""
    lines = [f"p edge {g.n} {len(g.edges)}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"


def _petersen() -> Graph:
    # Vertices are the 2-element subsets of {0..4}; edges join disjoint subsets.
    pairs = list(itertools.combinations(range(5), 2))
    index = {p: i for i, p in enumerate(pairs)}
    edges = [
        (index[a], index[b])
        for a, b in itertools.combinations(pairs, 2)
        if not (set(a) & set(b))
    ]
    return Graph.from_edges(10, edges)


def _durer() -> Graph:
    # Generalized Petersen graph on (6, 2): outer hexagon 0..5, inner 6..11.
    edges = []
    for i in range(6):
        edges.append((i, (i + 1) % 6))
        edges.append((i, 6 + i))
        edges.append((6 + i, 6 + (i + 2) % 6))
    return Graph.from_edges(12, edges)


def _grotzsch() -> Graph:
    # Mycielski construction applied to the 5-cycle 0..4: shadows 5..9, hub 10.
    cycle = [(i, (i + 1) % 5) for i in range(5)]
    edges = list(cycle)
    for u, v in cycle:
        edges.append((5 + u, v))
        edges.append((u, 5 + v))
    edges.extend((5 + i, 10) for i in range(5))
    return Graph.from_edges(11, edges)


# Published adjacency list (upper triangle, 0-indexed): 12 vertices, 24 edges,
# 4-regular, triangle-free with girth 4.
_CHVATAL_EDGES = (
    (0, 1), (0, 4), (0, 6), (0, 9),
    (1, 2), (1, 5), (1, 7),
    (2, 3), (2, 6), (2, 8),
    (3, 4), (3, 7), (3, 9),
    (4, 5), (4, 8),
    (5, 10), (5, 11),
    (6, 10), (6, 11),
    (7, 8), (7, 11),
    (8, 10),
    (9, 10), (9, 11),
)


def _chvatal() -> Graph:
    return Graph.from_edges(12, _CHVATAL_EDGES)


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValueError("complete(k) requires k >= 1")
    return Graph.from_edges(k, itertools.combinations(range(k), 2))


def complete_minus_matching(k: int) -> Graph:
    """The complete graph on k + 2 vertices with edges (0,1) and (2,3) removed."""
    if k < 2:
        raise ValueError("complete_minus_matching(k) requires k >= 2")
    edges = set(itertools.combinations(range(k + 2), 2))
    edges -= {(0, 1), (2, 3)}
    return Graph.from_edges(k + 2, edges)


def complete_plus_isolated(k: int) -> Graph:
    """The complete graph on vertices 0..k-1 plus the isolated vertex k."""
    if k < 1:
        raise ValueError("complete_plus_isolated(k) requires k >= 1")
    return Graph.from_edges(k + 1, itertools.combinations(range(k), 2))


_FIXED_CLASSICS = {
    "petersen": _petersen,
    "durer": _durer,
    "grotzsch": _grotzsch,
    "chvatal": _chvatal,
}

_PARAMETRIC_CLASSICS = {
    "complete": complete_graph,
    "complete_minus_matching": complete_minus_matching,
    "complete_plus_isolated": complete_plus_isolated,
}

CLASSIC_NAMES = tuple(sorted(_FIXED_CLASSICS)) + tuple(sorted(_PARAMETRIC_CLASSICS))


def classic(name: str, k: int | None = None) -> Graph:
    """Build a named graph; parametric families (complete*) require k."""
    if name in _FIXED_CLASSICS:
        if k is not None:
            raise ValueError(f"{name} takes no parameter")
        return _FIXED_CLASSICS[name]()
    if name in _PARAMETRIC_CLASSICS:
        if k is None:
            raise ValueError(f"{name} requires a parameter k")
        return _PARAMETRIC_CLASSICS[name](k)
    raise ValueError(f"unknown classic graph {name!r}")


def add_edges(g: Graph, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Return g plus the given pairs; every pair must be a current non-edge."""
    new = set()
    for u, v in pairs:
        e = normalize_edge(u, v)
        if not (0 <= e[0] < e[1] < g.n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={g.n}")
        if e in g.edges or e in new:
            raise ValueError(f"({u}, {v}) is already an edge")
        new.add(e)
    return Graph(g.n, g.edges | new)


def apex_extension(g: Graph) -> Graph:
    """Return g plus one new vertex adjacent to every existing vertex."""
    edges = set(g.edges)
    edges.update((v, g.n) for v in range(g.n))
    return Graph(g.n + 1, frozenset(edges))


def non_edges(g: Graph) -> tuple[tuple[int, int], ...]:
    """All unordered vertex pairs that are not edges, in sorted order."""
    return tuple(
        (u, v)
        for u, v in itertools.combinations(range(g.n), 2)
        if not g.adjacency[u] >> v & 1
    )
