"""Graph representation, neighborhood queries and edge-list / DOT I/O.

Vertices are dense integer ids ``0..n-1``.  Undirected edges are stored once,
as ``(min, max)``; directed edges are ordered pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np


class GraphError(ValueError):
    """Invalid graph structure (self-loop, out-of-range endpoint, ...)."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        canonical = set()
        for u, v in self.edges:
            u, v = int(u), int(v)
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not self.directed and u > v:
                u, v = v, u
            canonical.add((u, v))
        object.__setattr__(self, "edges", frozenset(canonical))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, directed: bool = False) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges), directed)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, ((u, a + v) for u in range(a) for v in range(b)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """K_{1,leaves} with center 0."""
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @cached_property
    def _out(self) -> tuple:
        out = [set() for _ in range(self.n)]
        for u, v in self.edges:
            out[u].add(v)
            if not self.directed:
                out[v].add(u)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def _in(self) -> tuple:
        if not self.directed:
            return self._out
        inc = [set() for _ in range(self.n)]
        for u, v in self.edges:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    def neighbors(self, v: int, incoming: bool = False) -> frozenset:
        self._check_vertex(v)
        return self._in[v] if incoming else self._out[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        if not self.directed and u > v:
            u, v = v, u
        return (u, v) in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def non_edges(self) -> list:
        """Vertex pairs that could still be joined, in lexicographic order."""
        if self.directed:
            return [(u, v) for u in range(self.n) for v in range(self.n)
                    if u != v and (u, v) not in self.edges]
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if (u, v) not in self.edges]

    def with_edges(self, extra: Iterable) -> "Graph":
        return Graph(self.n, self.edges | frozenset(tuple(e) for e in extra), self.directed)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list]:
        """Induced subgraph relabelled to ``0..m-1``; returns it with the old ids."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        edges = [(new[u], new[v]) for u, v in self.edges if u in new and v in new]
        return Graph.from_edges(len(old), edges, self.directed), old

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self._out[u] | self._in[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self) -> bool:
        return not self.directed and len(self.edges) == self.n - 1 and self.is_connected()

    def _check_vertex(self, v: int):
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")


@dataclass(frozen=True)
class Neighborhood:
    vertex: int
    members: frozenset


def neighborhood(g: Graph, v: int, incoming: bool = False) -> Neighborhood:
    """Neighbor set of ``v``; out-neighbors for directed graphs unless ``incoming``."""
    return Neighborhood(v, g.neighbors(v, incoming))


class AdjacencyMatrix:
    """Read-only 0/1 integer matrix view of a graph."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise GraphError(f"adjacency matrix must be square, got shape {arr.shape}")
        if not np.isin(arr, (0, 1)).all():
            raise GraphError("adjacency matrix entries must be 0 or 1")
        if arr.shape[0] and np.diagonal(arr).any():
            raise GraphError("adjacency matrix must have a zero diagonal")
        arr.setflags(write=False)
        self.entries = arr

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def is_symmetric(self) -> bool:
        return bool((self.entries == self.entries.T).all())

    def to_graph(self) -> Graph:
        directed = not self.is_symmetric()
        rows, cols = np.nonzero(self.entries)
        pairs = zip(rows.tolist(), cols.tolist())
        if not directed:
            pairs = ((u, v) for u, v in pairs if u < v)
        return Graph.from_edges(self.n, pairs, directed)

    def __eq__(self, other):
        return isinstance(other, AdjacencyMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"AdjacencyMatrix({self.entries.tolist()})"


def adjacency_matrix(g: Graph) -> AdjacencyMatrix:
    a = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges:
        a[u, v] = 1
        if not g.directed:
            a[v, u] = 1
    return AdjacencyMatrix(a)


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format.

    The first non-comment line is ``n <count> [directed]``; every further line
    holds one edge ``u v``.  ``#`` starts a comment.  Duplicate edges collapse.
    """
    n = None
    directed = False
    edges = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) not in (2, 3):
                raise GraphParseError(lineno, f"expected header 'n <count> [directed]', got {raw!r}")
            if len(parts) == 3:
                if parts[2] != "directed":
                    raise GraphParseError(lineno, f"unknown header flag {parts[2]!r}")
                directed = True
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(lineno, f"vertex count {parts[1]!r} is not an integer") from None
            if n < 0:
                raise GraphParseError(lineno, "vertex count must be nonnegative")
            continue
        if len(parts) != 2:
            raise GraphParseError(lineno, f"expected '<u> <v>', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, f"non-integer endpoint in {raw!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(lineno, f"endpoint out of range 0..{n - 1}: {raw!r}")
        if u == v:
            raise GraphParseError(lineno, f"self-loop at vertex {u}")
        if not directed and u > v:
            u, v = v, u
        edges.add((u, v))
    if n is None:
        raise GraphParseError(0, "missing header line 'n <count>'")
    return Graph(n, frozenset(edges), directed)


def to_edge_list(g: Graph) -> str:
    header = f"n {g.n} directed" if g.directed else f"n {g.n}"
    lines = [header] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_graph(g: Graph, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_edge_list(g))


def to_dot(g: Graph) -> str:
    """DOT export.  Only isolated vertices get standalone node statements."""
    kind, arrow = ("digraph", "->") if g.directed else ("graph", "--")
    touched = {v for e in g.edges for v in e}
    lines = [f"{kind} {{"]
    lines += [f"  {v};" for v in range(g.n) if v not in touched]
    lines += [f"  {u} {arrow} {v};" for u, v in g.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"
