"""Vertex connectivity and internally vertex-disjoint paths.

Every vertex ``v`` is split into ``v_in = 2v`` and ``v_out = 2v + 1`` joined by
a unit arc; each undirected edge ``{u, w}`` becomes the arcs ``u_out -> w_in``
and ``w_out -> u_in``.  Integral max flow from ``s_out`` to ``t_in`` then counts
internally vertex-disjoint s-t paths.  Augmenting paths are found by BFS
that visits arcs in increasing head-vertex order, so results are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph, GraphError


class InsufficientPaths(GraphError):
    """Fewer disjoint paths exist than were requested."""

    def __init__(self, source: int, target: int, requested: int, maximum: int):
        super().__init__(f"{requested} disjoint paths requested between {source} and "
                         f"{target}, but at most {maximum} exist")
        self.source = source
        self.target = target
        self.requested = requested
        self.maximum = maximum


@dataclass(frozen=True)
class PathSet:
    source: int
    target: int
    paths: tuple

    def __len__(self):
        return len(self.paths)

    def interior(self, i: int) -> tuple:
        return self.paths[i][1:-1]


class _FlowNetwork:
    """Residual network with parallel arc arrays; arc ``e ^ 1`` is the reverse of ``e``."""

    def __init__(self, size: int):
        self.head = []
        self.cap = []
        self.adj = [[] for _ in range(size)]

    def add_arc(self, u: int, v: int, cap: int):
        self.adj[u].append(len(self.head))
        self.head.append(v)
        self.cap.append(cap)
        self.adj[v].append(len(self.head))
        self.head.append(u)
        self.cap.append(0)

    def finalize(self):
        for arcs in self.adj:
            arcs.sort(key=lambda e: (self.head[e], e))

    def augment(self, s: int, t: int) -> bool:
        parent_arc = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for e in self.adj[u]:
                v = self.head[e]
                if self.cap[e] > 0 and v not in parent_arc:
                    parent_arc[v] = e
                    if v == t:
                        while parent_arc[v] is not None:
                            e = parent_arc[v]
                            self.cap[e] -= 1
                            self.cap[e ^ 1] += 1
                            v = self.head[e ^ 1]
                        return True
                    queue.append(v)
        return False

    def max_flow(self, s: int, t: int, limit: int | None = None) -> int:
        flow = 0
        while (limit is None or flow < limit) and self.augment(s, t):
            flow += 1
        return flow

    def flow_on(self, e: int) -> int:
        # forward arcs have even ids; their reverse capacity equals the flow pushed
        return self.cap[e ^ 1]


_BIG = 1 << 30


def _split_network(g: Graph, s: int, targets, shared_target: bool) -> _FlowNetwork:
    # shared_target: a single target that terminates every path (unbounded);
    # otherwise each target ends at most one path.
    net = _FlowNetwork(2 * g.n + 1)
    unbounded = {s} | (set(targets) if shared_target else set())
    for v in range(g.n):
        net.add_arc(2 * v, 2 * v + 1, _BIG if v in unbounded else 1)
    for u, w in g.edges:
        net.add_arc(2 * u + 1, 2 * w, 1)
        if not g.directed:
            net.add_arc(2 * w + 1, 2 * u, 1)
    sink = 2 * g.n
    for t in targets:
        net.add_arc(2 * t + 1, sink, _BIG if shared_target else 1)
    net.finalize()
    return net


def _decompose(g: Graph, net: _FlowNetwork, s: int, is_end) -> list:
    paths = []
    for e in net.adj[2 * s + 1]:
        if e % 2 or net.flow_on(e) == 0 or net.head[e] == 2 * g.n:
            continue
        path = [s]
        node = net.head[e]  # some v_in
        while True:
            v = node // 2
            path.append(v)
            if is_end(v):
                break
            nxt = [f for f in net.adj[2 * v + 1]
                   if f % 2 == 0 and net.flow_on(f) > 0 and net.head[f] < 2 * g.n]
            node = net.head[nxt[0]]
        paths.append(tuple(path))
    return paths


def local_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Maximum number of internally vertex-disjoint s-t paths (capped at ``limit``)."""
    g._check_vertex(s)
    g._check_vertex(t)
    if s == t:
        raise GraphError("source and target coincide")
    net = _split_network(g, s, [t], shared_target=True)
    return net.max_flow(2 * s + 1, 2 * g.n, limit)


def disjoint_paths(g: Graph, s: int, t: int, k: int) -> PathSet:
    """``k`` internally vertex-disjoint s-t paths.

    Raises :class:`InsufficientPaths` (carrying the achievable maximum) when
    fewer exist.  A direct edge ``{s, t}`` counts as the path ``(s, t)``.
    Paths are ordered by length, then lexicographically.
    """
    g._check_vertex(s)
    g._check_vertex(t)
    if s == t:
        raise GraphError("source and target coincide")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    net = _split_network(g, s, [t], shared_target=True)
    flow = net.max_flow(2 * s + 1, 2 * g.n)
    if flow < k:
        raise InsufficientPaths(s, t, k, flow)
    paths = sorted(_decompose(g, net, s, lambda v: v == t), key=lambda p: (len(p), p))
    assert len(paths) == flow
    return PathSet(s, t, tuple(paths[:k]))


def fan_paths(g: Graph, s: int, targets) -> dict:
    """Paths from ``s`` to as many of ``targets`` as possible, pairwise disjoint except at ``s``.

    Returns ``{target: path}``; unreachable targets are absent.  A target equal
    to ``s`` gets the trivial path ``(s,)``.
    """
    targets = sorted(set(targets))
    result = {}
    if s in targets:
        result[s] = (s,)
        targets.remove(s)
    if not targets:
        return result
    net = _split_network(g, s, targets, shared_target=False)
    net.max_flow(2 * s + 1, 2 * g.n)
    ends = set(targets)
    sink_arc_flow = {}
    for t in targets:
        for e in net.adj[2 * t + 1]:
            if e % 2 == 0 and net.head[e] == 2 * g.n:
                sink_arc_flow[t] = net.flow_on(e)

    def is_end(v):
        return v in ends and sink_arc_flow.get(v, 0) > 0

    for path in _decompose(g, net, s, is_end):
        result[path[-1]] = path
    return result


def vertex_connectivity(g: Graph) -> int:
    """κ(g): min over non-adjacent pairs of local connectivity; κ(K_n) = n - 1.

    Only sources ``0..κ`` need to be tried: a minimum separator of size κ
    misses at least one of them, and that vertex is separated from some other.
    """
    if g.directed:
        raise GraphError("vertex_connectivity needs an undirected graph")
    if g.n < 2:
        raise GraphError("vertex connectivity needs at least 2 vertices")
    best = g.n - 1
    i = 0
    while i <= best and i < g.n:
        for j in range(g.n):
            if j != i and not g.has_edge(i, j):
                best = min(best, local_connectivity(g, i, j, limit=best))
        i += 1
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    if g.n < 2:
        return False
    return vertex_connectivity(g) >= k


def check_path_set(g: Graph, ps: PathSet) -> None:
    """Validate a PathSet using only adjacency; raises AssertionError on violation."""
    seen_interior = set()
    for path in ps.paths:
        assert path[0] == ps.source and path[-1] == ps.target, path
        assert len(set(path)) == len(path), f"path revisits a vertex: {path}"
        for u, v in zip(path, path[1:]):
            assert g.has_edge(u, v), f"({u},{v}) is not an edge"
        inner = set(path[1:-1])
        assert not inner & seen_interior, f"paths share interior vertices: {inner & seen_interior}"
        assert ps.source not in inner and ps.target not in inner
        seen_interior |= inner
