"""Building and extracting unique-neighborhood networks."""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .analysis import is_unn_naive
from .connectivity import is_k_connected
from .graph import Graph, GraphError


class ConstructionError(GraphError):
    pass


@dataclass(frozen=True)
class JoinSpec:
    left: Graph
    right: Graph
    pairs: tuple  # ((u in left, v in right), ...)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(u), int(v)) for u, v in self.pairs))
        if not self.pairs:
            raise ConstructionError("a join needs at least one pair")
        us = [u for u, _ in self.pairs]
        vs = [v for _, v in self.pairs]
        if len(set(us)) != len(us) or len(set(vs)) != len(vs):
            raise ConstructionError("pair endpoints must be distinct on each side")
        for u in us:
            if not 0 <= u < self.left.n:
                raise ConstructionError(f"left endpoint {u} out of range")
        for v in vs:
            if not 0 <= v < self.right.n:
                raise ConstructionError(f"right endpoint {v} out of range")
        if self.left.directed or self.right.directed:
            raise ConstructionError("joins are defined for undirected graphs")


def disjoint_union_join(spec: JoinSpec) -> Graph:
    """Disjoint union with right ids shifted by ``left.n``, plus one edge per pair."""
    off = spec.left.n
    edges = set(spec.left.edges)
    edges |= {(u + off, v + off) for u, v in spec.right.edges}
    edges |= {(u, v + off) for u, v in spec.pairs}
    return Graph.from_edges(spec.left.n + spec.right.n, edges)


def join_unns(spec: JoinSpec, check: bool = True) -> Graph:
    """Join two UNNs by the pairing edges.

    The result can fail to be a UNN when a vertex of degree <= 1 on one side
    ends up with the same neighborhood as a vertex on the other side, e.g.
    K1 joined to an endpoint of K2 gives a path whose ends both see the middle.
    With minimum degree >= 2 on both sides the result is always a UNN.  With
    ``check=True`` a non-UNN result raises :class:`ConstructionError`.
    """
    if not is_unn_naive(spec.left):
        raise ConstructionError("left graph is not a UNN")
    if not is_unn_naive(spec.right):
        raise ConstructionError("right graph is not a UNN")
    h = disjoint_union_join(spec)
    if check:
        verdict = is_unn_naive(h)
        if not verdict:
            raise ConstructionError(f"joined graph is not a UNN; witness {verdict.witness}")
    return h


def join_k_connected(left: Graph, right: Graph, pairs, k: int) -> Graph:
    """Join two k-connected graphs by k disjoint pairing edges; the result is k-connected."""
    pairs = tuple(pairs)
    if len(pairs) != k:
        raise ConstructionError(f"need exactly k={k} pairs, got {len(pairs)}")
    spec = JoinSpec(left, right, pairs)
    for name, g in (("left", left), ("right", right)):
        if not is_k_connected(g, k):
            raise ConstructionError(f"{name} graph is not {k}-connected")
    h = disjoint_union_join(spec)
    assert is_k_connected(h, k)
    return h


def spanning_tree(g: Graph) -> Graph:
    """BFS tree rooted at vertex 0, neighbors visited in increasing order."""
    if g.directed:
        raise GraphError("spanning_tree needs an undirected graph")
    if g.n == 0:
        return g
    seen = {0}
    queue = deque([0])
    edges = []
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u)):
            if w not in seen:
                seen.add(w)
                edges.append((u, w))
                queue.append(w)
    if len(seen) != g.n:
        raise GraphError("graph is disconnected")
    return Graph.from_edges(g.n, edges)


def inner_nodes_unique(tree: Graph) -> bool:
    """Check that vertices of degree >= 2 in a tree have pairwise distinct neighborhoods."""
    if not tree.is_tree():
        raise GraphError("input is not a tree")
    inner = [v for v in range(tree.n) if tree.degree(v) >= 2]
    prints = {tree.neighbors(v) for v in inner}
    return len(prints) == len(inner)


@dataclass(frozen=True)
class UnnSubgraphResult:
    kept: Graph
    vertices: tuple  # kept id -> original id
    excluded: frozenset
    chosen_tree: Graph
    flagged: frozenset = field(default_factory=frozenset)  # excluded, yet degree > 1 in the input


def maximal_unn_subgraph(g: Graph, attach: str = "any") -> UnnSubgraphResult:
    """Vertex-maximal UNN subgraph from a spanning tree.

    Inner nodes (tree degree >= 2) are kept with all input edges among them.
    Every inner node with at least one leaf neighbor in the tree gets its
    smallest-id leaf re-attached by the tree edge; the other leaves are
    excluded.  ``attach="all"`` restricts re-attachment to inner nodes whose
    tree neighbors other than their parent are all leaves.

    Excluded vertices whose degree in ``g`` exceeds 1 are reported in ``flagged``.
    """
    if g.directed:
        raise GraphError("maximal_unn_subgraph needs an undirected graph")
    if attach not in ("any", "all"):
        raise ValueError(f"attach must be 'any' or 'all', got {attach!r}")
    tree = spanning_tree(g)
    inner = {v for v in range(g.n) if tree.degree(v) >= 2}
    if not inner:
        # n <= 2: the whole graph (K1 or K2) is already a UNN
        kept, ids = g.induced(range(g.n))
        return UnnSubgraphResult(kept, tuple(ids), frozenset(), tree)

    parent = _bfs_parents(tree)
    edges = {(u, v) for u, v in g.edges if u in inner and v in inner}
    attached = set()
    for v in sorted(inner):
        leaves = sorted(w for w in tree.neighbors(v) if tree.degree(w) == 1)
        if not leaves:
            continue
        if attach == "all":
            children = [w for w in tree.neighbors(v) if w != parent[v]]
            if any(tree.degree(w) != 1 for w in children):
                continue
        c = leaves[0]
        attached.add(c)
        edges.add((min(v, c), max(v, c)))

    keep = sorted(inner | attached)
    index = {v: i for i, v in enumerate(keep)}
    kept = Graph.from_edges(len(keep), ((index[u], index[v]) for u, v in edges))
    excluded = frozenset(range(g.n)) - set(keep)
    flagged = frozenset(v for v in excluded if g.degree(v) > 1)
    return UnnSubgraphResult(kept, tuple(keep), excluded, tree, flagged)


def _bfs_parents(tree: Graph) -> dict:
    parent = {0: None}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in sorted(tree.neighbors(u)):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return parent


# --- smallest UNN extension -------------------------------------------------

@dataclass(frozen=True)
class ExtensionSolution:
    added_edges: tuple
    cost: object
    optimal: bool
    explored: int = 0


EXHAUSTIVE_MAX_N = 6


def _masks(g: Graph) -> list:
    return [sum(1 << w for w in g.neighbors(v)) for v in range(g.n)]


def _feasible(masks) -> bool:
    return len(set(masks)) == len(masks)


def _apply(masks, edge):
    u, v = edge
    out = list(masks)
    out[u] |= 1 << v
    out[v] |= 1 << u
    return out


def _candidates(g: Graph, costs) -> list:
    """Non-edges with their costs, sorted by cost then edge."""
    table = {}
    if costs is not None:
        for e, c in costs.items():
            u, v = e
            table[(min(u, v), max(u, v))] = c
    cands = []
    for e in g.non_edges():
        c = table.get(e, 1)
        if c < 0:
            raise ConstructionError(f"negative cost {c} for edge {e}")
        cands.append((c, e))
    cands.sort()
    return cands


def _solution_key(cost, edges):
    return (cost, len(edges), tuple(sorted(edges)))


def smallest_unn_extension(g: Graph, costs: Optional[Mapping] = None,
                           budget: int = 100_000, method: str = "auto") -> ExtensionSolution:
    """Cheapest set of new edges that turns ``g`` into a UNN.

    ``costs`` maps non-edges to nonnegative costs (missing ones cost 1).
    ``method`` is ``"exhaustive"``, ``"branch-and-bound"`` or ``"auto"``
    (exhaustive for ``n <= 6``).  Branch and bound expands at most ``budget``
    nodes; ``optimal`` is False when it stopped early.
    """
    if g.directed:
        raise GraphError("smallest_unn_extension needs an undirected graph")
    if method == "auto":
        method = "exhaustive" if g.n <= EXHAUSTIVE_MAX_N else "branch-and-bound"
    cands = _candidates(g, costs)
    masks = _masks(g)
    if _feasible(masks):
        return ExtensionSolution((), 0, True)
    if method == "exhaustive":
        return _exhaustive(masks, cands)
    if method == "branch-and-bound":
        return _branch_and_bound(masks, cands, budget)
    raise ValueError(f"unknown method {method!r}")


def _exhaustive(masks, cands) -> ExtensionSolution:
    best = None
    count = 0
    for size in range(len(cands) + 1):
        for combo in itertools.combinations(range(len(cands)), size):
            count += 1
            m = masks
            for j in combo:
                m = _apply(m, cands[j][1])
            if not _feasible(m):
                continue
            edges = [cands[j][1] for j in combo]
            key = _solution_key(sum(cands[j][0] for j in combo), edges)
            if best is None or key < best:
                best = key
    return ExtensionSolution(best[2], best[0], True, count)


def _collision_pairs(masks) -> list:
    groups = {}
    for v, m in enumerate(masks):
        groups.setdefault(m, []).append(v)
    pairs = []
    for members in groups.values():
        pairs += [(members[i], members[i + 1]) for i in range(0, len(members) - 1, 2)]
    return pairs


def _lower_bound(masks, cands, start: int):
    """Admissible bound on the cost still needed, using candidates ``start..``.

    Separating a colliding pair needs a new edge at one of its two vertices.
    The pairs are vertex-disjoint, so one edge serves at most two of them:
    the bound is the larger of the most expensive pair and half the sum.
    """
    pairs = _collision_pairs(masks)
    if not pairs:
        return 0
    cheapest = []
    for u, v in pairs:
        c = next((c for c, e in cands[start:] if u in e or v in e), None)
        if c is None:
            return math.inf
        cheapest.append(c)
    return max(max(cheapest), Fraction(sum(cheapest)) / 2)


def _branch_and_bound(masks, cands, budget: int) -> ExtensionSolution:
    incumbent = None  # (key, edges)
    tick = itertools.count()
    h0 = _lower_bound(masks, cands, 0)
    frontier = [(h0, 0, next(tick), 0, ())] if h0 != math.inf else []
    explored = 0
    complete = True
    while frontier:
        f, g_cost, _, start, chosen = heapq.heappop(frontier)
        if incumbent is not None and f >= incumbent[0][0]:
            break
        if explored >= budget:
            complete = False
            break
        explored += 1
        m = masks
        for j in chosen:
            m = _apply(m, cands[j][1])
        for j in range(start, len(cands)):
            c, e = cands[j]
            child = chosen + (j,)
            cm = _apply(m, e)
            cost = g_cost + c
            if _feasible(cm):
                edges = [cands[i][1] for i in child]
                key = _solution_key(cost, edges)
                if incumbent is None or key < incumbent[0]:
                    incumbent = (key, edges)
                continue
            h = _lower_bound(cm, cands, j + 1)
            if h == math.inf:
                continue
            if incumbent is not None and cost + h >= incumbent[0][0]:
                continue
            heapq.heappush(frontier, (cost + h, cost, next(tick), j + 1, child))
    if incumbent is None:
        edges = _greedy_completion(masks, cands)
        key = _solution_key(sum(c for c, e in cands if e in edges), edges)
        return ExtensionSolution(key[2], key[0], False, explored)
    key = incumbent[0]
    return ExtensionSolution(key[2], key[0], complete, explored)


def _greedy_completion(masks, cands) -> list:
    """Feasible (not necessarily cheapest) extension used when search runs out of budget."""
    chosen = []
    m = masks
    remaining = list(cands)
    while not _feasible(m):
        u, v = _collision_pairs(m)[0]
        pick = next(((c, e) for c, e in remaining if u in e or v in e), None)
        if pick is None:
            pick = remaining[0]
        remaining.remove(pick)
        chosen.append(pick)
        m = _apply(m, pick[1])
    # drop edges that are not needed, most expensive first
    for item in sorted(chosen, reverse=True):
        trial = [x for x in chosen if x != item]
        tm = masks
        for _, e in trial:
            tm = _apply(tm, e)
        if _feasible(tm):
            chosen = trial
    return [e for _, e in chosen]
