"""Seeded random graph generators used by property tests and sweeps."""

from __future__ import annotations

import random

from .analysis import is_unn_naive
from .construct import join_k_connected
from .graph import Graph


def erdos_renyi(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)
                                if rng.random() < p))


def random_unn(rng: random.Random, n: int, p: float = 0.5, max_tries: int = 10_000) -> Graph:
    """Rejection-sample G(n, p) until the graph is a UNN."""
    for _ in range(max_tries):
        g = erdos_renyi(rng, n, p)
        if is_unn_naive(g):
            return g
    raise RuntimeError(f"no UNN on {n} vertices after {max_tries} draws")


def random_tree(rng: random.Random, n: int) -> Graph:
    """Uniform labelled tree via a random Prüfer sequence."""
    if n <= 2:
        return Graph.path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = (x for x in range(n) if degree[x] == 1)
    edges.append((u, w))
    return Graph.from_edges(n, edges)


def random_connected(rng: random.Random, n: int, p: float = 0.2) -> Graph:
    """A random tree plus independent extra edges with probability ``p``."""
    tree = random_tree(rng, n)
    extra = [(u, v) for u in range(n) for v in range(u + 1, n)
             if not tree.has_edge(u, v) and rng.random() < p]
    return tree.with_edges(extra)


def random_pairs(rng: random.Random, left_n: int, right_n: int, count: int) -> list:
    return list(zip(rng.sample(range(left_n), count), rng.sample(range(right_n), count)))


def random_k_connected(rng: random.Random, k: int, blocks: int = 2, extra_p: float = 0.0) -> Graph:
    """Grow a k-connected graph from ``blocks`` copies of K_{k+1} by k-pair joins.

    Extra edges (probability ``extra_p`` per non-edge) keep it k-connected.
    """
    g = Graph.complete(k + 1)
    for _ in range(blocks - 1):
        block = Graph.complete(k + 1)
        g = join_k_connected(g, block, random_pairs(rng, g.n, block.n, k), k)
    if extra_p:
        g = g.with_edges(e for e in g.non_edges() if rng.random() < extra_p)
    return g
