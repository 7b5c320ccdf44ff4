"""Deciding the unique-neighborhood property.

Three deciders share one verdict type:

* :func:`is_unn_naive` sorts neighborhood fingerprints and looks for equal
  neighbors in the sorted order.
* :func:`is_unn_algebraic` evaluates the integer matrix
  ``L = A·1 + I - A²`` and decides on ``L + Lᵀ ≥ 1``.
* :func:`is_unn_directed` does the same with ``A·Aᵀ`` (out-neighborhoods) or
  ``Aᵀ·A`` (in-neighborhoods).

Off the diagonal, ``L[i, j] = |nb(i)| - |nb(i) ∩ nb(j)|``.  It is zero
exactly when ``nb(i) ⊆ nb(j)``, so the one-sided test ``L ≥ 1`` also rejects
strict containment (the path 0-1-2-3 already fails it at (0, 2)).  The sum
``L[i, j] + L[j, i]`` is the size of the symmetric difference of the two
neighborhoods, which is zero iff they are equal.  The one-sided form is
still available as :func:`one_sided_condition_holds`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import AdjacencyMatrix, Graph, GraphError


@dataclass(frozen=True)
class UnnVerdict:
    is_unn: bool
    witness: Optional[tuple] = None

    def __post_init__(self):
        if self.is_unn != (self.witness is None):
            raise ValueError("a verdict carries a witness iff it is negative")

    def __bool__(self):
        return self.is_unn


def is_unn_naive(g: Graph) -> UnnVerdict:
    """Decide UNN by sorting neighborhood fingerprints.

    The witness is the lexicographically smallest pair ``(u, v)``, ``u < v``,
    with ``nb(u) == nb(v)``.
    """
    if g.directed:
        raise GraphError("is_unn_naive needs an undirected graph; use is_unn_directed")
    return _verdict_from_fingerprints([tuple(sorted(g.neighbors(v))) for v in range(g.n)])


def _verdict_from_fingerprints(prints: list) -> UnnVerdict:
    order = sorted(range(len(prints)), key=lambda v: (prints[v], v))
    best = None
    run_start = 0
    for pos in range(1, len(order) + 1):
        if pos < len(order) and prints[order[pos]] == prints[order[run_start]]:
            continue
        if pos - run_start > 1:
            # ids inside a run are ascending, so its first two form its smallest pair
            pair = (order[run_start], order[run_start + 1])
            if best is None or pair < best:
                best = pair
        run_start = pos
    return UnnVerdict(best is None, best)


def unn_condition_matrix(a: AdjacencyMatrix, side: str = "out") -> np.ndarray:
    """``A·1 + I - A·Aᵀ`` for ``side="out"``, ``Aᵀ·1 + I - Aᵀ·A`` for ``"in"``.

    For a symmetric matrix both reduce to ``A·1 + I - A²``.  Exact int64.
    """
    if side not in ("out", "in"):
        raise ValueError(f"side must be 'out' or 'in', got {side!r}")
    m = a.entries if side == "out" else a.entries.T
    n = a.n
    row_sums = m @ np.ones((n, n), dtype=np.int64)
    return row_sums + np.eye(n, dtype=np.int64) - m @ m.T


def one_sided_condition_holds(a: AdjacencyMatrix, side: str = "out") -> bool:
    """Whether ``L ≥ 1`` holds entrywise.

    Sufficient for unique neighborhoods but not necessary: it fails whenever
    one neighborhood is contained in another.
    """
    return bool((unn_condition_matrix(a, side) >= 1).all())


def symmetrized_condition_matrix(a: AdjacencyMatrix, side: str = "out") -> np.ndarray:
    """``L + Lᵀ``; off-diagonal entries are neighborhood Hamming distances."""
    cond = unn_condition_matrix(a, side)
    return cond + cond.T


def _verdict_from_condition(sym: np.ndarray, upper_only: bool = True) -> UnnVerdict:
    bad = sym <= 0
    if upper_only:
        bad = np.triu(bad, k=1)
    else:
        np.fill_diagonal(bad, False)
    hits = np.argwhere(bad)
    if len(hits) == 0:
        return UnnVerdict(True)
    i, j = (int(x) for x in hits[0])  # argwhere is row-major, so this is lexicographic
    return UnnVerdict(False, (min(i, j), max(i, j)))


def is_unn_algebraic(a: AdjacencyMatrix, upper_only: bool = True) -> UnnVerdict:
    """Decide UNN from the adjacency matrix of an undirected graph.

    ``upper_only=False`` scans the full matrix; the result is identical since
    the symmetrized condition matrix is symmetric.
    """
    if not a.is_symmetric():
        raise GraphError("is_unn_algebraic needs a symmetric matrix; use is_unn_directed")
    return _verdict_from_condition(symmetrized_condition_matrix(a), upper_only)


def is_unn_directed(a: AdjacencyMatrix, side: str = "out") -> UnnVerdict:
    """Unique out-neighborhoods (distinct rows) or in-neighborhoods (distinct columns)."""
    return _verdict_from_condition(symmetrized_condition_matrix(a, side))


def twins(g: Graph, v: int) -> frozenset:
    """Vertices other than ``v`` that share its exact neighborhood."""
    nb = g.neighbors(v)
    return frozenset(w for w in range(g.n) if w != v and g.neighbors(w) == nb)
