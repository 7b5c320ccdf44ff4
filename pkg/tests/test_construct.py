import random
from fractions import Fraction

import pytest

from oracles import all_graphs, brute_extension_cost, brute_is_unn
from unnet.analysis import is_unn_naive
from unnet.connectivity import vertex_connectivity
from unnet.construct import (ConstructionError, JoinSpec, disjoint_union_join, inner_nodes_unique,
                             join_k_connected, join_unns, maximal_unn_subgraph,
                             smallest_unn_extension, spanning_tree)
from unnet.generators import random_connected, random_pairs, random_tree, random_unn
from unnet.graph import Graph, GraphError


def test_join_two_edges_gives_line(line4):
    k2 = Graph.complete(2)
    assert join_unns(JoinSpec(k2, k2, [(1, 0)])) == line4


def test_join_rejects_non_unn_input(k22):
    with pytest.raises(ConstructionError):
        join_unns(JoinSpec(k22, Graph.complete(2), [(0, 0)]))


def test_join_degree_one_counterexample_is_caught():
    # K1 joined to an endpoint of K2 is a path on 3 vertices: both ends see the middle
    spec = JoinSpec(Graph(1), Graph.complete(2), [(0, 0)])
    with pytest.raises(ConstructionError):
        join_unns(spec)
    h = join_unns(spec, check=False)
    assert h == Graph.path(3)
    assert not is_unn_naive(h)


def test_join_spec_validation():
    k2 = Graph.complete(2)
    with pytest.raises(ConstructionError):
        JoinSpec(k2, k2, [])
    with pytest.raises(ConstructionError):
        JoinSpec(k2, k2, [(0, 0), (0, 1)])
    with pytest.raises(ConstructionError):
        JoinSpec(k2, k2, [(2, 0)])


def test_join_min_degree_two_preserves_unn():
    rng = random.Random(11)
    checked = 0
    while checked < 300:
        left = random_unn(rng, rng.randint(3, 9), 0.6)
        right = random_unn(rng, rng.randint(3, 9), 0.6)
        if min(left.degree(v) for v in range(left.n)) < 2:
            continue
        if min(right.degree(v) for v in range(right.n)) < 2:
            continue
        pairs = random_pairs(rng, left.n, right.n, rng.randint(1, min(left.n, right.n)))
        assert is_unn_naive(join_unns(JoinSpec(left, right, pairs)))
        checked += 1


def test_join_k_connected_complete_graphs():
    k5 = Graph.complete(5)
    h = join_k_connected(k5, k5, [(i, i) for i in range(4)], 4)
    assert h.n == 10
    assert vertex_connectivity(h) >= 4
    assert is_unn_naive(h)


def test_join_k_connected_checks_inputs(line4, k4):
    with pytest.raises(ConstructionError):
        join_k_connected(k4, k4, [(0, 0)], 2)
    with pytest.raises(ConstructionError):
        join_k_connected(line4, k4, [(0, 0), (1, 1)], 2)


def test_disjoint_union_offsets(k4):
    h = disjoint_union_join(JoinSpec(k4, Graph.complete(2), [(3, 1)]))
    assert h.has_edge(4, 5) and h.has_edge(3, 5) and not h.has_edge(3, 4)


def test_spanning_tree_of_cycle():
    assert spanning_tree(Graph.cycle(4)).edges == {(0, 1), (0, 3), (1, 2)}


def test_spanning_tree_disconnected():
    with pytest.raises(GraphError):
        spanning_tree(Graph.from_edges(3, [(0, 1)]))


def test_inner_nodes_of_small_trees(line4):
    assert inner_nodes_unique(line4)
    assert inner_nodes_unique(Graph.star(4))
    with pytest.raises(GraphError):
        inner_nodes_unique(Graph.cycle(4))


def test_inner_nodes_unique_random_trees():
    rng = random.Random(1)
    for _ in range(300):
        assert inner_nodes_unique(random_tree(rng, rng.randint(1, 50)))


def test_extract_star():
    res = maximal_unn_subgraph(Graph.star(4))
    assert res.vertices == (0, 1)
    assert res.excluded == {2, 3, 4}
    assert res.kept == Graph.complete(2)
    assert not res.flagged


def test_extract_complete_graph(k4):
    # the BFS tree of K4 is a star at 0, so only the center and one leaf survive
    res = maximal_unn_subgraph(k4)
    assert res.vertices == (0, 1)
    assert res.excluded == {2, 3}
    assert res.flagged == {2, 3}


def test_extract_line_keeps_everything(line4):
    res = maximal_unn_subgraph(line4)
    assert res.excluded == frozenset()
    assert res.kept == line4


@pytest.mark.parametrize("n", [1, 2])
def test_extract_tiny(n):
    res = maximal_unn_subgraph(Graph.complete(n))
    assert res.kept == Graph.complete(n) and not res.excluded


def test_extract_random_connected_graphs():
    rng = random.Random(6)
    for _ in range(200):
        g = random_connected(rng, rng.randint(1, 20), rng.choice([0.1, 0.3, 0.6]))
        res = maximal_unn_subgraph(g)
        assert is_unn_naive(res.kept)
        for v in res.excluded:
            assert res.chosen_tree.degree(v) == 1
        for i, u in enumerate(res.vertices):
            for j, v in enumerate(res.vertices):
                if res.kept.has_edge(i, j):
                    assert g.has_edge(u, v)


def test_extract_all_leaves_rule_can_fail():
    # a path 0-1-2-3 with a pendant 4 on 1: vertex 1 has a non-leaf child, so
    # under the stricter rule its leaf is not re-attached
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (1, 4)])
    assert maximal_unn_subgraph(g, attach="all").excluded == {0, 4}
    assert maximal_unn_subgraph(g).excluded == {4}
    with pytest.raises(ValueError):
        maximal_unn_subgraph(g, attach="some")


def test_extension_fixtures(k22):
    sol = smallest_unn_extension(k22)
    assert sol.cost == 2 and sol.optimal
    assert sol.added_edges == ((0, 1), (2, 3))
    star = smallest_unn_extension(Graph.star(3))
    assert star.cost == 1 and star.added_edges == ((1, 2),)


def test_extension_of_unn_is_empty(line4):
    assert smallest_unn_extension(line4).added_edges == ()


def test_extension_uses_costs(k22):
    costs = {(0, 1): 5, (2, 3): 5}
    sol = smallest_unn_extension(k22, costs)
    # (0, 1) and (2, 3) are the only non-edges, so both must be bought
    assert sol.cost == brute_extension_cost(4, set(k22.edges), costs) == 10


def test_extension_fraction_costs():
    costs = {(1, 2): Fraction(1, 3)}
    assert smallest_unn_extension(Graph.star(3), costs).cost == Fraction(1, 3)


def test_extension_rejects_negative_cost(k22):
    with pytest.raises(ConstructionError):
        smallest_unn_extension(k22, {(0, 1): -1})


def test_extension_matches_brute_force_n4():
    for edges in all_graphs(4):
        g = Graph.from_edges(4, edges)
        expected = brute_extension_cost(4, edges)
        for method in ("exhaustive", "branch-and-bound"):
            sol = smallest_unn_extension(g, method=method)
            assert sol.cost == expected
            final = set(edges) | set(sol.added_edges)
            assert brute_is_unn(4, final)


def test_branch_and_bound_budget_falls_back_to_greedy():
    g = Graph(7)
    sol = smallest_unn_extension(g, method="branch-and-bound", budget=1)
    assert not sol.optimal
    assert is_unn_naive(g.with_edges(sol.added_edges))


def test_branch_and_bound_random_costs_match_exhaustive():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(3, 5)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)
                                 if rng.random() < 0.4])
        costs = {e: rng.randint(1, 4) for e in g.non_edges()}
        a = smallest_unn_extension(g, costs, method="exhaustive")
        b = smallest_unn_extension(g, costs, method="branch-and-bound")
        assert a.cost == b.cost
