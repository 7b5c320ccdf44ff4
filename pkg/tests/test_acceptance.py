"""Acceptance criteria, one test each.

Every test prints a ``PASS``/``FAIL`` line with the measured numbers before
asserting, so ``pytest -v tests/test_acceptance.py`` (or running this file
directly) gives a one-line verdict per criterion.
"""

import random
import sys
import time
from collections import Counter
from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from oracles import all_graphs, brute_connectivity, brute_extension_cost
from unnet.analysis import is_unn_algebraic, is_unn_naive, one_sided_condition_holds
from unnet.auth import hash_message
from unnet.connectivity import vertex_connectivity
from unnet.construct import (JoinSpec, inner_nodes_unique, join_k_connected, join_unns,
                             maximal_unn_subgraph, smallest_unn_extension)
from unnet.generators import (erdos_renyi, random_connected, random_k_connected, random_pairs,
                              random_tree, random_unn)
from unnet.graph import Graph, adjacency_matrix
from unnet.sharing import WB_OK, decode_wb_batch, poly_eval
from unnet.simulate import (DECODE_FAILURE, SUCCESS, Adversary, build_network,
                            eavesdrop_distribution, forgery_acceptance, key_count_report, mpt_send)


@pytest.fixture
def report(capsys):
    def _report(number, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}")
        return ok
    return _report


def test_criterion_01_deciders_agree(report):
    start = time.perf_counter()
    checked = disagreements = literal_disagreements = 0
    for n in range(1, 7):
        for edges in all_graphs(n):
            g = Graph.from_edges(n, edges)
            a = adjacency_matrix(g)
            naive = is_unn_naive(g)
            disagreements += naive != is_unn_algebraic(a)
            literal_disagreements += naive.is_unn != one_sided_condition_holds(a)
            checked += 1
    rng = random.Random(1)
    for _ in range(1000):
        g = erdos_renyi(rng, 64, rng.choice([0.01, 0.03, 0.1, 0.5]))
        disagreements += is_unn_naive(g) != is_unn_algebraic(adjacency_matrix(g))
        checked += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and elapsed < 30
    report(1, ok, f"{checked} graphs, {disagreements} disagreements, {elapsed:.1f}s "
                  f"(one-sided inequality alone disagrees on {literal_disagreements})")
    assert ok


def test_criterion_02_fixtures(report):
    line = Graph.path(4)
    k4 = Graph.complete(4)
    k22 = Graph.complete_bipartite(2, 2)
    chain = Graph.from_edges(4, [(1, 2), (2, 0), (0, 3)])
    middle = chain.with_edges([(1, 3)])
    top = middle.with_edges([(0, 1), (2, 3)])
    got = []
    for g in (line, k4, k22, chain, middle, top):
        a = is_unn_naive(g)
        b = is_unn_algebraic(adjacency_matrix(g))
        assert a == b
        got.append((a.is_unn, a.witness))
    expected = [(True, None), (True, None), (False, (0, 1)),
                (True, None), (False, (0, 1)), (True, None)]
    ok = (got == expected and chain.edges < middle.edges < top.edges
          and middle == k22 and top == k4)
    report(2, ok, f"line/K4/K22 and chain P4 < K22 < K4 verdicts {got}")
    assert ok


def test_criterion_03_trees(report):
    rng = random.Random(3)
    bad = sum(not inner_nodes_unique(random_tree(rng, rng.randint(1, 50))) for _ in range(1000))
    report(3, bad == 0, f"1000 random trees (n <= 50), {bad} with repeated inner neighborhoods")
    assert bad == 0


def test_criterion_04_unn_joins(report):
    rng = random.Random(4)
    failures = []
    for trial in range(1000):
        left = random_unn(rng, rng.randint(1, 8))
        right = random_unn(rng, rng.randint(1, 8))
        pairs = random_pairs(rng, left.n, right.n, rng.randint(1, min(left.n, right.n)))
        h = join_unns(JoinSpec(left, right, pairs), check=False)
        if not is_unn_naive(h):
            failures.append((left, right, pairs))
    example = ""
    if failures:
        left, right, pairs = failures[0]
        example = (f"; first counterexample joins n={left.n} {left.sorted_edges()} to "
                   f"n={right.n} {right.sorted_edges()} by {pairs}")
    ok = not failures
    report(4, ok, f"1000 random UNN joins, {len(failures)} not UNN{example}")
    assert ok


def test_criterion_05_k_connected_joins(report):
    rng = random.Random(5)
    low = 0
    for trial in range(200):
        k = (1, 2, 3)[trial % 3]
        left = random_k_connected(rng, k, rng.randint(1, 3), 0.2)
        right = random_k_connected(rng, k, rng.randint(1, 3), 0.2)
        h = join_k_connected(left, right, random_pairs(rng, left.n, right.n, k), k)
        low += vertex_connectivity(h) < k
    mismatched = 0
    graphs = 0
    for _ in range(600):
        n = rng.randint(2, 8)
        g = erdos_renyi(rng, n, rng.choice([0.3, 0.5, 0.8]))
        mismatched += vertex_connectivity(g) != brute_connectivity(n, set(g.edges))
        graphs += 1
    ok = low == 0 and mismatched == 0
    report(5, ok, f"200 joins with {low} below k; flow vs vertex-cut enumeration on "
                  f"{graphs} graphs (n <= 8), {mismatched} mismatches")
    assert ok


def test_criterion_06_maximal_subgraph(report):
    rng = random.Random(6)
    not_unn = wrong_exclusion = flagged = 0
    for _ in range(500):
        g = random_connected(rng, rng.randint(1, 30), rng.choice([0.05, 0.2, 0.5]))
        res = maximal_unn_subgraph(g)
        not_unn += not is_unn_naive(res.kept)
        wrong_exclusion += any(res.chosen_tree.degree(v) != 1 for v in res.excluded)
        flagged += len(res.flagged)
    star = maximal_unn_subgraph(Graph.star(4))
    star_ok = len(star.excluded) == 3 and star.excluded <= {1, 2, 3, 4}
    ok = not_unn == 0 and wrong_exclusion == 0 and star_ok
    report(6, ok, f"500 graphs: {not_unn} outputs not UNN, {wrong_exclusion} exclusions of "
                  f"tree-inner vertices ({flagged} excluded vertices had input degree > 1); "
                  f"K_1,4 excludes {sorted(star.excluded)}")
    assert ok


def test_criterion_07_privacy(report):
    p = 17
    unequal = 0
    views = 0
    for d in (2, 3):
        for k in range(d, 6):
            for xs in combinations(range(1, k + 1), d - 1):
                hists = []
                for secret in range(p):
                    hists.append(Counter(tuple(poly_eval((secret,) + c, x, p) for x in xs)
                                         for c in product(range(p), repeat=d - 1)))
                unequal += any(h != hists[0] for h in hists)
                views += 1
    # the same property through the simulator: passive nodes on d - 1 of the paths of K5
    net = build_network(Graph.complete(5), 7)
    for d, passive in ((2, {2}), (3, {2, 3})):
        table = eavesdrop_distribution(net, 0, 1, d, 4, passive, p)
        unequal += any(h != table[0] for h in table.values())
        views += 1
    report(7, unequal == 0, f"{views} (d-1)-share views at p=17, d in {{2,3}}: "
                            f"{unequal} with secret-dependent histograms")
    assert unequal == 0


def test_criterion_08_welch_berlekamp(report):
    p = 17
    start = time.perf_counter()
    total = failures = 0
    for d in range(1, 4):
        for k in range(d, 7):
            e = (k - d) // 2
            xs = list(range(1, k + 1))
            polys = np.array(list(product(range(p), repeat=d)), dtype=np.int64)
            vander = np.array([[pow(x, j, p) for j in range(d)] for x in xs], dtype=np.int64)
            codewords = polys @ vander.T % p
            errors = [np.zeros(k, dtype=np.int64)]
            for w in range(1, e + 1):
                for pos in combinations(range(k), w):
                    for values in product(range(1, p), repeat=w):
                        err = np.zeros(k, dtype=np.int64)
                        err[list(pos)] = values
                        errors.append(err)
            errors = np.array(errors)
            received = ((codewords[:, None, :] + errors[None, :, :]) % p).reshape(-1, k)
            secrets = np.repeat(polys[:, 0], len(errors))
            for s in range(0, len(received), 250_000):
                got, status = decode_wb_batch(xs, received[s:s + 250_000], d, p)
                failures += int(((status != WB_OK) | (got != secrets[s:s + 250_000])).sum())
            total += len(received)
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 60
    report(8, ok, f"{total} received words (all d <= 3, k <= 6, all error patterns within "
                  f"budget), {failures} failures, {elapsed:.1f}s")
    assert ok


def test_criterion_09_mac_forgery(report):
    p = 17
    rates = set()
    for digest, forged in product(range(p), repeat=2):
        if digest == forged:
            continue
        for tag in range(p):
            consistent = [(a, b) for a in range(p) for b in range(p) if (a * digest + b) % p == tag]
            for forged_tag in range(p):
                hits = sum((a * forged + b) % p == forged_tag for a, b in consistent)
                rates.add(Fraction(hits, len(consistent)))
    # the same bound through the message hash, for every hash key without a collision
    message, forged_message = b"pay 5", b"pay 9"
    per_key = forgery_acceptance(message, forged_message, p)
    for r, rate in per_key.items():
        if hash_message(r, message, p) != hash_message(r, forged_message, p):
            rates.add(rate)
    ok = rates == {Fraction(1, p)}
    report(9, ok, f"all 289 keys at p=17: substitution success rates {sorted(map(str, rates))}")
    assert ok


def test_criterion_10_end_to_end(report):
    net = build_network(Graph.complete(5), 10)
    rng = random.Random(10)
    delivered = 0
    for trial in range(500):
        message = bytes(rng.randrange(256) for _ in range(rng.randint(1, 8)))
        adv = Adversary(active={rng.choice([2, 3, 4])}, offset=rng.randrange(1, 257))
        res = mpt_send(net, 0, 1, message, 2, 4, adv, seed=trial)
        delivered += res.status == SUCCESS and res.delivered == message
    detected = wrong = 0
    for trial in range(500):
        message = bytes(rng.randrange(256) for _ in range(rng.randint(1, 8)))
        active = set(rng.sample([2, 3, 4], 2))
        adv = Adversary(active=active, offset=rng.randrange(1, 257))
        res = mpt_send(net, 0, 1, message, 2, 4, adv, seed=trial)
        paths_hit = {i for i in range(len(res.paths_used)) if active & set(res.paths_used.interior(i))}
        assert len(paths_hit) == 2
        detected += res.status == DECODE_FAILURE
        wrong += res.status == SUCCESS and res.delivered != message
    ok = delivered == 500 and detected == 500 and wrong == 0
    report(10, ok, f"one active node: {delivered}/500 delivered; two active nodes on distinct "
                   f"paths: {detected}/500 decode failures, {wrong} silently wrong")
    assert ok


def test_criterion_11_key_accounting(report):
    rng = random.Random(11)
    mismatches = 0
    cases = 0
    for n in range(2, 31):
        for g in (Graph.complete(n), random_connected(rng, n, 0.3)):
            counts = key_count_report(build_network(g, n, restrict_to_tree=True))
            full = key_count_report(build_network(g, n))
            mismatches += counts.provisioned != n - 1
            mismatches += counts.pairwise_bound != n * (n - 1) // 2
            mismatches += full.provisioned != len(g.edges)
            cases += 1
    example = key_count_report(build_network(Graph.complete(30), 0, restrict_to_tree=True))
    report(11, mismatches == 0, f"{cases} networks, {mismatches} count mismatches; K30 restricted "
                                f"holds {example.provisioned} keys vs {example.pairwise_bound} pairwise")
    assert mismatches == 0


def test_criterion_12_extension_optimizer(report):
    start = time.perf_counter()
    graphs = mismatched = 0
    for n in range(1, 6):
        for edges in all_graphs(n):
            g = Graph.from_edges(n, edges)
            if is_unn_naive(g):
                continue
            bnb = smallest_unn_extension(g, method="branch-and-bound")
            exhaustive = smallest_unn_extension(g, method="exhaustive")
            mismatched += not (bnb.optimal and bnb.cost == exhaustive.cost)
            graphs += 1
    # independent check of the exhaustive search itself on the 4-vertex graphs
    for edges in all_graphs(4):
        g = Graph.from_edges(4, edges)
        mismatched += smallest_unn_extension(g, method="exhaustive").cost != \
            brute_extension_cost(4, edges)
    elapsed = time.perf_counter() - start
    ok = mismatched == 0 and elapsed < 60
    report(12, ok, f"{graphs} non-UNN graphs (n <= 5), {mismatched} cost mismatches, {elapsed:.1f}s")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-p", "no:cacheprovider"]))
