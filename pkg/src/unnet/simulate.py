"""In-process simulation of multipath transmission (MPT) and authentication (MPA).

Each edge carries a secret seed.  MPT splits every message byte into ``k``
shares and sends share ``i`` along disjoint path ``i``; passive adversary
nodes log what crosses them, active ones add an offset to the share values.
The receiver decodes each byte with Welch-Berlekamp.

MPA tags a message digest under one-time keys derived from the edge seeds
between the signer and the chosen neighbors.  The verifier forwards the
message and each tag to the neighbor over vertex-disjoint paths and counts
the replies.
"""

from __future__ import annotations

import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional

from .analysis import is_unn_naive, twins
from .auth import MacKey, Tag, hash_message, mac, verify
from .connectivity import InsufficientPaths, PathSet, disjoint_paths, fan_paths
from .construct import UnnSubgraphResult, maximal_unn_subgraph
from .graph import Graph, GraphError
from .sharing import (DEFAULT_PRIME, WB_INCONSISTENT, WB_MISMATCH, WB_OK, WB_REMAINDER,
                      decode_wb_batch, poly_eval, share)

SUCCESS = "success"
DECODE_FAILURE = "decode-failure"
ROUTING_FAILURE = "routing-failure"


_WB_REASONS = {
    WB_INCONSISTENT: "key equation has no solution",
    WB_REMAINDER: "error locator does not divide Q",
    WB_MISMATCH: "too many shares disagree with the decoded polynomial",
}


class SimulationError(GraphError):
    pass


class KeyExhausted(SimulationError):
    """A signing key for this session was already used."""


@dataclass
class Network:
    graph: Graph
    edge_keys: dict  # (u, v) with u < v -> seed secret
    unn_tree: Optional[UnnSubgraphResult] = None
    used_sessions: set = field(default_factory=set)  # (edge, session) pairs already signed with

    @property
    def key_graph(self) -> Graph:
        """Graph whose edges hold keys (the spanning tree when restricted)."""
        return Graph.from_edges(self.graph.n, self.edge_keys)

    def edge_key(self, u: int, v: int) -> int:
        e = (min(u, v), max(u, v))
        if e not in self.edge_keys:
            raise SimulationError(f"no key provisioned on edge {e}")
        return self.edge_keys[e]

    def mac_key(self, u: int, v: int, session: int, owner: Optional[int] = None,
                p: int = DEFAULT_PRIME) -> MacKey:
        """Fresh one-time (a, b, r) for this edge and session, derived from the edge seed."""
        rng = random.Random(f"{self.edge_key(u, v)}:{session}")
        return MacKey.random(rng, p, owner)


def build_network(g: Graph, seed: int, restrict_to_tree: bool = False) -> Network:
    """Provision one distinct secret per edge (per spanning-tree edge if restricted)."""
    if g.directed:
        raise SimulationError("networks are undirected")
    if not g.is_connected():
        raise SimulationError("network graph must be connected")
    unn_tree = None
    edges = g.sorted_edges()
    if restrict_to_tree:
        unn_tree = maximal_unn_subgraph(g)
        assert is_unn_naive(unn_tree.kept)
        edges = unn_tree.chosen_tree.sorted_edges()
    rng = random.Random(seed)
    keys = {}
    seen = set()
    for e in edges:
        key = rng.getrandbits(64)
        while key in seen:
            key = rng.getrandbits(64)
        seen.add(key)
        keys[e] = key
    return Network(g, keys, unn_tree)


@dataclass(frozen=True)
class Adversary:
    passive: frozenset = frozenset()
    active: frozenset = frozenset()
    offset: int = 1
    # bytes to corrupt; None corrupts every byte of every traversing share
    selective_bytes: Optional[frozenset] = None
    reply_mode: str = "flip"  # active neighbors' votes: always-accept | always-reject | flip

    def __post_init__(self):
        object.__setattr__(self, "passive", frozenset(self.passive))
        object.__setattr__(self, "active", frozenset(self.active))
        if self.selective_bytes is not None:
            object.__setattr__(self, "selective_bytes", frozenset(self.selective_bytes))
        if self.reply_mode not in ("always-accept", "always-reject", "flip"):
            raise ValueError(f"unknown reply mode {self.reply_mode!r}")

    @property
    def nodes(self) -> frozenset:
        return self.passive | self.active

    def check_endpoints(self, *endpoints):
        bad = self.nodes & set(endpoints)
        if bad:
            raise SimulationError(f"adversary may not occupy endpoints {sorted(bad)}")


NO_ADVERSARY = Adversary()


@dataclass(frozen=True)
class TransmissionResult:
    delivered: Optional[bytes]
    status: str
    transcript: dict  # passive node -> ((path, byte, x, y), ...)
    paths_used: Optional[PathSet]
    wire: tuple = ()  # records as received by the receiver
    detail: str = ""


def mpt_send(net: Network, alice: int, bob: int, message: bytes, d: int, k: int,
             adv: Adversary = NO_ADVERSARY, seed: int = 0,
             p: int = DEFAULT_PRIME) -> TransmissionResult:
    """Send ``message`` from alice to bob over ``k`` disjoint paths with (d, k) sharing."""
    if alice == bob:
        raise SimulationError("sender and receiver coincide")
    if not 1 <= d <= k:
        raise SimulationError(f"need 1 <= d <= k, got d={d} k={k}")
    if any(b >= p for b in message):
        raise SimulationError(f"message bytes must be below the field size {p}")
    adv.check_endpoints(alice, bob)
    try:
        paths = disjoint_paths(net.graph, alice, bob, k)
    except InsufficientPaths as exc:
        return TransmissionResult(None, ROUTING_FAILURE, {}, None, detail=str(exc))

    rng = random.Random(seed)
    sharings = [share(byte, d, k, rng, p) for byte in message]
    transcript = defaultdict(list)
    received = []
    for i, path in enumerate(paths.paths):
        ys = [sv.shares[i][1] for sv in sharings]
        x = i + 1
        for node in path[1:-1]:
            if node in adv.passive:
                transcript[node].extend((i, j, x, y) for j, y in enumerate(ys))
            if node in adv.active:
                ys = [(y + adv.offset) % p
                      if adv.selective_bytes is None or j in adv.selective_bytes else y
                      for j, y in enumerate(ys)]
        received.extend((i, j, x, y) for j, y in enumerate(ys))

    transcript = {node: tuple(recs) for node, recs in sorted(transcript.items())}
    xs = list(range(1, k + 1))
    ys = [[0] * k for _ in message]
    for i, j, x, y in received:
        ys[j][i] = y
    values, status = decode_wb_batch(xs, ys, d, p) if message else ([], [])
    for j, (value, code) in enumerate(zip(values, status)):
        if code != WB_OK:
            return TransmissionResult(None, DECODE_FAILURE, transcript, paths, tuple(received),
                                      f"byte {j}: {_WB_REASONS[int(code)]} (budget {(k - d) // 2})")
        if value > 255:
            return TransmissionResult(None, DECODE_FAILURE, transcript, paths, tuple(received),
                                      f"byte {j}: decoded {value} is not a byte")
    out = bytes(int(v) for v in values)
    return TransmissionResult(out, SUCCESS, transcript, paths, tuple(received))


def view_positions(paths: PathSet, passive) -> list:
    """Indices of the paths whose interior touches a passive node."""
    passive = set(passive)
    return [i for i in range(len(paths)) if passive & set(paths.interior(i))]


def eavesdrop_distribution(net: Network, alice: int, bob: int, d: int, k: int, passive,
                           p: int = 17) -> dict:
    """Exact distribution of the passive adversary's view for every one-symbol secret.

    Enumerates all ``p**(d-1)`` sharing polynomials per secret and returns
    ``{secret: Counter(view)}`` where a view is the tuple of share values on
    the observed paths.
    """
    paths = disjoint_paths(net.graph, alice, bob, k)
    xs = [i + 1 for i in view_positions(paths, passive)]
    table = {}
    for secret in range(p):
        hist = Counter()
        for coeffs in product(range(p), repeat=d - 1):
            poly = (secret,) + coeffs
            hist[tuple(poly_eval(poly, x, p) for x in xs)] += 1
        table[secret] = hist
    return table


# --- authentication ---------------------------------------------------------

def mpa_sign(net: Network, alice: int, message: bytes, neighbor_subset, session: int = 0,
             p: int = DEFAULT_PRIME) -> dict:
    """One tag per selected neighbor, ``{neighbor: Tag}``, under one-time session keys."""
    subset = sorted(set(neighbor_subset))
    if not subset:
        raise SimulationError("an empty neighbor subset carries no authentication")
    key_graph = net.key_graph
    missing = [w for w in subset if not key_graph.has_edge(alice, w)]
    if missing:
        raise SimulationError(f"{missing} share no key with {alice}")
    tags = {}
    for w in subset:
        e = (min(alice, w), max(alice, w))
        if (e, session) in net.used_sessions:
            raise KeyExhausted(f"key on edge {e} already used in session {session}")
        key = net.mac_key(alice, w, session, owner=w, p=p)
        tags[w] = mac(key, hash_message(key.hash_key, message, p))
        net.used_sessions.add((e, session))
    return tags


@dataclass(frozen=True)
class AuthResult:
    decision: str  # accept | reject
    votes: dict  # neighbor -> accept | reject | abstain
    threshold_used: int
    warnings: tuple = ()
    candidates: frozenset = frozenset()  # vertices the accepting neighborhood points to


def neighbor_vote(net: Network, neighbor: int, message: bytes, tag: Tag, session: int,
                  p: int = DEFAULT_PRIME) -> bool:
    """Honest neighbor: accept if the tag verifies under any key it holds for this session.

    Neighbors know keys, not names, so a tag made by a twin of the claimed
    signer verifies just as well.
    """
    for w in sorted(net.key_graph.neighbors(neighbor)):
        key = net.mac_key(neighbor, w, session, p=p)
        if verify(key, hash_message(key.hash_key, message, p), tag):
            return True
    return False


def mpa_verify(net: Network, bob: int, alice_claimed: int, message: bytes, tags: dict,
               threshold: int, adv: Adversary = NO_ADVERSARY, session: int = 0,
               p: int = DEFAULT_PRIME, unreachable: str = "abstain") -> AuthResult:
    """Ask the claimed signer's neighbors to check their tags; accept on ``threshold`` yes-votes.

    Requests travel from bob over paths that are vertex-disjoint apart from
    bob.  An active node on a request path corrupts the reply per
    ``adv.reply_mode``, as does an active neighbor.
    """
    if threshold > len(tags):
        raise SimulationError(f"threshold {threshold} exceeds the {len(tags)} tags received")
    if unreachable not in ("abstain", "reject"):
        raise ValueError(f"unknown unreachable policy {unreachable!r}")
    adv.check_endpoints(bob)
    key_graph = net.key_graph
    claimed_nb = key_graph.neighbors(alice_claimed)
    asked = sorted(w for w in tags if w in claimed_nb)
    routes = fan_paths(net.graph, bob, asked)
    votes = {}
    for w in sorted(tags):
        if w not in claimed_nb:
            votes[w] = "reject"
            continue
        if w not in routes:
            votes[w] = unreachable
            continue
        honest = neighbor_vote(net, w, message, tags[w], session, p)
        tampered = w in adv.active or any(v in adv.active for v in routes[w][1:-1])
        if tampered:
            vote = {"always-accept": True, "always-reject": False, "flip": not honest}[adv.reply_mode]
        else:
            vote = honest
        votes[w] = "accept" if vote else "reject"

    accepting = sum(v == "accept" for v in votes.values())
    decision = "accept" if accepting >= threshold else "reject"
    warnings = []
    same = twins(key_graph, alice_claimed)
    if not is_unn_naive(net.graph):
        warnings.append("network is not a UNN: a neighborhood need not identify its signer")
    if same:
        warnings.append(f"claimed signer {alice_claimed} shares its neighborhood with {sorted(same)}")
    return AuthResult(decision, votes, threshold, tuple(warnings), frozenset({alice_claimed}) | same)


def forgery_acceptance(message: bytes, forged: bytes, p: int = 17) -> dict:
    """Exhaustive substitution-forgery statistics for one honest vote.

    For every hash key ``r``, every MAC key ``(a, b)`` and every forged tag
    value, counts how often the forged (message, tag) verifies among keys
    consistent with the observed genuine tag.  Returns, per ``r``, the
    fraction maximized over forged tag values and observations.
    """
    rates = {}
    for r in range(p):
        d_true = hash_message(r, message, p)
        d_forged = hash_message(r, forged, p)
        worst = 0
        for observed in range(p):
            consistent = [(a, b) for a in range(p) for b in range(p)
                          if (a * d_true + b) % p == observed]
            for forged_tag in range(p):
                hits = sum((a * d_forged + b) % p == forged_tag for a, b in consistent)
                worst = max(worst, Fraction(hits, len(consistent)))
        rates[r] = worst
    return rates


@dataclass(frozen=True)
class KeyCounts:
    provisioned: int
    tree_bound: int
    pairwise_bound: int


def key_count_report(net: Network) -> KeyCounts:
    n = net.graph.n
    return KeyCounts(len(net.edge_keys), n - 1, n * (n - 1) // 2)


SWEEP_HEADER = "# unnet-sweep v1"
SWEEP_FIELDS = ("d", "k", "adversary", "trials", "success_rate", "leaked")


def sweep(net: Network, alice: int, bob: int, d_values, k_values, adversary_sizes,
          trials: int = 20, seed: int = 0, message: bytes = b"unnet") -> list:
    """Success rate and leakage for random adversaries of each size.

    In every trial ``size`` random nodes other than the endpoints act both
    passively and actively.  ``leaked`` is "yes" if in any trial the
    adversary saw shares from at least ``d`` distinct paths.
    """
    rng = random.Random(seed)
    others = [v for v in range(net.graph.n) if v not in (alice, bob)]
    rows = []
    for d in d_values:
        for k in k_values:
            if d > k:
                continue
            for size in adversary_sizes:
                if size > len(others):
                    continue
                ok = 0
                leaked = False
                for _ in range(trials):
                    nodes = frozenset(rng.sample(others, size))
                    adv = Adversary(passive=nodes, active=nodes)
                    res = mpt_send(net, alice, bob, message, d, k, adv, seed=rng.getrandbits(32))
                    ok += res.status == SUCCESS and res.delivered == message
                    if res.paths_used is not None:
                        leaked |= len(view_positions(res.paths_used, nodes)) >= d
                rows.append({"d": d, "k": k, "adversary": size, "trials": trials,
                             "success_rate": ok / trials, "leaked": "yes" if leaked else "no"})
    return rows
