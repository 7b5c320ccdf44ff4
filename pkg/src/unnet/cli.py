"""Command-line entry point: ``unnet <subcommand> ...``.

Exit status is 0 on success, 1 on domain errors (a graph that is not a UNN
where one is required, infeasible routing, decode failure, malformed graph
file) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from fractions import Fraction

from . import analysis, construct, connectivity, sharing, simulate
from .graph import GraphError, adjacency_matrix, read_graph, to_dot, to_edge_list

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pairs(text):
    out = []
    for item in text.split(","):
        try:
            u, v = item.split(":")
            out.append((int(u), int(v)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected pairs like 0:0,1:2, got {text!r}") from None
    return out


def _share_point(text):
    try:
        x, y = text.split(":")
        return int(x), int(y)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a share 'x:y', got {text!r}") from None


def parse_adversary(text, offset=1, reply_mode="flip"):
    """``"passive=1,2;active=3"`` -> Adversary.  Empty text means no adversary."""
    passive, active = set(), set()
    for part in filter(None, (p.strip() for p in (text or "").split(";"))):
        role, _, nodes = part.partition("=")
        ids = set(_int_list(nodes))
        if role == "passive":
            passive |= ids
        elif role == "active":
            active |= ids
        else:
            raise UsageError(f"unknown adversary role {role!r}; use passive=... or active=...")
    return simulate.Adversary(frozenset(passive), frozenset(active), offset, reply_mode=reply_mode)


def _load(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt_edges(edges):
    return " ".join(f"{u}-{v}" for u, v in edges) or "none"


def cmd_analyze(args):
    g = _load(args.file)
    if g.directed:
        a = adjacency_matrix(g)
        status = EXIT_OK
        for side in ("out", "in"):
            v = analysis.is_unn_directed(a, side)
            print(f"UNN ({side}): yes" if v else f"UNN ({side}): no; witness {v.witness[0]},{v.witness[1]}")
        print("method: algebraic")
        return status
    verdicts = {}
    if args.method in ("naive", "both"):
        verdicts["naive"] = analysis.is_unn_naive(g)
    if args.method in ("algebraic", "both"):
        verdicts["algebraic"] = analysis.is_unn_algebraic(adjacency_matrix(g))
    first = next(iter(verdicts.values()))
    if len({v for v in verdicts.values()}) > 1:
        print(f"methods disagree: {verdicts}", file=sys.stderr)
        return EXIT_DOMAIN
    print("UNN: yes" if first else f"UNN: no; witness {first.witness[0]},{first.witness[1]}")
    print(f"method: {args.method}")
    return EXIT_OK


def cmd_extract(args):
    g = _load(args.file)
    res = construct.maximal_unn_subgraph(g)
    if args.format == "text":
        lines = [f"kept: {' '.join(map(str, res.vertices))}",
                 f"excluded: {' '.join(map(str, sorted(res.excluded))) or 'none'}",
                 f"tree: {_fmt_edges(res.chosen_tree.sorted_edges())}"]
        if res.flagged:
            lines.append(f"flagged (degree > 1 in input): {' '.join(map(str, sorted(res.flagged)))}")
        _emit("\n".join(lines) + "\n", args.output)
    else:
        body = to_dot(res.kept) if args.format == "dot" else to_edge_list(res.kept)
        mapping = f"# kept vertex i is input vertex: {' '.join(map(str, res.vertices))}\n"
        if args.format == "dot":
            mapping = mapping.replace("#", "//", 1)
        _emit(mapping + body, args.output)
    if args.plot:
        from .plotting import plot_graph
        plot_graph(g, args.plot, highlight=res.vertices, muted=res.excluded,
                   title="maximal UNN subgraph")
    return EXIT_OK


def _read_costs(path):
    costs = {}
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise GraphError(f"{path} line {lineno}: expected '<u> <v> <cost>'")
            u, v = int(parts[0]), int(parts[1])
            costs[(min(u, v), max(u, v))] = Fraction(parts[2])
    return costs


def _fmt_cost(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else str(c)


def cmd_extend(args):
    costs = _read_costs(args.costs) if args.costs else None
    g = _load(args.file)
    sol = construct.smallest_unn_extension(g, costs, budget=args.budget, method=args.method)
    if args.format == "edges":
        _emit(to_edge_list(g.with_edges(sol.added_edges)), args.output)
    else:
        _emit(f"added: {_fmt_edges(sol.added_edges)}\ncost: {_fmt_cost(sol.cost)}\n"
              f"optimal: {'yes' if sol.optimal else 'no'}\n", args.output)
    return EXIT_OK


def cmd_join(args):
    left, right = _load(args.file1), _load(args.file2)
    if args.k is not None:
        h = construct.join_k_connected(left, right, args.pairs, args.k)
    else:
        h = construct.join_unns(construct.JoinSpec(left, right, tuple(args.pairs)))
    _emit(to_dot(h) if args.format == "dot" else to_edge_list(h), args.output)
    return EXIT_OK


def cmd_kappa(args):
    print(connectivity.vertex_connectivity(_load(args.file)))
    return EXIT_OK


def cmd_paths(args):
    if args.k < 1:
        raise UsageError("--k must be at least 1")
    g = _load(args.file)
    try:
        ps = connectivity.disjoint_paths(g, args.source, args.target, args.k)
    except connectivity.InsufficientPaths as exc:
        print(f"infeasible: max {exc.maximum}")
        return EXIT_DOMAIN
    for path in ps.paths:
        print(" ".join(map(str, path)))
    return EXIT_OK


def cmd_simulate(args):
    adv = parse_adversary(args.adversary, args.offset)
    if not 1 <= args.d <= args.k:
        raise UsageError("need 1 <= --d <= --k")
    g = _load(args.file)
    net = simulate.build_network(g, args.seed, restrict_to_tree=args.restrict_tree)
    message = args.message.encode("utf-8")
    res = simulate.mpt_send(net, args.source, args.target, message, args.d, args.k, adv, args.seed)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("# unnet-wire v1\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["path", "byte", "x", "y"])
        w.writerows(res.wire)
        _emit(buf.getvalue(), args.output)
    else:
        counts = simulate.key_count_report(net)
        lines = [f"status: {res.status}"]
        if res.delivered is not None:
            lines.append(f"delivered: {res.delivered.decode('utf-8', errors='replace')}")
        if res.detail:
            lines.append(f"detail: {res.detail}")
        if res.paths_used is not None:
            lines += [f"path {i}: {' '.join(map(str, p))}" for i, p in enumerate(res.paths_used.paths)]
        for node, recs in res.transcript.items():
            seen = sorted({r[0] for r in recs})
            lines.append(f"node {node} observed shares on paths {','.join(map(str, seen))}")
        lines.append(f"keys: {counts.provisioned} (tree bound {counts.tree_bound}, "
                     f"pairwise bound {counts.pairwise_bound})")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if res.status == simulate.SUCCESS else EXIT_DOMAIN


def cmd_sweep(args):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    g = _load(args.file)
    net = simulate.build_network(g, args.seed, restrict_to_tree=args.restrict_tree)
    rows = simulate.sweep(net, args.source, args.target, args.d, args.k, args.adversary_sizes,
                          args.trials, args.seed, args.message.encode("utf-8"))
    buf = io.StringIO()
    buf.write(simulate.SWEEP_HEADER + "\n")
    w = csv.DictWriter(buf, fieldnames=simulate.SWEEP_FIELDS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({**row, "success_rate": f"{row['success_rate']:.4f}"})
    _emit(buf.getvalue(), args.output)
    if args.plot:
        from .plotting import plot_sweep
        plot_sweep(rows, args.plot, title=f"{args.source} -> {args.target}")
    return EXIT_OK


def cmd_share(args):
    import random
    sv = sharing.share(args.secret, args.d, args.k, random.Random(args.seed), args.p)
    for x, y in sv.shares:
        print(f"{x} {y}")
    return EXIT_OK


def cmd_reconstruct(args):
    if len(args.shares) < args.d:
        raise UsageError(f"need at least d={args.d} shares")
    if len(args.shares) == args.d:
        print(sharing.reconstruct(args.shares, args.p, args.d))
    else:
        print(sharing.decode_wb(args.shares, args.d, args.p))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="unnet", description="Unique-neighborhood network toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decide whether a graph is a UNN")
    p.add_argument("file")
    p.add_argument("--method", choices=["naive", "algebraic", "both"], default="naive")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("extract", help="maximal UNN subgraph via a spanning tree")
    p.add_argument("file")
    p.add_argument("--format", choices=["text", "edges", "dot"], default="text")
    p.add_argument("--output")
    p.add_argument("--plot", help="write a PNG/PDF drawing of kept and excluded vertices")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("extend", help="cheapest edge set making the graph a UNN")
    p.add_argument("file")
    p.add_argument("--costs", help="file of '<u> <v> <cost>' lines; unlisted edges cost 1")
    p.add_argument("--budget", type=int, default=100_000, help="branch-and-bound node budget")
    p.add_argument("--method", choices=["auto", "exhaustive", "branch-and-bound"], default="auto")
    p.add_argument("--format", choices=["text", "edges"], default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("join", help="join two UNNs (or k-connected graphs) by pairing edges")
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--pairs", type=_pairs, required=True, help="u:v,... (v indexes file2)")
    p.add_argument("--k", type=int, help="join as k-connected graphs instead of UNNs")
    p.add_argument("--format", choices=["edges", "dot"], default="edges")
    p.add_argument("--output")
    p.set_defaults(func=cmd_join)

    p = sub.add_parser("kappa", help="vertex connectivity")
    p.add_argument("file")
    p.set_defaults(func=cmd_kappa)

    p = sub.add_parser("paths", help="k internally vertex-disjoint paths")
    p.add_argument("file")
    p.add_argument("--from", dest="source", type=int, required=True)
    p.add_argument("--to", dest="target", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_paths)

    for name in ("simulate", "sweep"):
        p = sub.add_parser(name, help="multipath transmission" if name == "simulate"
                           else "CSV sweep of delivery rate over adversary sizes")
        p.add_argument("file")
        p.add_argument("--from", dest="source", type=int, required=True)
        p.add_argument("--to", dest="target", type=int, required=True)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--restrict-tree", action="store_true",
                       help="provision keys only on the spanning tree")
        p.add_argument("--message", default="hello")
        p.add_argument("--output")
        if name == "simulate":
            p.add_argument("--d", type=int, required=True)
            p.add_argument("--k", type=int, required=True)
            p.add_argument("--adversary", default="", help='e.g. "passive=1,2;active=3"')
            p.add_argument("--offset", type=int, default=1, help="value active nodes add to shares")
            p.add_argument("--format", choices=["text", "csv"], default="text")
            p.set_defaults(func=cmd_simulate)
        else:
            p.add_argument("--d", type=_int_list, required=True, help="comma-separated thresholds")
            p.add_argument("--k", type=_int_list, required=True, help="comma-separated path counts")
            p.add_argument("--adversary-sizes", type=_int_list, default=[0, 1, 2])
            p.add_argument("--trials", type=int, default=20)
            p.add_argument("--plot", help="write a figure of delivery rate per adversary size")
            p.add_argument("--format", choices=["csv"], default="csv")
            p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("share", help="split one field element into shares")
    p.add_argument("--secret", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, default=sharing.DEFAULT_PRIME)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_share)

    p = sub.add_parser("reconstruct", help="recover a secret from x:y shares")
    p.add_argument("shares", nargs="+", type=_share_point)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, default=sharing.DEFAULT_PRIME)
    p.set_defaults(func=cmd_reconstruct)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"unnet: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, sharing.SharingError, ValueError) as exc:
        print(f"unnet: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
