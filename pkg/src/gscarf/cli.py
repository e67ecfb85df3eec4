"""Command-line front end.

Subcommands: ``cluster`` (run an algorithm over an edge list, write a
partition and a run report), ``eval`` (NMI of a predicted partition against
ground truth), ``gen`` (synthetic graphs), and ``bench`` (timing table over
doubling graph sizes).

Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .engine import EngineOptions, Partition, RunStats, cluster_gscarf, cluster_louvain
from .evaluation import NMI_FORMULA, nmi, resolve_overlapping_truth, size_stats
from .generators import PlantedSpec, PowerLawSpec, gen_chung_lu, gen_planted
from .graph import Graph
from .io import (
    ParseError,
    read_communities,
    read_edge_list,
    read_partition,
    write_communities,
    write_edge_list,
    write_partition,
    write_report,
)
from .metrics import modularity, modularity_directed

__all__ = ["main"]


class _UsageError(Exception):
    pass


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Route argparse's own failures through our exit-code scheme (it would
    # otherwise sys.exit(2), which we reserve for bad input files).
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(f"{self.format_usage().rstrip()}\n{self.prog}: {message}")


def _build_parser() -> _Parser:
    parser = _Parser(prog="gscarf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster an edge-list file")
    p.add_argument("edges", help="edge-list file: 'u v [w]' per line")
    p.add_argument("--algorithm", choices=("gscarf", "louvain"), default="gscarf")
    p.add_argument("--no-cache", action="store_true", help="recompute every gain")
    p.add_argument("--no-fold", action="store_true",
                   help="track cluster summaries without contracting the graph")
    p.add_argument("--directed", action="store_true",
                   help="treat input lines as arcs")
    p.add_argument("--allow-self-loops", action="store_true",
                   help="fold input self-loops into the node instead of rejecting them")
    p.add_argument("--truth", help="community file; adds NMI to the report")
    p.add_argument("--resolve-overlaps", action="store_true",
                   help="flatten overlapping truth by neighbor plurality")
    p.add_argument("--out", help="partition output path (default: stdout)")
    p.add_argument("--report", help="report output path (default: stdout)")
    p.set_defaults(func=_cmd_cluster)

    p = sub.add_parser("eval", help="score a partition against ground truth")
    p.add_argument("pred", help="partition file: 'label<TAB>cluster_id' per line")
    p.add_argument("truth", help="community file: one community per line")
    p.add_argument("--graph", help="edge-list file (required to resolve overlaps)")
    p.add_argument("--resolve-overlaps", action="store_true")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("gen", help="generate a synthetic graph")
    kind = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    q = kind.add_parser("planted", help="planted-partition graph")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True, help="community count")
    q.add_argument("--mu", type=float, required=True, help="mixing fraction in [0,1]")
    q.add_argument("--avg-degree", type=float, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--out-prefix", required=True,
                   help="writes <prefix>.edges and <prefix>.truth")
    q.set_defaults(func=_cmd_gen_planted)

    q = kind.add_parser("chung-lu", help="power-law expected-degree graph")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--gamma", type=float, required=True, help="tail exponent > 1")
    q.add_argument("--avg-degree", type=float, required=True)
    q.add_argument("--seed", type=int, required=True)
    q.add_argument("--out-prefix", required=True, help="writes <prefix>.edges")
    q.set_defaults(func=_cmd_gen_chung_lu)

    p = sub.add_parser("bench", help="time the engine over doubling sizes")
    p.add_argument("--sizes", required=True,
                   help="comma-separated target edge counts, e.g. 100000,200000")
    p.add_argument("--algorithms", default="gscarf",
                   help="comma-separated subset of "
                        "gscarf,gscarf-nocache,gscarf-nofold,louvain")
    p.add_argument("--model", choices=("chung-lu", "planted"), default="chung-lu")
    p.add_argument("--gamma", type=float, default=2.1)
    p.add_argument("--avg-degree", type=float, default=10.0)
    p.add_argument("--mu", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    return parser


def _report_fields(algorithm: str, options: str, g: Graph, partition: Partition,
                   stats: RunStats, nmi_value: float | None) -> dict[str, object]:
    count, mean, _max_size, _min_size = size_stats(partition)
    q = modularity_directed(partition, g) if g.directed else modularity(partition, g)
    m = g.two_m if g.directed else g.two_m // 2
    return {
        "algorithm": algorithm,
        "options": options,
        "n": g.n,
        "m": m,
        "mean_degree": g.two_m / g.n if g.n else 0.0,
        "k": count,
        "mean_cluster_size": mean,
        "sigma_l": stats.final_sigma_l,
        "modularity": q,
        "nmi": "na" if nmi_value is None else nmi_value,
        "gain_evals": stats.gain_evals,
        "cache_hits": stats.cache_hits,
        "cache_size": stats.cache_size,
        "folds": stats.folds,
        "wall_time": stats.wall_time,
        "nmi_formula": NMI_FORMULA,
    }


def _truth_partition(g: Graph, communities: list[list[str]],
                     resolve_overlaps: bool) -> Partition:
    """Map label communities onto graph ids; flatten overlaps if allowed."""
    if g.labels is None:
        raise _InputError("graph carries no node labels")
    index = {label: v for v, label in enumerate(g.labels)}
    memberships: list[list[int]] = [[] for _ in range(g.n)]
    for cid, community in enumerate(communities):
        for label in community:
            v = index.get(label)
            if v is None:
                raise _InputError(f"truth node {label!r} is not in the graph")
        for label in community:
            memberships[index[label]].append(cid)
    uncovered = [v for v in range(g.n) if not memberships[v]]
    if uncovered:
        raise _InputError(
            f"graph node {g.labels[uncovered[0]]!r} is missing from the truth"
        )
    if any(len(ms) > 1 for ms in memberships):
        if not resolve_overlaps:
            first = next(v for v in range(g.n) if len(memberships[v]) > 1)
            raise _InputError(
                f"truth communities overlap (e.g. node {g.labels[first]!r}); "
                "pass --resolve-overlaps"
            )
        return resolve_overlapping_truth(memberships, g)
    return Partition.from_labels([ms[0] for ms in memberships])


def _cmd_cluster(args: argparse.Namespace) -> int:
    if args.algorithm == "louvain" and args.directed:
        raise _UsageError("--directed is not available with --algorithm louvain")
    g = read_edge_list(args.edges, directed=args.directed,
                       allow_self_loops=args.allow_self_loops)
    if g.n == 0:
        raise _InputError(f"no edges in {args.edges}")
    if args.algorithm == "louvain":
        partition, stats = cluster_louvain(g)
        options = "baseline"
    else:
        opts = EngineOptions(use_cache=not args.no_cache,
                             use_fold=not args.no_fold,
                             directed=args.directed)
        partition, stats = cluster_gscarf(g, opts)
        options = (f"cache={'off' if args.no_cache else 'on'},"
                   f"fold={'off' if args.no_fold else 'on'},"
                   f"directed={'on' if args.directed else 'off'}")
    nmi_value = None
    if args.truth:
        truth = _truth_partition(g, read_communities(args.truth),
                                 args.resolve_overlaps)
        nmi_value = nmi(partition, truth)
    write_partition(args.out if args.out else sys.stdout, partition, g.labels)
    fields = _report_fields(args.algorithm, options, g, partition, stats, nmi_value)
    write_report(args.report if args.report else sys.stdout, fields)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    if args.resolve_overlaps and not args.graph:
        raise _UsageError("--resolve-overlaps requires --graph for neighbor votes")
    pred_map = read_partition(args.pred)
    communities = read_communities(args.truth)
    truth_nodes = set()
    for community in communities:  # file order, so the first offender is stable
        for label in community:
            if label not in pred_map:
                raise _InputError(f"truth node {label!r} is missing from the partition")
            truth_nodes.add(label)
    for label in pred_map:
        if label not in truth_nodes:
            raise _InputError(f"partition node {label!r} is missing from the truth")

    if args.graph:
        g = read_edge_list(args.graph)
        assert g.labels is not None
        for label in g.labels:
            if label not in pred_map:
                raise _InputError(f"graph node {label!r} is missing from the partition")
        if len(pred_map) != g.n:
            known = set(g.labels)
            extra = next(l for l in pred_map if l not in known)
            raise _InputError(f"partition node {extra!r} is not in the graph")
        truth = _truth_partition(g, communities, args.resolve_overlaps)
        pred_labels = [pred_map[label] for label in g.labels]
        truth_labels = truth.assignment
    else:
        membership: dict[str, int] = {}
        for cid, community in enumerate(communities):
            for label in community:
                if label in membership:
                    raise _InputError(
                        f"truth communities overlap (e.g. node {label!r}); "
                        "pass --resolve-overlaps with --graph"
                    )
                membership[label] = cid
        order = sorted(pred_map)
        pred_labels = [pred_map[label] for label in order]
        truth_labels = [membership[label] for label in order]

    value = nmi(pred_labels, truth_labels)
    count, mean, biggest, smallest = size_stats(Partition.from_labels(pred_labels))
    sys.stdout.write(f"nmi\t{value!r}\n")
    sys.stdout.write(f"nmi_formula\t{NMI_FORMULA}\n")
    sys.stdout.write(f"k\t{count}\n")
    sys.stdout.write(f"mean_cluster_size\t{mean!r}\n")
    sys.stdout.write(f"max_cluster_size\t{biggest}\n")
    sys.stdout.write(f"min_cluster_size\t{smallest}\n")
    return 0


def _cmd_gen_planted(args: argparse.Namespace) -> int:
    try:
        spec = PlantedSpec(n=args.n, k=args.k, mu=args.mu,
                           avg_degree=args.avg_degree, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    g, truth = gen_planted(spec)
    write_edge_list(f"{args.out_prefix}.edges", g)
    # Isolated nodes never reach the edge file, so they are dropped from
    # the written truth to keep the two files over one node universe.
    communities = [
        [v for v in community if g.deg[v] > 0] for community in truth.clusters()
    ]
    write_communities(f"{args.out_prefix}.truth",
                      [c for c in communities if c])
    return 0


def _cmd_gen_chung_lu(args: argparse.Namespace) -> int:
    try:
        spec = PowerLawSpec(n=args.n, gamma=args.gamma,
                            avg_degree=args.avg_degree, seed=args.seed)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    write_edge_list(f"{args.out_prefix}.edges", gen_chung_lu(spec))
    return 0


_BENCH_VARIANTS = {
    "gscarf": EngineOptions(),
    "gscarf-nocache": EngineOptions(use_cache=False),
    "gscarf-nofold": EngineOptions(use_fold=False),
    "louvain": None,
}


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError as exc:
        raise _UsageError(f"--sizes: {exc}") from None
    if not sizes:
        raise _UsageError("--sizes needs at least one target edge count")
    algorithms = [a for a in args.algorithms.split(",") if a.strip()]
    if not algorithms:
        raise _UsageError("--algorithms needs at least one entry")
    for a in algorithms:
        if a not in _BENCH_VARIANTS:
            raise _UsageError(f"unknown algorithm {a!r}")

    sys.stdout.write("m\talgorithm\twall_time\tgain_evals\tcache_hits\n")
    for target_m in sizes:
        n = max(4, round(2 * target_m / args.avg_degree))
        try:
            if args.model == "planted":
                spec = PlantedSpec(n=n, k=max(2, n // 100), mu=args.mu,
                                   avg_degree=args.avg_degree, seed=args.seed)
                g, _ = gen_planted(spec)
            else:
                g = gen_chung_lu(PowerLawSpec(n=n, gamma=args.gamma,
                                              avg_degree=args.avg_degree,
                                              seed=args.seed))
        except ValueError as exc:
            raise _UsageError(str(exc)) from None
        m = g.two_m // 2
        for algorithm in algorithms:
            opts = _BENCH_VARIANTS[algorithm]
            if opts is None:
                _, stats = cluster_louvain(g)
            else:
                _, stats = cluster_gscarf(g, opts)
            sys.stdout.write(
                f"{m}\t{algorithm}\t{stats.wall_time!r}\t"
                f"{stats.gain_evals}\t{stats.cache_hits}\n"
            )
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"gscarf: {exc}", file=sys.stderr)
        return 1
    except (ParseError, _InputError, OSError) as exc:
        print(f"gscarf: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"gscarf: internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
