"""Command-line front end: stats, clean, cluster, eval, neighborhood, merge-small.

Exit codes: 0 success, 1 usage error, 2 input error, 3 algorithmic refusal.
Every failure prints one line starting with ``error:`` on stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import shlex
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .analysis import degree_stats, neighborhood_census, reach_profile
from .clustering import ClusteringConfig, parse_resolution, quality, run_leiden, run_louvain
from .clustering.spectral import spectral_cluster
from .errors import CitenetError, ConvergenceError, InputError, RefusalError
from .evaluation import build_report, merge_small_clusters, write_report
from .graph import (
    build_graph,
    largest_connected_component,
    load_labels,
    parse_edge_list,
    prune_low_degree,
    write_edge_list,
    write_mapping,
)
from .partition import read_partition, write_partition

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunManifest:
    command: str
    argv: list[str]
    inputs: list[str] = field(default_factory=list)
    parameters: dict[str, object] = field(default_factory=dict)
    outputs: list[str] = field(default_factory=list)
    results: dict[str, object] = field(default_factory=dict)
    duration_s: float = 0.0
    version: str = __version__

    def to_text(self) -> str:
        lines = [
            f"command={self.command}",
            f"version={self.version}",
            f"argv={json.dumps(self.argv)}",
            f"inputs={','.join(self.inputs)}",
            f"outputs={','.join(self.outputs)}",
        ]
        lines += [f"param.{k}={v}" for k, v in self.parameters.items()]
        lines += [f"{k}={v}" for k, v in self.results.items()]
        lines.append(f"duration_s={self.duration_s:.3f}")
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        Path(path).write_text(self.to_text(), encoding="utf-8")


def read_manifest(path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if "=" in line:
            key, value = line.split("=", 1)
            out[key] = value
    return out


def argv_from_manifest(path) -> list[str]:
    """The exact argument list a manifest was produced with."""
    return json.loads(read_manifest(path)["argv"])


def _load_graph(path):
    return build_graph(parse_edge_list(path))


def _manifest_path(out) -> Path:
    out = Path(out)
    return out.with_name(out.name + ".manifest")


def cmd_stats(args, man: RunManifest):
    g = _load_graph(args.graph)
    st = degree_stats(g)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    hist = out_dir / "degree_histogram.csv"
    with open(hist, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["degree", "count"])
        w.writerows(sorted(st.histogram.items()))
    print(f"n={g.n} m={g.m}")
    print(st.summary())
    man.inputs = [args.graph]
    man.outputs = [str(hist)]
    return _manifest_path(hist)


def cmd_clean(args, man: RunManifest):
    edges = parse_edge_list(args.graph)
    g = build_graph(edges)
    print(f"before: n={g.n} m={g.m} (self-loops dropped={edges.n_self_loops_dropped}, "
          f"duplicates dropped={edges.n_duplicates_dropped})")
    mapping = None
    if args.keep_lcc:
        g, mapping = largest_connected_component(g)
    if args.prune_degree is not None:
        g, step = prune_low_degree(g, args.prune_degree, iterative=args.iterative)
        mapping = step if mapping is None else mapping.then(step)
    if mapping is None:
        from .graph import NodeMapping

        mapping = NodeMapping.identity(g.n)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    mapping_path = Path(args.mapping) if args.mapping else out.parent / "mapping.tsv"
    write_edge_list(g, out)
    write_mapping(mapping, mapping_path)
    print(f"after: n={g.n} m={g.m}")
    man.inputs = [args.graph]
    man.parameters = {"keep_lcc": args.keep_lcc, "prune_degree": args.prune_degree, "iterative": args.iterative}
    man.outputs = [str(out), str(mapping_path)]
    man.results = {"n": g.n, "m": g.m}
    return _manifest_path(out)


def cmd_cluster(args, man: RunManifest):
    gamma = parse_resolution(args.resolution)
    if args.algo == "spectral" and args.k is None:
        raise UsageError("--algo spectral requires --k")
    g = _load_graph(args.graph)
    cfg = ClusteringConfig(gamma=gamma, seed=args.seed, max_levels=args.max_levels)
    levels = 0
    if args.algo == "louvain":
        res = run_louvain(g, cfg)
        p, levels = res.partition, res.levels
    elif args.algo == "leiden":
        res = run_leiden(g, cfg)
        p, levels = res.partition, res.levels
    else:
        p = spectral_cluster(g, args.k, cfg)
    q = quality(g, p, gamma)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_partition(p, out)
    print(f"algorithm={args.algo} gamma={gamma!r} seed={args.seed} clusters={p.k} quality={q!r}")
    man.inputs = [args.graph]
    man.parameters = {"algorithm": args.algo, "gamma": repr(gamma), "seed": args.seed, "k": args.k,
                      "max_levels": args.max_levels}
    man.outputs = [str(out)]
    man.results = {"algorithm": args.algo, "gamma": repr(gamma), "seed": args.seed, "levels": levels,
                   "clusters": p.k, "quality": repr(q)}
    return _manifest_path(out)


def cmd_eval(args, man: RunManifest):
    g = _load_graph(args.graph)
    p = read_partition(args.partition, n=g.n)
    labels = load_labels(args.labels, g) if args.labels else None
    report = build_report(g, p, labels)
    written = write_report(report, args.report_dir)
    print(report.summary)
    man.inputs = [args.graph, args.partition] + ([args.labels] if args.labels else [])
    man.outputs = [str(w) for w in written]
    return _manifest_path(Path(args.report_dir))


def cmd_neighborhood(args, man: RunManifest):
    g = _load_graph(args.graph)
    census = neighborhood_census(g, args.node, args.depth)
    print(f"nodes={census.n_nodes} edges={census.n_edges}")
    man.inputs = [args.graph]
    man.parameters = {"node": args.node, "depth": args.depth}
    man.results = {"nodes": census.n_nodes, "edges": census.n_edges}
    if args.profile_out:
        max_depth = args.max_depth if args.max_depth is not None else args.depth
        prof = reach_profile(g, args.node, max_depth)
        out = Path(args.profile_out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["depth", "cumulative_nodes"])
            w.writerows(enumerate(prof.cumulative))
        man.outputs = [str(out)]
        return _manifest_path(out)
    return None


def cmd_merge_small(args, man: RunManifest):
    g = _load_graph(args.graph)
    p = read_partition(args.partition, n=g.n)
    gamma = parse_resolution(args.resolution)
    res = merge_small_clusters(g, p, args.min_size)
    for line in res.ledger():
        print(line)
    q_before, q_after = quality(g, p, gamma), quality(g, res.partition, gamma)
    print(f"clusters {p.k} -> {res.partition.k}; quality {q_before!r} -> {q_after!r}")
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_partition(res.partition, out)
    man.inputs = [args.graph, args.partition]
    man.parameters = {"min_size": args.min_size, "gamma": repr(gamma)}
    man.outputs = [str(out)]
    man.results = {"clusters_before": p.k, "clusters_after": res.partition.k,
                   "quality_before": repr(q_before), "quality_after": repr(q_after),
                   "merges": ";".join(f"{s}->{t}" for s, t in res.merges),
                   "unmerged": ";".join(str(s) for s, _ in res.unmerged)}
    return _manifest_path(out)


def cmd_rerun(args, man: RunManifest):
    argv = argv_from_manifest(args.manifest)
    print("rerunning: citenet " + shlex.join(argv))
    return main(argv)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="citenet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"citenet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("stats", help="degree statistics and histogram")
    p.add_argument("graph")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("clean", help="largest component, then low-degree pruning")
    p.add_argument("graph")
    p.add_argument("--keep-lcc", action="store_true")
    p.add_argument("--prune-degree", type=int, metavar="K")
    p.add_argument("--iterative", action="store_true")
    p.add_argument("--out", required=True)
    p.add_argument("--mapping", help="mapping file (default: mapping.tsv next to --out)")
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("cluster", help="run Louvain, Leiden or spectral clustering")
    p.add_argument("graph")
    p.add_argument("--algo", required=True, choices=["louvain", "leiden", "spectral"])
    p.add_argument("--resolution", default="1.0", help="positive number, or 'paper' for 0.05")
    p.add_argument("--k", type=int, help="cluster count (spectral only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-levels", type=int, default=50)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="write evaluation report CSVs")
    p.add_argument("graph")
    p.add_argument("--partition", required=True)
    p.add_argument("--labels")
    p.add_argument("--report-dir", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("neighborhood", help="depth-limited neighborhood census")
    p.add_argument("graph")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--profile-out", help="write depth,cumulative_nodes CSV here")
    p.add_argument("--max-depth", type=int, help="profile depth (default: --depth)")
    p.set_defaults(func=cmd_neighborhood)

    p = sub.add_parser("merge-small", help="fold small clusters into their majority neighbor")
    p.add_argument("graph")
    p.add_argument("--partition", required=True)
    p.add_argument("--min-size", type=int, required=True)
    p.add_argument("--resolution", default="1.0")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_merge_small)

    p = sub.add_parser("rerun", help="repeat the command recorded in a manifest")
    p.add_argument("manifest")
    p.set_defaults(func=cmd_rerun)
    return parser


def _error(message: str) -> None:
    print("error: " + " ".join(str(message).split()), file=sys.stderr)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        if args.command == "rerun":
            return args.func(args, None)
        man = RunManifest(command=args.command, argv=argv)
        start = time.perf_counter()
        manifest_path = args.func(args, man)
        man.duration_s = time.perf_counter() - start
        if manifest_path is not None:
            man.write(manifest_path)
        return EXIT_OK
    except UsageError as exc:
        _error(exc)
        return EXIT_USAGE
    except (RefusalError, ConvergenceError) as exc:
        _error(exc)
        return EXIT_REFUSED
    except (InputError, CitenetError, OSError) as exc:
        _error(exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
