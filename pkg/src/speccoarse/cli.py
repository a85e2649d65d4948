"""Command-line interface.

Commands: coarsen, spectrum, verify, bench, gen. Summaries go to standard
output as machine-parseable key=value pairs; diagnostics go to standard
error. Exit codes: 0 success, 2 invalid arguments, 3 I/O failure,
4 invalid or malformed graph.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import bench as _bench
from . import io as _io
from . import spectral as _spectral
from .coarsen import (CoarsenResult, MergeLog, approximate_greedy_coarsen,
                      drift_bound, explicit_greedy_coarsen)
from .graph import InvalidGraphError, Partition, contract, validate

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BADGRAPH = 4


class _UsageError(ValueError):
    pass


def _load(path: str, fmt: str):
    return _io.load_graph(path, fmt)


def _require_valid(g):
    report = validate(g)
    if not report.ok:
        parts = []
        if not report.connected:
            parts.append(f"graph is disconnected ({report.n_components} components)")
        if len(report.isolated):
            parts.append(f"{len(report.isolated)} zero-degree nodes")
        raise InvalidGraphError("; ".join(parts))
    return g


def _resolve_target(n: int, nodes, ratio) -> int:
    if (nodes is None) == (ratio is None):
        raise _UsageError("exactly one of --nodes/--ratio is required")
    if nodes is not None:
        if not 1 <= nodes <= n:
            raise _UsageError(f"--nodes must be in [1, {n}]")
        return nodes
    if not 0.0 < ratio <= 1.0:
        raise _UsageError("--ratio must be in (0, 1]")
    return max(1, math.ceil(ratio * n))


def _cmd_coarsen(args) -> int:
    g = _require_valid(_load(args.input, args.format))
    n_c = _resolve_target(g.n, args.nodes, args.ratio)
    if args.threads < 1:
        raise _UsageError("--threads must be positive")
    if args.algorithm == "approx":
        result = approximate_greedy_coarsen(g, n_c, threads=args.threads)
    else:
        result = explicit_greedy_coarsen(g, n_c)
    prefix = args.out_prefix
    _io.write_weighted_edgelist(result.coarse, f"{prefix}.graph")
    _io.write_partition(result.partition, f"{prefix}.part")
    rows = [["order", "u", "v", "fitness"]]
    rows += [[k + 1, u, v, float(f)]
             for k, (u, v, f) in enumerate(result.log.applied)]
    _io.write_csv(rows, f"{prefix}.merges.csv")
    log = result.log
    print(f"n={g.n} m={g.m} n_c={result.coarse.n} s={log.s} "
          f"eps_max={log.eps_max:.17g} bound={drift_bound(log):.17g}")
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    g = _require_valid(_load(args.input, args.format))
    k = args.k if args.k is not None else min(50, g.n - 1)
    if not 1 <= k <= g.n - 1:
        raise _UsageError(f"--k must be in [1, {g.n - 1}]")
    spec = _spectral.spectrum_of(g)
    rows = [["index", "lambda"]]
    rows += [[i, float(lam)] for i, lam in enumerate(spec.eigenvalues)]
    _io.write_csv(rows, args.out)
    if args.vectors_out:
        _io.write_csv(_spectral.eigenvector_rows(spec, k), args.vectors_out)
    print(f"n={g.n} m={g.m} k={k} lambda_min={spec.eigenvalues[0]:.17g} "
          f"lambda_max={spec.eigenvalues[-1]:.17g}")
    return EXIT_OK


def _merges_sidecar(part_path: str) -> MergeLog | None:
    path = Path(part_path)
    stem = path.name[:-5] if path.name.endswith(".part") else path.name
    sidecar = path.with_name(stem + ".merges.csv")
    if not sidecar.exists():
        return None
    applied = []
    with open(sidecar, "r", encoding="utf-8") as fh:
        header = fh.readline()
        if not header.startswith("order,"):
            return None
        for line in fh:
            cells = line.strip().split(",")
            if len(cells) != 4:
                return None
            applied.append((int(cells[1]), int(cells[2]), float(cells[3])))
    return MergeLog(tuple(applied), 0)


def _cmd_verify(args) -> int:
    g = _require_valid(_load(args.input, args.format))
    labels = _io.load_partition(args.part)
    if len(labels) != g.n:
        raise _io.FormatError(
            f"partition has {len(labels)} lines but the graph has {g.n} nodes")
    k = args.k if args.k is not None else min(50, g.n - 1)
    if not 1 <= k <= g.n - 1:
        raise _UsageError(f"--k must be in [1, {g.n - 1}]")
    part = Partition.from_labels(labels)
    coarse = contract(g, part)
    log = _merges_sidecar(args.part)
    result = CoarsenResult(part, coarse, log if log is not None else MergeLog((), 0))
    report = _spectral.verify(g, result, k)
    prefix = args.out_prefix
    _io.write_csv(_spectral.eigenvalue_pair_rows(report), f"{prefix}.eigenvalues.csv")
    _io.write_csv(_spectral.alignment_rows(report), f"{prefix}.alignment.csv")
    _io.write_csv(_spectral.eigenvector_rows(report.spectrum_original, k),
                  f"{prefix}.vectors_original.csv")
    _io.write_csv(_spectral.eigenvector_rows(report.spectrum_lift, k),
                  f"{prefix}.vectors_lift.csv")
    if log is None:
        print(f"gap={report.gap:.17g} bound=n/a satisfied=n/a")
    else:
        print(report.summary())
    return EXIT_OK


def _parse_gen_spec(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "grid":
        r, _, c = rest.partition("x")
        return _bench.gen_grid(int(r), int(c))
    if kind == "powerlaw":
        fields = rest.split(",")
        if len(fields) != 3:
            raise _UsageError("powerlaw spec is n,attach,seed")
        n, attach, seed = (int(x) for x in fields)
        return _bench.gen_powerlaw(n, attach, seed)
    raise _UsageError(f"unknown generator {kind!r}; use grid:RxC or powerlaw:n,attach,seed")


def _cmd_bench(args) -> int:
    if (args.input is None) == (args.gen is None):
        raise _UsageError("provide an input file or --gen, not both")
    if args.gen is not None:
        g = _parse_gen_spec(args.gen)
    else:
        g = _load(args.input, args.format)
    _require_valid(g)
    try:
        threads = tuple(int(t) for t in args.threads.split(","))
        cfg = _bench.BenchConfig(thread_counts=threads,
                                 repetitions=args.repeat, ratio=args.ratio)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    rows = _bench.scaling_sweep(g, cfg)
    _io.write_csv(rows, args.out)
    deterministic = all(row[-1] for row in rows[1:])
    print(f"n={g.n} m={g.m} rows={len(rows) - 1} "
          f"deterministic={'true' if deterministic else 'false'}")
    return EXIT_OK


def _cmd_gen(args) -> int:
    if (args.grid is None) == (args.powerlaw is None):
        raise _UsageError("exactly one of --grid/--powerlaw is required")
    try:
        if args.grid is not None:
            r, _, c = args.grid.partition("x")
            g = _bench.gen_grid(int(r), int(c))
        else:
            fields = args.powerlaw.split(",")
            if len(fields) != 3:
                raise _UsageError("powerlaw spec is n,attach,seed")
            g = _bench.gen_powerlaw(*(int(x) for x in fields))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    _io.write_weighted_edgelist(g, args.out)
    print(f"n={g.n} m={g.m} out={args.out}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="speccoarse",
        description="Spectrum-preserving graph coarsening toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=_io.FORMATS, required=True,
                       help="input format (never sniffed)")

    p = sub.add_parser("coarsen", help="coarsen a graph to a target size")
    p.add_argument("input")
    add_format(p)
    p.add_argument("--nodes", type=int, help="target supernode count")
    p.add_argument("--ratio", type=float,
                   help="target node ratio in (0,1]; n_c = ceil(ratio*n)")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--algorithm", choices=("approx", "explicit"),
                   default="approx")
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_coarsen)

    p = sub.add_parser("spectrum", help="normalized-Laplacian spectrum to CSV")
    p.add_argument("input")
    add_format(p)
    p.add_argument("--k", type=int, default=None,
                   help="nontrivial eigenvector count for --vectors-out")
    p.add_argument("--out", required=True)
    p.add_argument("--vectors-out", default=None,
                   help="also write per-node eigenvector CSV here")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("verify",
                       help="compare a graph against the lift of a partition")
    p.add_argument("input")
    add_format(p)
    p.add_argument("--part", required=True, help="partition file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="thread-scaling sweep to CSV")
    p.add_argument("input", nargs="?", default=None)
    p.add_argument("--format", choices=_io.FORMATS, default="wel")
    p.add_argument("--gen", default=None,
                   help="generator spec: grid:RxC or powerlaw:n,attach,seed")
    p.add_argument("--threads", default="1,2,4,8,16",
                   help="comma-separated worker counts")
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--ratio", type=float, default=0.5)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--grid", default=None, help="RxC")
    p.add_argument("--powerlaw", default=None, help="n,attach,seed")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (_io.FormatError, InvalidGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BADGRAPH
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():  # console-script wrapper
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
