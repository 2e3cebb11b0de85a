"""Command-line entry point ``ftb``.

Exit codes: 0 success, 2 infeasible input, 3 validation error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import bench as bench_mod
from .connectivity import induced, is_k_connected, k_block_tree
from .domset import exact_mfold_ds, greedy_mfold_ds
from .errors import InfeasibleError, ValidationError
from .fixtures import FIXTURES, fixture
from .pipeline import DEFAULT_ORACLE_CAP, ProblemSpec, exact_kmcds, solve_kmcds, verify_kmcds
from .spanning import exact_k_mss, check_mss_properties, local_improve, reduce_to_minimal
from .steiner import solve_mnwkcsn
from .udg import EdgeSubgraph, UnitDiskGraph, load_instance, random_instance, write_instance

EXIT_OK, EXIT_INFEASIBLE, EXIT_INVALID = 0, 2, 3


def _ids(text: str) -> list[int]:
    try:
        return sorted({int(tok) for tok in text.replace(",", " ").split()})
    except ValueError:
        raise ValidationError(f"expected a list of node ids, got {text!r}") from None


def _graph(args) -> UnitDiskGraph:
    if args.fixture:
        try:
            return fixture(args.fixture)
        except KeyError as exc:
            raise ValidationError(str(exc.args[0])) from None
    if not args.instance:
        raise ValidationError("pass --instance PATH or --fixture NAME")
    try:
        return load_instance(args.instance)
    except OSError as exc:
        raise ValidationError(f"cannot read {args.instance}: {exc.strerror}") from None


def _flat_csv(row: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    keys = sorted(row)
    w.writerow(keys)
    w.writerow([bench_mod._cell(" ".join(map(str, v)) if isinstance(v, list) else v) for v in (row[k] for k in keys)])
    return buf.getvalue()


def _emit(args, doc: dict, flat: dict | None = None) -> None:
    if getattr(args, "csv", False):
        sys.stdout.write(_flat_csv(flat if flat is not None else doc))
    else:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


# -- subcommands --------------------------------------------------------------

def cmd_gen(args) -> int:
    k = args.k or 0
    if k >= 1:
        g, used, side = bench_mod.k_connected_instance(
            args.n, k, args.seed, args.side, (args.w_min, args.w_max), args.max_attempts
        )
    else:
        side = args.side if args.side is not None else bench_mod.auto_side(args.n, 1)
        g = random_instance(args.n, side, (args.w_min, args.w_max), args.seed)
    text = write_instance(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _graph(args)
    spec = ProblemSpec(g, args.k, args.m, ds=args.ds, skcs=args.skcs, allow_m_lt_k=args.allow_m_lt_k)
    report = solve_kmcds(spec)
    if args.oracle_cap and g.n <= args.oracle_cap:
        report.attach_oracle(*exact_kmcds(g, args.k, args.m, cap=args.oracle_cap))
    doc = report.to_dict(timings=args.timings)
    flat = {key: doc[key] for key in ("solution", "weight", "feasible", "rung", "oracle_weight", "empirical_ratio")}
    _emit(args, doc, flat)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _graph(args)
    D = _ids(args.solution)
    verdict = verify_kmcds(g, D, args.k, args.m)
    doc = verdict.to_dict()
    doc["solution"] = D
    if args.dump_blocks:
        sub = induced(g.adjacency, D)
        doc["blocks"] = k_block_tree(sub, args.k).to_dict() if is_k_connected(sub, args.k) else None
    _emit(args, doc, {k: v for k, v in doc.items() if k != "blocks"})
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _graph(args)
    if not is_k_connected(g, args.k):
        raise InfeasibleError(f"graph is not {args.k}-connected")
    D, w = exact_kmcds(g, args.k, args.m, cap=args.oracle_cap)
    _emit(args, {"solution": D, "weight": w, "k": args.k, "m": args.m})
    return EXIT_OK


def cmd_steiner(args) -> int:
    g = _graph(args)
    sol = solve_mnwkcsn(g, list(g.weights), _ids(args.terminals), args.k, args.skcs)
    doc = sol.to_dict()
    _emit(args, doc, {k: v for k, v in doc.items() if k != "edges"})
    return EXIT_OK


def cmd_domset(args) -> int:
    g = _graph(args)
    D = exact_mfold_ds(g, args.m) if args.exact else greedy_mfold_ds(g, args.m)
    _emit(args, {"set": D, "weight": g.set_weight(D), "m": args.m, "solver": "exact" if args.exact else "greedy"})
    return EXIT_OK


def cmd_mss(args) -> int:
    g = _graph(args)
    if args.exact:
        report = exact_k_mss(g, args.k)
    else:
        F = reduce_to_minimal(EdgeSubgraph.full(g), args.k)
        if args.local:
            F = local_improve(F, args.k)
        report = check_mss_properties(F, args.k)
    doc = report.to_dict()
    doc["method"] = "exact" if args.exact else ("local" if args.local else "minimal")
    _emit(args, doc, {k: v for k, v in doc.items() if k not in ("edges", "violations")})
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            cfg = bench_mod.BenchConfig.from_dict(json.load(fh))
    else:
        cfg = bench_mod.BenchConfig(
            count=args.count, n_min=args.n_min, n_max=args.n_max, ks=args.k or [2],
            m_offsets=args.m_offset or [0], seed=args.seed, side=args.side,
            ds=args.ds, skcs=args.skcs, oracle_cap=args.oracle_cap, jobs=args.jobs,
        )
    result = bench_mod.bench(cfg)
    text = bench_mod.to_csv(result) if args.csv else bench_mod.to_json(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        if not args.quiet:
            sys.stderr.write(json.dumps(result["aggregates"], indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _graph_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--instance", metavar="PATH", help="instance JSON file")
    p.add_argument("--fixture", metavar="NAME", help=f"built-in fixture: {', '.join(FIXTURES)}")


def _format_flags(p: argparse.ArgumentParser) -> None:
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--csv", action="store_true", help="CSV output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ftb", description="Fault-tolerant (k, m)-CDS toolkit for unit disk graphs")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log more (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("-n", type=int, required=True, help="number of nodes")
    p.add_argument("-k", type=int, default=0, help="redraw until the graph is k-connected")
    p.add_argument("--side", type=float, default=None, help="square side (default: from n and k)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--w-min", type=float, default=1.0)
    p.add_argument("--w-max", type=float, default=1.0)
    p.add_argument("--max-attempts", type=int, default=1000)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="two-phase (k, m)-CDS heuristic")
    _graph_flags(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--ds", choices=["greedy", "exact"], default="greedy")
    p.add_argument("--skcs", choices=["augment", "exact"], default="augment")
    p.add_argument("--oracle-cap", type=int, default=0, help="also run the exact oracle when n <= cap")
    p.add_argument("--allow-m-lt-k", action="store_true")
    p.add_argument("--timings", action="store_true", help="include per-phase timings (not deterministic)")
    _format_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a candidate (k, m)-CDS")
    _graph_flags(p)
    p.add_argument("--solution", required=True, help="node ids, comma or space separated")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--dump-blocks", action="store_true", help="include the k-block tree of G[D]")
    _format_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive minimum-weight (k, m)-CDS")
    _graph_flags(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    _format_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("steiner", help="node-weighted k-connected Steiner network")
    _graph_flags(p)
    p.add_argument("--terminals", required=True, help="terminal ids, comma or space separated")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--skcs", choices=["augment", "exact"], default="augment")
    _format_flags(p)
    p.set_defaults(func=cmd_steiner)

    p = sub.add_parser("domset", help="m-fold dominating set")
    _graph_flags(p)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="exhaustive optimum instead of greedy")
    _format_flags(p)
    p.set_defaults(func=cmd_domset)

    p = sub.add_parser("mss", help="short k-connected spanning subgraph")
    _graph_flags(p)
    p.add_argument("-k", type=int, required=True)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", help="exhaustive minimum length")
    how.add_argument("--local", action="store_true", help="minimal subgraph plus short-edge exchanges")
    _format_flags(p)
    p.set_defaults(func=cmd_mss)

    p = sub.add_parser("bench", help="random sweep against the exact oracle")
    p.add_argument("--config", metavar="PATH", help="JSON config; overrides the flags below")
    p.add_argument("--count", type=int, default=10, help="instances per (k, m)")
    p.add_argument("--n-min", type=int, default=8)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("-k", type=int, action="append", help="connectivity (repeatable)")
    p.add_argument("--m-offset", type=int, action="append", help="m - k (repeatable, default 0)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--side", type=float, default=None)
    p.add_argument("--ds", choices=["greedy", "exact"], default="greedy")
    p.add_argument("--skcs", choices=["augment", "exact"], default="augment")
    p.add_argument("--oracle-cap", type=int, default=12)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--quiet", action="store_true")
    _format_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InfeasibleError as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_INFEASIBLE
    except ValidationError as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
