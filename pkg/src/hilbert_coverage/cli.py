"""Command-line entry point: ``hilbert-coverage {curve,cover,tree,verify}``.

Exit status: 0 on success, 1 when a requested verification fails, 2 on bad
input (world file or arguments), 3 when the planner itself raises.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .coverage_simulator import simulate, verify_coverage, verify_multi_obstacle, verify_single
from .errors import HilbertCoverageError, ParseError
from .export import dumps_json, node_rows, trace_to_csv
from .hilbert_core import NodeIndex, curve_nodes, format_digits, map_standard_fast, rank_to_digits
from .nonuniform_planner import CoverageTree, plan_nonuniform, verify_leaf_coverage
from .svg import curve_svg, trace_svg
from .worldfile import load_world

log = logging.getLogger("hilbert_coverage")

DEFAULT_ORDER_LIMIT = 8
PAIRS_ORDER_LIMIT = 4
SINGLE_ORDER_LIMIT = 5


def _emit(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_curve(args) -> int:
    n = args.order
    if not 1 <= n <= args.limit:
        print(f"error: order must be in 1..{args.limit}", file=sys.stderr)
        return 2
    if args.map == "center":
        rows = [(k, format_digits(rank_to_digits(k, n)), c.center.x, c.center.y)
                for k, c in enumerate(curve_nodes(n))]
    else:
        rows = []
        for k in range(4 ** n):
            p = map_standard_fast(k, n)
            rows.append((k, str(NodeIndex.from_rank(k, n)), p.x, p.y))
    _emit(node_rows(rows), args.out)
    if args.svg:
        Path(args.svg).write_text(curve_svg(n, args.map))
    return 0


def _load(args):
    try:
        return load_world(args.world)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None
    except OSError as exc:
        print(f"error: cannot read world file: {exc}", file=sys.stderr)
        return None


def _finish(trace, world, report, args, leaves=None, label="") -> int:
    _emit(trace_to_csv(trace), args.out)
    if args.svg:
        title = label or f"order {world.order}, obstacles {' '.join(world.obstacle_strings()) or '-'}"
        Path(args.svg).write_text(trace_svg(trace, world, leaves, title))
    for note in trace.notes:
        log.warning(note)
    if report is None:
        return 0
    payload = {"world": {"order": world.order, "obstacles": world.obstacle_strings()},
               "stats": trace.stats(world), "coverage": report.to_dict()}
    if args.report:
        Path(args.report).write_text(dumps_json(payload))
    else:
        print(dumps_json(payload), end="", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_cover(args) -> int:
    world = _load(args)
    if world is None:
        return 2
    try:
        trace = simulate(world)
    except HilbertCoverageError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    report = verify_coverage(trace, world) if args.verify else None
    return _finish(trace, world, report, args)


def cmd_tree(args) -> int:
    world = _load(args)
    if world is None:
        return 2
    if world.resolution_map is None:
        print("error: world file has no 'regions' or 'default_order'", file=sys.stderr)
        return 2
    try:
        tree = CoverageTree.from_map(world.resolution_map, world.order)
        trace = plan_nonuniform(tree, world)
    except HilbertCoverageError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    report = verify_leaf_coverage(trace, tree, world) if args.verify else None
    label = f"coverage tree, {len(tree)} leaves, obstacles {' '.join(world.obstacle_strings()) or '-'}"
    return _finish(trace, world, report, args, tree.leaves, label)


def cmd_verify(args) -> int:
    n = args.order
    limit = SINGLE_ORDER_LIMIT if args.mode == "single" else PAIRS_ORDER_LIMIT
    if not 1 <= n <= limit:
        print(f"error: {args.mode} campaigns support orders 1..{limit}", file=sys.stderr)
        return 2
    if args.mode == "single":
        report = verify_single(n, jobs=args.jobs)
    else:
        report = verify_multi_obstacle(n, jobs=args.jobs)
    _emit(dumps_json(report.to_dict()), args.out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hilbert-coverage",
                                     description="Hilbert-curve coverage with online obstacle evasion")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve", help="node table of the order-n curve")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--map", choices=("standard", "center"), default="center")
    p.add_argument("--limit", type=int, default=DEFAULT_ORDER_LIMIT, help="largest accepted order")
    p.add_argument("--svg")
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.set_defaults(func=cmd_curve)

    for name, func, helptext in (("cover", cmd_cover, "online coverage of a world file"),
                                 ("tree", cmd_tree, "non-uniform coverage over the world's regions")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--world", required=True)
        p.add_argument("--verify", action="store_true", help="check coverage; exit 1 on failure")
        p.add_argument("--svg")
        p.add_argument("--out", help="trace CSV destination (default stdout)")
        p.add_argument("--report", help="JSON report destination (default stderr)")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="exhaustive obstacle campaigns")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mode", choices=("single", "pairs"), default="single")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="JSON destination (default stdout)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
