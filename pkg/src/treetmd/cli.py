"""Command-line entry point.

Every command except ``sweep --format csv`` prints one JSON run report on stdout.
Exit codes: 0 success, 1 semantic failure (not resolving, rewrite not
applicable), 2 input error, 3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from pathlib import Path
from typing import Any, Callable, Sequence

from . import __version__
from .bounds import structural_lower_bound
from .construct import build_optimal, optimal_size
from .errors import GuardExceededError, PreconditionError, TreeTmdError
from .resolution import SensorSet, is_resolving
from .solver import SWEEP_HEADER, brute_force_tmd, greedy_resolving_set, sweep
from .transforms import apply, condition_report, plan_transform_a, plan_transform_b, plan_transform_c
from .tree import Tree, format_tree, parse_tree

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read_tree(path: str) -> Tree:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read tree file {path}: {exc.strerror}") from None
    return parse_tree(text)


def _parse_ids(text: str, what: str) -> list[int]:
    items = [t.strip() for t in text.replace("\n", ",").split(",") if t.strip()]
    try:
        return [int(t) for t in items]
    except ValueError:
        raise InputError(f"{what} must be integer vertex ids, got {text!r}") from None


def _read_sensors(args: argparse.Namespace, tree: Tree) -> SensorSet:
    if args.sensors is not None and args.sensors_file is not None:
        raise InputError("give either --sensors or --sensors-file, not both")
    if args.sensors is not None:
        ids = _parse_ids(args.sensors, "--sensors")
    elif args.sensors_file is not None:
        try:
            ids = _parse_ids(Path(args.sensors_file).read_text(), "sensors file")
        except OSError as exc:
            raise InputError(f"cannot read sensors file: {exc.strerror}") from None
    else:
        raise InputError("a sensor set is required (--sensors or --sensors-file)")
    if not ids:
        raise InputError("sensor set is empty")
    if len(set(ids)) != len(ids):
        raise InputError("sensor ids must be distinct")
    return SensorSet(ids, args.k).validate(tree)


def _report(command: str, inputs: dict[str, Any], outputs: dict[str, Any], started: float) -> str:
    body = {
        "command": command,
        "inputs": inputs,
        "outputs": outputs,
        "timing": {"elapsed_seconds": round(time.perf_counter() - started, 6)},
        "version": __version__,
    }
    return json.dumps(body, indent=2, sort_keys=False)


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


# commands: each returns (exit code, outputs)


def cmd_verify(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    tree = _read_tree(args.tree)
    verdict = is_resolving(tree, _read_sensors(args, tree))
    out: dict[str, Any] = {"resolving": verdict.ok}
    if verdict.pair is not None:
        out["failing_pair"] = list(verdict.pair)
    if verdict.uncovered is not None:
        out["uncovered"] = verdict.uncovered
    return (EXIT_OK if verdict.ok else EXIT_FALSE), out


def cmd_bounds(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    return EXIT_OK, structural_lower_bound(_read_tree(args.tree), args.k).to_dict()


def cmd_solve(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    tree = _read_tree(args.tree)
    if args.greedy:
        witness = greedy_resolving_set(tree, args.k, args.seed)
        return EXIT_OK, {
            "tmd": len(witness),
            "witness": list(witness.sensors),
            "subsets_checked": 0,
            "method": "greedy",
        }
    res = brute_force_tmd(tree, args.k)
    return EXIT_OK, {
        "tmd": res.tmd,
        "witness": list(res.witness.sensors),
        "subsets_checked": res.subsets_checked,
        "method": res.method,
    }


def cmd_construct(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    skeleton = _read_tree(args.skeleton) if args.skeleton else None
    tree, sensors = build_optimal(args.m, args.k, skeleton)
    sensors_out = args.sensors_out or args.out + ".sensors"
    _write(args.out, format_tree(tree))
    _write(sensors_out, "".join(f"{s}\n" for s in sensors.sensors))
    return EXIT_OK, {
        "n": tree.n,
        "expected_size": optimal_size(args.m, args.k),
        "sensors": list(sensors.sensors),
        "tree_file": args.out,
        "sensors_file": sensors_out,
    }


def cmd_transform(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    tree = _read_tree(args.tree)
    sensors = _read_sensors(args, tree)
    if args.op == "A":
        if args.sensor is None:
            raise InputError("--op A needs --sensor")
        plan = plan_transform_a(tree, sensors, args.sensor)
    elif args.op == "B":
        if args.pair is not None:
            pair = _parse_ids(args.pair, "--pair")
            if len(pair) != 2:
                raise InputError("--pair needs exactly two sensor ids")
        else:
            pair = condition_report(tree, sensors).shortening.longest_weak
            if pair is None:
                raise PreconditionError("no weak sensor path exists")
        plan = plan_transform_b(tree, sensors, pair[0], pair[1])
    else:
        plan = plan_transform_c(tree, sensors)
    result = apply(plan, tree)
    if args.out:
        _write(args.out, format_tree(result))
    out = plan.to_dict()
    out["n_before"] = tree.n
    out["n_after"] = result.n
    out["resolving_after"] = is_resolving(result, sensors).ok
    out["tree_file"] = args.out
    return EXIT_OK, out


def cmd_sweep(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    rows = [r.as_tuple() for r in sweep(args.n_max, args.k)]
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        writer.writerows(rows)
        return EXIT_OK, {}
    return EXIT_OK, {"header": list(SWEEP_HEADER), "rows": [list(r) for r in rows]}


def _add_tree_k(p: argparse.ArgumentParser) -> None:
    p.add_argument("tree", help="tree file: vertex count, then one 'u v' edge per line")
    p.add_argument("--k", type=int, required=True, help="distance threshold (>= 1)")


def _add_sensors(p: argparse.ArgumentParser) -> None:
    p.add_argument("--sensors", help="comma-separated sensor ids")
    p.add_argument("--sensors-file", help="file with one sensor id per line")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treetmd", description="Threshold-k metric dimension tools for trees."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check whether a sensor set resolves a tree")
    _add_tree_k(p)
    _add_sensors(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="worst-case and structural lower bounds")
    _add_tree_k(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("solve", help="exact (exhaustive) or greedy resolving set")
    _add_tree_k(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exhaustive search (default)")
    mode.add_argument("--greedy", action="store_true", help="greedy heuristic")
    p.add_argument("--seed", type=int, default=None, help="tie-break seed for --greedy")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("construct", help="largest tree resolved by m sensors")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--skeleton", help="tree file on m nodes describing sensor adjacency")
    p.add_argument("--out", required=True, help="output tree file")
    p.add_argument("--sensors-out", help="output sensors file (default: OUT.sensors)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("transform", help="apply rewrite A, B or C")
    _add_tree_k(p)
    _add_sensors(p)
    p.add_argument("--op", choices=["A", "B", "C"], required=True)
    p.add_argument("--sensor", type=int, help="sensor for rewrite A")
    p.add_argument("--pair", help="s0,s1 for rewrite B (default: longest weak path)")
    p.add_argument("--out", help="write the rewritten tree here")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("sweep", help="exact values and bounds over all small trees")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k", type=int, nargs="+", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_sweep)
    return parser


def _inputs(args: argparse.Namespace) -> dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    func: Callable[[argparse.Namespace], tuple[int, dict[str, Any]]] = args.func
    try:
        code, outputs = func(args)
    except GuardExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except PreconditionError as exc:
        print(_report(args.command, _inputs(args), {"error": str(exc)}, started))
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE
    except (InputError, TreeTmdError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not (args.command == "sweep" and args.format == "csv"):
        print(_report(args.command, _inputs(args), outputs, started))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
