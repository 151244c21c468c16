"""Command line interface.

    swapopt analyze DATA.csv [--format json]
    swapopt ensemble DATA.csv [--where condition=reversible]
    swapopt export permutohedron --n 3
    swapopt export hasse DATA.csv [--output-dir DIR]

Exit codes: 0 success, 1 usage error, 2 data error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._errors import CapacityError, IngestionError, InvalidArgumentError, SwapOptError, UnsupportedError
from .io import (
    Dataset,
    ensemble_to_json,
    group_slug,
    hasse_dot,
    ingest_csv,
    permutohedron_dot,
    render_ensemble_table,
    render_json,
    render_table,
    report_groups,
)
from .optimality import DEFAULT_ENUM_CAP
from .permutohedron import build_permutohedron, check_alphabet, default_alphabet
from .stats import run_ensemble, trial_from_distribution
from .structure import hasse

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_CAPACITY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for data errors here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, data: bool = True) -> None:
    if data:
        p.add_argument("data", help="CSV with key columns, then 'order', then 'count'")
        p.add_argument("--group-by", help="comma-separated key columns (default: all of them)")
    p.add_argument("--n", type=int, default=3, help="number of constituents (default 3)")
    p.add_argument("--alphabet", help="constituent symbols (default SOV for n=3)")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--precision", type=int, default=2, help="decimals in table output")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP,
                   help="largest number of shuffle placements to enumerate")
    p.add_argument("--verify-bruteforce", choices=("on", "off"),
                   help="cross-check the n=3 closed form by enumeration (default on)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="swapopt", description="Swap distance minimization analysis.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="per-group report")
    _common(p)

    p = sub.add_parser("ensemble", help="optimality, contiguity and Wilcoxon tests over groups")
    _common(p)
    p.add_argument("--where", action="append", default=[], metavar="KEY=VALUE",
                   help="keep only groups with this key value; repeatable")

    p = sub.add_parser("export", help="DOT export")
    what = p.add_subparsers(dest="what", required=True, parser_class=_Parser)
    q = what.add_parser("permutohedron", help="undirected permutohedron")
    _common(q, data=False)
    q.add_argument("-o", "--output", help="file to write (default stdout)")
    q = what.add_parser("hasse", help="Hasse diagram of each group's probabilities")
    _common(q)
    q.add_argument("--where", action="append", default=[], metavar="KEY=VALUE")
    q.add_argument("--output-dir", help="write one .dot file per group here (default stdout)")
    return parser


def _alphabet(args) -> str:
    return check_alphabet(args.alphabet or default_alphabet(args.n), args.n)


def _verify(args):
    return None if args.verify_bruteforce is None else args.verify_bruteforce == "on"


def _load(args) -> Dataset:
    group_by = None
    if args.group_by is not None:
        group_by = [g.strip() for g in args.group_by.split(",") if g.strip()]
    dataset = ingest_csv(args.data, n=args.n, alphabet=args.alphabet, group_by=group_by)
    for cond in getattr(args, "where", []):
        key, sep, value = cond.partition("=")
        if not sep:
            raise UsageError(f"--where expects KEY=VALUE, got {cond!r}")
        if key not in dataset.key_names:
            raise UsageError(f"--where: unknown key column {key!r}")
        k = dataset.key_names.index(key)
        dataset = Dataset(dataset.key_names, [(g, d) for g, d in dataset if g[k] == value])
    if not dataset:
        raise IngestionError("no groups selected")
    return dataset


def cmd_analyze(args, out) -> None:
    dataset = _load(args)
    reports = report_groups(dataset, enum_cap=args.enum_cap, verify_bruteforce=_verify(args))
    if args.format == "json":
        out.write(render_json(reports, dataset.key_names, args.n, _alphabet(args)))
    else:
        out.write(render_table(reports, dataset.key_names, args.precision))


def cmd_ensemble(args, out) -> None:
    if args.n != 3:
        raise UnsupportedError("ensemble tests use hexagon chance models and need n = 3")
    dataset = _load(args)
    graph = build_permutohedron(args.n)
    trials = [
        trial_from_distribution(graph, d, ",".join(g), enum_cap=args.enum_cap) for g, d in dataset
    ]
    result = run_ensemble(trials)
    if args.format == "json":
        out.write(json.dumps(ensemble_to_json(result), indent=2) + "\n")
    else:
        out.write(render_ensemble_table(result, args.precision))


def _write(path: Path, text: str) -> None:
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot write {path}: {exc.strerror}") from None


def cmd_export(args, out) -> None:
    alphabet = _alphabet(args)
    if args.what == "permutohedron":
        text = permutohedron_dot(build_permutohedron(args.n), alphabet)
        if args.output:
            _write(Path(args.output), text)
        else:
            out.write(text)
        return
    dataset = _load(args)
    graph = build_permutohedron(args.n)
    outdir = Path(args.output_dir) if args.output_dir else None
    if outdir is not None and not outdir.is_dir():
        raise IngestionError(f"output directory {outdir} does not exist")
    for group, d in dataset:
        text = hasse_dot(hasse(d.probs, graph), graph, alphabet, name=",".join(group),
                         precision=args.precision)
        if outdir is None:
            out.write(text)
        else:
            _write(outdir / f"{group_slug(group)}.dot", text)


COMMANDS = {"analyze": cmd_analyze, "ensemble": cmd_ensemble, "export": cmd_export}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with EXIT_USAGE on bad usage
    try:
        if args.precision < 0:
            raise UsageError("--precision must be >= 0")
        if args.enum_cap < 1:
            raise UsageError("--enum-cap must be >= 1")
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"swapopt: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"swapopt: capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (IngestionError, InvalidArgumentError, UnsupportedError, SwapOptError) as exc:
        print(f"swapopt: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
