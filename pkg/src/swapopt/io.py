"""CSV ingestion, report rendering, JSON encoding and DOT export.

Input schema: a UTF-8 CSV with a header row whose last two columns are
``order`` and ``count``; every column before them is a group key. Line
numbers in diagnostics count the header as line 1.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Iterable, Sequence

from ._errors import IngestionError, InvalidArgumentError, Undefined
from .distribution import OrderDistribution, from_count_vector
from .optimality import DEFAULT_ENUM_CAP, SwapReport, analyze
from .permutohedron import Permutohedron, build_permutohedron, check_alphabet, default_alphabet
from .stats import EnsembleResult, WilcoxonResult, p_optimal_given_m
from .structure import HasseDiagram, StructureFlags, structure_flags

REPORT_SCHEMA = "swapopt.report/1"
ENSEMBLE_SCHEMA = "swapopt.ensemble/1"


class Dataset(list):
    """List of ``(group, OrderDistribution)`` pairs that remembers its key names."""

    def __init__(self, key_names: Sequence[str], groups: Iterable = ()):
        super().__init__(groups)
        self.key_names = tuple(key_names)


def ingest_csv(
    path,
    n: int = 3,
    alphabet: str | None = None,
    group_by: Sequence[str] | None = None,
) -> Dataset:
    """Read per-order counts and build one distribution per group.

    ``group_by`` selects a subset of the key columns; counts of groups that
    agree on it are pooled. Groups come out sorted by their key tuples.
    """
    alphabet = check_alphabet(alphabet or default_alphabet(n), n)
    graph = build_permutohedron(n)
    try:
        handle = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestionError(f"cannot read {path}: {exc.strerror}") from None
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise IngestionError(f"{path}: empty file") from None
        except UnicodeDecodeError:
            raise IngestionError(f"{path}: not valid UTF-8") from None
        header = [h.strip() for h in header]
        if len(header) < 2 or header[-2:] != ["order", "count"]:
            raise IngestionError(
                f"{path}: header must end with 'order,count', got {','.join(header)!r}", row=1
            )
        key_names = header[:-2]
        if len(set(key_names)) != len(key_names):
            raise IngestionError(f"{path}: repeated key column", row=1)
        if group_by is None:
            selected = list(range(len(key_names)))
        else:
            unknown = [g for g in group_by if g not in key_names]
            if unknown:
                raise IngestionError(f"{path}: unknown group column(s) {', '.join(unknown)}", row=1)
            selected = [key_names.index(g) for g in group_by]

        counts: dict[tuple, list[int]] = {}
        first_row: dict[tuple, int] = {}
        seen: dict[tuple, int] = {}
        try:
            for line, row in enumerate(reader, start=2):
                if not row or all(not cell.strip() for cell in row):
                    continue
                if len(row) != len(header):
                    raise IngestionError(
                        f"malformed row: expected {len(header)} fields, got {len(row)}", row=line
                    )
                cells = [c.strip() for c in row]
                keys, label, raw = tuple(cells[:-2]), cells[-2], cells[-1]
                try:
                    count = int(raw)
                except ValueError:
                    count = -1
                if count < 0:
                    raise IngestionError(
                        f"malformed row: count {raw!r} is not a non-negative integer", row=line
                    )
                try:
                    vertex = graph.index_of_label(label, alphabet)
                except InvalidArgumentError:
                    raise IngestionError(
                        f"invalid order label {label!r} for alphabet {alphabet!r}", row=line
                    ) from None
                if (keys, vertex) in seen:
                    raise IngestionError(
                        f"duplicate order {label!r} for group {','.join(keys)!r} "
                        f"(first on row {seen[keys, vertex]})",
                        row=line,
                    )
                seen[keys, vertex] = line
                group = tuple(keys[k] for k in selected)
                first_row.setdefault(group, line)
                counts.setdefault(group, [0] * graph.N)[vertex] += count
        except UnicodeDecodeError:
            raise IngestionError(f"{path}: not valid UTF-8") from None

    groups = []
    for group in sorted(counts):
        if sum(counts[group]) == 0:
            raise IngestionError(
                f"zero total count for group {','.join(group)!r}", row=first_row[group]
            )
        groups.append((group, from_count_vector(n, counts[group])))
    return Dataset([key_names[k] for k in selected], groups)


# -- numbers -----------------------------------------------------------------


def round_half_away(x: Fraction, digits: int) -> Fraction:
    scale = 10**digits
    q = floor(abs(Fraction(x)) * scale + Fraction(1, 2))
    return Fraction(q if x >= 0 else -q, scale)


def fmt_number(x, precision: int = 2) -> str:
    """Decimal rendering rounded half away from zero, trailing zeros dropped.

    >>> fmt_number(Fraction(3, 2)), fmt_number(Fraction(1, 30), 3), fmt_number(1)
    ('1.5', '0.033', '1')
    """
    if isinstance(x, Undefined):
        return "undefined"
    if x is None:
        return "n/a"
    if precision < 0:
        raise InvalidArgumentError(f"precision must be >= 0, got {precision}")
    r = round_half_away(Fraction(x), precision)
    sign = "-" if r < 0 else ""
    scaled = abs(r.numerator * 10**precision // r.denominator)
    whole, frac = divmod(scaled, 10**precision)
    text = str(whole)
    if precision:
        digits = str(frac).rjust(precision, "0").rstrip("0")
        if digits:
            text += "." + digits
    return sign + text if text != "0" else "0"


def rational_json(x) -> dict:
    if isinstance(x, Undefined):
        return {"undefined": True, "reason": x.reason}
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def rational_from_json(obj) -> Fraction | Undefined:
    if obj.get("undefined"):
        return Undefined(obj.get("reason", ""))
    return Fraction(obj["num"], obj["den"])


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class GroupReport:
    """Everything reported for one group; rounding happens only when rendering."""

    group: tuple[str, ...]
    dist: OrderDistribution
    report: SwapReport
    flags: StructureFlags

    @property
    def p_o(self) -> Fraction | None:
        return p_optimal_given_m(self.report.m) if self.report.n == 3 else None


def report_groups(
    dataset: Iterable[tuple[tuple[str, ...], OrderDistribution]],
    enum_cap: int = DEFAULT_ENUM_CAP,
    verify_bruteforce: bool | None = None,
) -> list[GroupReport]:
    out = []
    for group, d in dataset:
        graph = build_permutohedron(d.n)
        report = analyze(graph, d, verify_bruteforce=verify_bruteforce, enum_cap=enum_cap)
        out.append(GroupReport(group, d, report, structure_flags(graph, d)))
    return out


TABLE_COLUMNS = (
    "F", "m", "S_bar", "pi_o", "p_o(m)", "d_min", "d", "d_r", "d_max", "Omega",
    "contiguous", "top2_adjacent", "radiation",
)


def _flag(x) -> str:
    return "undefined" if isinstance(x, Undefined) else ("yes" if x else "no")


def _row(r: GroupReport, precision: int) -> list[str]:
    rep = r.report
    fine = precision + 1
    return [
        str(r.dist.F) if r.dist.F is not None else "n/a",
        str(rep.m),
        fmt_number(rep.S_bar, precision),
        fmt_number(rep.pi_o, fine),
        fmt_number(r.p_o, fine),
        fmt_number(rep.avg_d_min, precision),
        fmt_number(rep.avg_d, precision),
        fmt_number(rep.avg_d_random, precision),
        fmt_number(rep.avg_d_max_global, precision),
        fmt_number(rep.omega, precision),
        _flag(r.flags.contiguous),
        _flag(r.flags.adjacency_top2),
        _flag(r.flags.radiation),
    ]


def _align(rows: list[list[str]]) -> str:
    widths = [max(len(row[k]) for row in rows) for k in range(len(rows[0]))]
    return "".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n" for row in rows
    )


def render_table(reports: Sequence[GroupReport], key_names: Sequence[str], precision: int = 2) -> str:
    """Fixed-column text table, one row per group in the given order.

    ``pi_o`` and ``p_o(m)`` get one extra decimal since they are small.
    """
    rows = [list(key_names) + list(TABLE_COLUMNS)]
    rows += [list(r.group) + _row(r, precision) for r in reports]
    return _align(rows)


def report_to_json(r: GroupReport, key_names: Sequence[str], alphabet: str) -> dict:
    rep = r.report
    graph = build_permutohedron(rep.n)
    return {
        "group": dict(zip(key_names, r.group)),
        "counts": (
            {graph.label(k, alphabet): c for k, c in enumerate(r.dist.counts)}
            if r.dist.counts is not None
            else None
        ),
        "F": r.dist.F,
        "m": rep.m,
        "S": rational_json(rep.S),
        "S_bar": rational_json(rep.S_bar),
        "pi_o": rational_json(rep.pi_o) if rep.pi_o is not None else None,
        "p_o": rational_json(r.p_o) if r.p_o is not None else None,
        "d_min": rational_json(rep.avg_d_min),
        "d": rational_json(rep.avg_d),
        "d_r": rational_json(rep.avg_d_random),
        "d_max": rational_json(rep.avg_d_max_global),
        "omega": rational_json(rep.omega),
        "optimal": rep.is_optimal,
        "bounds": [rational_json(b) for b in rep.bounds],
        "distance_mass": [rational_json(x) for x in rep.distance_mass],
        "Z": rational_json(rep.Z) if rep.Z is not None else None,
        "min_method": rep.min_method,
        "structure": {
            "contiguous": r.flags.contiguous,
            "top2_adjacent": (
                None if isinstance(r.flags.adjacency_top2, Undefined) else r.flags.adjacency_top2
            ),
            "radiation": r.flags.radiation,
            "slash_pairs": [[graph.label(v, alphabet) for v in e] for e in r.flags.slash_pairs],
            "wedge_triples": [[graph.label(v, alphabet) for v in t] for t in r.flags.wedge_triples],
        },
    }


def render_json(
    reports: Sequence[GroupReport], key_names: Sequence[str], n: int, alphabet: str
) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "n": n,
        "alphabet": alphabet,
        "groups": [report_to_json(r, key_names, alphabet) for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _wilcoxon_fields(w: WilcoxonResult | Undefined) -> tuple:
    if isinstance(w, Undefined):
        return w, w
    return w.V, w.p


def render_ensemble_table(result: EnsembleResult, precision: int = 2) -> str:
    V, p_w = _wilcoxon_fields(result.wilcoxon)
    sig = precision + 2
    rows = [
        ["T", str(result.T)],
        ["B", str(result.B)],
        ["C", str(result.C)],
        ["P_o", _fmt_p(result.p_optimal, sig)],
        ["P_c", _fmt_p(result.p_contiguous, sig)],
        ["V", fmt_number(V, precision)],
        ["P_W", _fmt_p(p_w, sig)],
        ["T(m)", " ".join(f"{m}:{t}" for m, t in result.T_of_m.items())],
    ]
    return _align(rows)


def _fmt_p(x, sig: int) -> str:
    """Probabilities print with ``sig`` significant digits in scientific form."""
    if isinstance(x, Undefined):
        return "undefined"
    return f"{float(x):.{max(sig - 1, 0)}e}"


def ensemble_to_json(result: EnsembleResult) -> dict:
    V, p_w = _wilcoxon_fields(result.wilcoxon)
    return {
        "schema": ENSEMBLE_SCHEMA,
        "T": result.T,
        "B": result.B,
        "C": result.C,
        "P_o": rational_json(result.p_optimal),
        "P_c": rational_json(result.p_contiguous),
        "wilcoxon": {
            "V": rational_json(V),
            "p": rational_json(p_w),
            "alternative": None if isinstance(result.wilcoxon, Undefined) else result.wilcoxon.alternative,
        },
        "T_of_m": {str(m): t for m, t in result.T_of_m.items()},
    }


# -- DOT ---------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def permutohedron_dot(graph: Permutohedron, alphabet: str | None = None) -> str:
    """Undirected DOT, nodes and edges in canonical order."""
    alphabet = check_alphabet(alphabet or default_alphabet(graph.n), graph.n)
    labels = graph.labels(alphabet)
    lines = [f"graph permutohedron_{graph.n} {{", "  node [shape=plaintext];"]
    lines += [f"  {_quote(s)};" for s in labels]
    lines += [f"  {_quote(labels[u])} -- {_quote(labels[v])};" for u, v in graph.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(
    diagram: HasseDiagram,
    graph: Permutohedron,
    alphabet: str | None = None,
    name: str = "hasse",
    precision: int = 2,
) -> str:
    """Directed DOT of a Hasse diagram; arcs point from larger to smaller values.

    Tied neighbours are joined by dashed undirected edges and each tie group
    is drawn as a cluster labelled ``tie``.
    """
    alphabet = check_alphabet(alphabet or default_alphabet(graph.n), graph.n)
    labels = graph.labels(alphabet)
    lines = [f"digraph {_quote(name)} {{", "  node [shape=plaintext];"]
    for v in range(graph.N):
        # \n inside a DOT string is a line break, so it is appended unescaped
        label = _quote(labels[v])[:-1] + "\\n" + fmt_number(diagram.values[v], precision) + '"'
        lines.append(f"  {_quote(labels[v])} [label={label}];")
    for k, group in enumerate(diagram.tie_groups):
        members = " ".join(_quote(labels[v]) + ";" for v in group)
        lines.append(f'  subgraph cluster_tie_{k} {{ label="tie"; style=dashed; {members} }}')
    for u, v in diagram.arcs:
        lines.append(f"  {_quote(labels[u])} -> {_quote(labels[v])};")
    for u, v in diagram.ties:
        lines.append(f"  {_quote(labels[u])} -> {_quote(labels[v])} [dir=none, style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def group_slug(group: Sequence[str]) -> str:
    text = "_".join(group) or "all"
    return "".join(c if c.isalnum() or c in "-_." else "_" for c in text)
