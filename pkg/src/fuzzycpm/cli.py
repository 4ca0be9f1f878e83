"""Command-line interface: ``fuzzycpm validate|analyze|sample|survey``."""

from __future__ import annotations

import argparse
import json
import re
import sys
import warnings
from dataclasses import asdict, dataclass
from decimal import Decimal
from pathlib import Path

from . import __version__, kernel
from .diagnostics import (
    compare_cp_sets,
    explain_discrepancies,
    finding_to_dict,
    format_finding,
    format_report,
    report_to_dict,
)
from .errors import CapExceeded, ValidationError
from .forward import DEFAULT_PROVENANCE_CAP, fuzzy_forward_recursion
from .fuzzy import DiscreteFuzzyQuantity, area, format_scaled
from .network import (
    DEFAULT_PATH_CAP,
    ProjectNetwork,
    build_network,
    bundled_network_path,
    extreme_lengths,
)
from .oracle import (
    DEFAULT_BATCH,
    DEFAULT_CONFIG_CAP,
    DEFAULT_MAX_BATCHES,
    DEFAULT_TOLERANCE,
    configuration_table,
    oracle_cp_set,
    sample_cp_set,
)
from .survey import run_survey

EXIT_OK = 0
EXIT_VALIDATION = 3
EXIT_CAP = 4
EXIT_IO = 5


@dataclass
class RunConfig:
    command: str
    input: str | None
    format: str = "text"
    seed: int = 0
    tolerance: str = str(DEFAULT_TOLERANCE)
    batch_size: int = DEFAULT_BATCH
    max_batches: int = DEFAULT_MAX_BATCHES
    config_cap: int = DEFAULT_CONFIG_CAP
    path_cap: int = DEFAULT_PATH_CAP
    provenance_cap: int = DEFAULT_PROVENANCE_CAP
    table: bool = False


class InputError(Exception):
    pass


def _fmt_area(value: Decimal) -> str:
    if value == 0:
        return "0"
    return format(value.normalize(), "f")


def _points(q: DiscreteFuzzyQuantity) -> list[list[str]]:
    return [[format_scaled(d, q.scale), format_scaled(b, q.precision)] for d, b in q.points]


def _line_of(text: str, activity_id: str) -> int | None:
    m = re.search(r'"id"\s*:\s*"?' + re.escape(activity_id) + r'"?\s*[,}]', text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def resolve_input(path: str) -> Path:
    p = Path(path)
    if p.is_file():
        return p
    if p.is_dir() and (p / "network.json").is_file():
        return p / "network.json"
    if p.with_suffix(".json").is_file():
        return p.with_suffix(".json")
    bundled = bundled_network_path(p.stem)
    if bundled is not None:
        return bundled
    raise InputError(f"no such network file: {path}")


def load(path: str) -> tuple[ProjectNetwork, list[str]]:
    """Read and validate a network, returning it with any parse warnings."""
    src = resolve_input(path)
    try:
        text = src.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {src}: {e}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"{src}:{e.lineno}:{e.colno}: invalid JSON: {e.msg}") from None
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            g = build_network(raw)
        except ValidationError as e:
            m = re.search(r"activity '([^']*)'", str(e))
            line = _line_of(text, m.group(1)) if m else None
            where = f"{src}:{line}" if line else str(src)
            e.args = (f"{where}: {e}",)
            raise
    return g, [str(w.message) for w in caught]


def _emit(args, text_lines: list[str], doc: dict) -> None:
    if args.format == "json":
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(text_lines))


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=getattr(args, "network", None),
        format=args.format,
        seed=getattr(args, "seed", 0),
        tolerance=str(getattr(args, "tolerance", DEFAULT_TOLERANCE)),
        batch_size=getattr(args, "batch", DEFAULT_BATCH),
        max_batches=getattr(args, "max_batches", DEFAULT_MAX_BATCHES),
        config_cap=args.config_cap,
        path_cap=args.path_cap,
        provenance_cap=args.provenance_cap,
        table=getattr(args, "table", False),
    )


def cmd_validate(args) -> int:
    g, notes = load(args.network)
    count = g.configuration_count()
    lines = [f"warning: {n}" for n in notes]
    lines.append(f"valid: {len(g)} activities, {count} configurations")
    lines.append(f"start: {g.start}  finish: {g.finish}")
    if g.inserted:
        lines.append("inserted dummies: " + ", ".join(g.inserted))
    doc = {
        "config": asdict(_config(args)),
        "valid": True,
        "activities": len(g),
        "configurations": count,
        "start": g.start,
        "finish": g.finish,
        "inserted": list(g.inserted),
        "warnings": notes,
    }
    _emit(args, lines, doc)
    return EXIT_OK


def _table_lines(tab, g) -> list[str]:
    s, p = g.scale, g.precision
    head = [f"{a}" for a in g.ids] + ["P " + "-".join(path) for path in tab.paths] + ["CP", "belief"]
    rows = []
    for r in tab.rows:
        cells = [f"{format_scaled(d, s)}/{format_scaled(b, p)}"
                 for d, b in r.configuration.choices.values()]
        cells += [format_scaled(x, s) for x in r.path_lengths]
        cells += [format_scaled(r.cp_length, s), format_scaled(r.belief, p)]
        rows.append(cells)
    widths = [max(len(x[i]) for x in [head, *rows]) for i in range(len(head))]
    out = ["  ".join(c.rjust(w) for c, w in zip(x, widths)) for x in [head, *rows]]
    out.append(f"aggregated: {tab.cp_set}")
    return out


def _table_doc(tab, g) -> dict:
    s, p = g.scale, g.precision
    return {
        "paths": ["-".join(path) for path in tab.paths],
        "rows": [
            {
                "choices": {a: [format_scaled(d, s), format_scaled(b, p)]
                            for a, (d, b) in r.configuration.choices.items()},
                "path_lengths": [format_scaled(x, s) for x in r.path_lengths],
                "cp_length": format_scaled(r.cp_length, s),
                "belief": format_scaled(r.belief, p),
            }
            for r in tab.rows
        ],
        "aggregated": str(tab.cp_set),
    }


def cmd_analyze(args) -> int:
    g, notes = load(args.network)
    rec = fuzzy_forward_recursion(g).cp_set
    orc = oracle_cp_set(g, args.config_cap, workers=args.workers)
    lo, hi = extreme_lengths(g)
    report = compare_cp_sets(rec, orc)
    try:
        findings = explain_discrepancies(g, args.provenance_cap)
        skipped = None
    except CapExceeded as e:
        findings, skipped = [], str(e)

    s = g.scale
    lines = [f"warning: {n}" for n in notes]
    lines += [
        f"network: {args.network} ({len(g)} activities, {g.configuration_count()} configurations)",
        f"recursion: {rec}",
        f"oracle: {orc}",
        f"extreme lengths: {format_scaled(lo, s)} {format_scaled(hi, s)}",
        f"AREA recursion: {_fmt_area(area(rec))}",
        f"AREA oracle: {_fmt_area(area(orc))}",
        "",
        format_report(report),
    ]
    if skipped:
        lines.append(f"explanations skipped: {skipped}")
    elif findings:
        lines.append("")
        lines += [format_finding(f, g) for f in findings]
    doc = {
        "config": asdict(_config(args)),
        "activities": len(g),
        "configurations": g.configuration_count(),
        "recursion": str(rec),
        "recursion_points": _points(rec),
        "oracle": str(orc),
        "oracle_points": _points(orc),
        "extreme_lengths": [format_scaled(lo, s), format_scaled(hi, s)],
        "area": {"recursion": _fmt_area(area(rec)), "oracle": _fmt_area(area(orc))},
        "discrepancy": report_to_dict(report),
        "findings": [finding_to_dict(f, g) for f in findings],
        "explanations_skipped": skipped,
        "warnings": notes,
    }
    if args.table:
        tab = configuration_table(g, args.config_cap, args.path_cap)
        lines += ["", *_table_lines(tab, g)]
        doc["table"] = _table_doc(tab, g)
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_sample(args) -> int:
    g, notes = load(args.network)
    res = sample_cp_set(g, args.seed, args.tolerance, args.batch, args.max_batches)
    lines = [f"warning: {n}" for n in notes]
    lines.append(f"estimate: {res.estimate}")
    lines.append("samples  area  relative_change")
    trace_doc = []
    for t in res.trace:
        change = "-" if t.relative_change is None else _fmt_area(t.relative_change)
        lines.append(f"{t.samples}  {_fmt_area(t.area)}  {change}")
        trace_doc.append({"samples": t.samples, "area": _fmt_area(t.area),
                          "relative_change": None if t.relative_change is None else change})
    status = "converged" if res.converged else "stopped at max batches"
    lines.append(f"{status} after {res.samples} samples")
    if not res.normal:
        lines.append("warning: NotNormalYet: estimate has no belief-1 point")
    oracle_doc = None
    if g.configuration_count() <= args.config_cap:
        orc = oracle_cp_set(g, args.config_cap)
        same = orc.points == res.estimate.points
        lines.append("oracle: " + ("confirms estimate" if same else f"differs: {orc}"))
        oracle_doc = {"oracle": str(orc), "confirmed": same}
    else:
        lines.append("oracle: not run (configuration count above cap)")
    doc = {
        "config": asdict(_config(args)),
        "estimate": str(res.estimate),
        "estimate_points": _points(res.estimate),
        "normal": res.normal,
        "converged": res.converged,
        "samples": res.samples,
        "trace": trace_doc,
        "oracle": oracle_doc,
        "warnings": notes,
    }
    _emit(args, lines, doc)
    return EXIT_OK


def cmd_survey(args) -> int:
    extra = []
    if args.include:
        for path in args.include:
            extra.append(load(path)[0])
    summ = run_survey(
        args.count, seed=args.seed, activities=args.activities, max_points=args.max_points,
        edge_prob=args.edge_prob, max_duration=args.max_duration, chain=args.chains_only,
        extra=extra, config_cap=args.config_cap,
    )

    def dec(x):
        return None if x is None else _fmt_area(x)

    stats = {
        "instances": summ.instances,
        "discrepant": summ.discrepant,
        "fraction": dec(summ.fraction),
        "mean_max_delta": dec(summ.mean_max_delta),
        "largest_delta": dec(summ.largest_delta),
        "strict_support_containment": summ.strict_support,
        "negative_delta_instances": summ.negative_deltas,
    }
    lines = [f"{k}: {'-' if v is None else v}" for k, v in stats.items()]
    _emit(args, lines, {"config": asdict(_config(args)), "summary": stats})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--config-cap", type=int, default=DEFAULT_CONFIG_CAP)
    common.add_argument("--path-cap", type=int, default=DEFAULT_PATH_CAP)
    common.add_argument("--provenance-cap", type=int, default=DEFAULT_PROVENANCE_CAP)

    parser = argparse.ArgumentParser(
        prog="fuzzycpm",
        description="Fuzzy critical path analysis with discrete fuzzy durations.",
    )
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__} ({kernel.BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="check a network file")
    p.add_argument("network")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common],
                       help="recursion vs extension-principle oracle")
    p.add_argument("network")
    p.add_argument("--table", action="store_true", help="print the per-configuration table")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", parents=[common], help="random configuration sampling")
    p.add_argument("network")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=Decimal, default=DEFAULT_TOLERANCE)
    p.add_argument("--batch", type=int, default=DEFAULT_BATCH)
    p.add_argument("--max-batches", type=int, default=DEFAULT_MAX_BATCHES)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("survey", parents=[common],
                       help="discrepancy rate over random networks")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--activities", type=int, default=5)
    p.add_argument("--max-points", type=int, default=3)
    p.add_argument("--edge-prob", type=float, default=0.4)
    p.add_argument("--max-duration", type=int, default=9)
    p.add_argument("--chains-only", action="store_true")
    p.add_argument("--include", action="append", metavar="NETWORK",
                   help="also survey this network file (repeatable)")
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except CapExceeded as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
