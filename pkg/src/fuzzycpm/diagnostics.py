"""Comparing the fuzzy forward recursion with the enumeration oracle.

:func:`compare_cp_sets` lists per-length belief differences.
:func:`explain_discrepancies` looks inside every fuzzy maximum taken at a
merge activity and reports operand pairs that can only be realized by
giving some shared ancestor two different durations at once.  Such a pair
is a *potential* error: it may or may not change the final beliefs.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

from .forward import (
    DEFAULT_PROVENANCE_CAP,
    ProvenancePoint,
    fuzzy_forward_with_provenance,
    realizations,
)
from .errors import ScaleMismatch
from .fuzzy import DiscreteFuzzyQuantity, format_scaled, fuzzy_max
from .network import ProjectNetwork

__all__ = [
    "Conflict",
    "CrossConfigurationFinding",
    "DiscrepancyReport",
    "DiscrepancyRow",
    "compare_cp_sets",
    "explain_discrepancies",
    "finding_to_dict",
    "format_finding",
    "format_report",
    "report_to_dict",
]


@dataclass(frozen=True)
class DiscrepancyRow:
    length: int
    recursion_belief: int | None
    oracle_belief: int | None

    @property
    def delta(self) -> int:
        return (self.recursion_belief or 0) - (self.oracle_belief or 0)


@dataclass(frozen=True)
class DiscrepancyReport:
    rows: tuple[DiscrepancyRow, ...]
    scale: int
    precision: int

    @property
    def mismatches(self) -> tuple[DiscrepancyRow, ...]:
        return tuple(r for r in self.rows if r.delta != 0)

    @property
    def mismatch_count(self) -> int:
        return len(self.mismatches)

    @property
    def max_delta(self) -> int:
        return max((r.delta for r in self.rows), default=0)

    @property
    def min_delta(self) -> int:
        return min((r.delta for r in self.rows), default=0)

    @property
    def supports_identical(self) -> bool:
        return all(r.recursion_belief is not None and r.oracle_belief is not None
                   for r in self.rows)

    def delta_decimal(self, raw: int) -> Decimal:
        return Decimal(raw).scaleb(-self.precision)


def compare_cp_sets(recursion: DiscreteFuzzyQuantity,
                    oracle: DiscreteFuzzyQuantity) -> DiscrepancyReport:
    if recursion.scale != oracle.scale or recursion.precision != oracle.precision:
        raise ScaleMismatch("cannot compare quantities with different units")
    r, o = recursion.as_dict(), oracle.as_dict()
    rows = tuple(
        DiscrepancyRow(length, r.get(length), o.get(length))
        for length in sorted(r.keys() | o.keys())
    )
    return DiscrepancyReport(rows, recursion.scale, recursion.precision)


@dataclass(frozen=True)
class Conflict:
    activity: str
    left_values: tuple[int, ...]
    right_values: tuple[int, ...]


@dataclass(frozen=True)
class CrossConfigurationFinding:
    merge: str
    left_sources: tuple[str, ...]   # predecessors folded into the left operand
    right_source: str
    left: ProvenancePoint
    right: ProvenancePoint
    result: tuple[int, int]         # (length, belief) of the earliest start point
    conflicts: tuple[Conflict, ...]

    @property
    def conflicting_activities(self) -> tuple[str, ...]:
        return tuple(c.activity for c in self.conflicts)


def _compatible(w1, w2) -> bool:
    d1 = dict(w1)
    return all(d1.get(a, d) == d for a, d in w2)


def _conflicts(g, left_w, right_w) -> tuple[Conflict, ...]:
    if not left_w or not right_w:
        return ()
    lvals: dict[str, set[int]] = {}
    rvals: dict[str, set[int]] = {}
    for w in left_w:
        for a, d in w:
            lvals.setdefault(a, set()).add(d)
    for w in right_w:
        for a, d in w:
            rvals.setdefault(a, set()).add(d)
    shared = [a for a in g.ids if a in lvals and a in rvals]
    disjoint = [a for a in shared if not lvals[a] & rvals[a]]
    # no single ancestor to blame: list every one whose options differ
    picked = disjoint or [a for a in shared if lvals[a] != rvals[a]]
    return tuple(Conflict(a, tuple(sorted(lvals[a])), tuple(sorted(rvals[a]))) for a in picked)


def _points(q: DiscreteFuzzyQuantity, table) -> list[ProvenancePoint]:
    return [
        ProvenancePoint(d, b, tuple(w for w, wb in table.get(d, ()) if wb >= b))
        for d, b in q.points
    ]


def explain_discrepancies(g: ProjectNetwork,
                          cap: int = DEFAULT_PROVENANCE_CAP) -> list[CrossConfigurationFinding]:
    """Fuzzy-max operand pairs that no single configuration can realize.

    Every merge activity's predecessor fold is replayed.  For each pair of
    operand points whose combination attains the resulting earliest-start
    belief, the witnesses of the two points are checked for an assignment
    that agrees on all shared ancestors; a finding is emitted when none
    exists.
    """
    sched = fuzzy_forward_with_provenance(g, cap)
    findings = []
    for m in g.order:
        preds = g.predecessors[m]
        if len(preds) < 2:
            continue
        acc = sched.ef[preds[0]]
        acc_points = list(sched.provenance[preds[0]])
        for k in range(1, len(preds)):
            right_id = preds[k]
            right = sched.ef[right_id]
            right_points = sched.provenance[right_id]
            merged = fuzzy_max(acc, right)
            best = merged.as_dict()
            for lp in acc_points:
                for rp in right_points:
                    z = max(lp.duration, rp.duration)
                    mv = min(lp.belief, rp.belief)
                    if mv != best[z]:
                        continue
                    if any(_compatible(w1, w2) for w1 in lp.witnesses for w2 in rp.witnesses):
                        continue
                    findings.append(CrossConfigurationFinding(
                        merge=m,
                        left_sources=tuple(preds[:k]),
                        right_source=right_id,
                        left=lp,
                        right=rp,
                        result=(z, mv),
                        conflicts=_conflicts(g, lp.witnesses, rp.witnesses),
                    ))
            acc = merged
            if k + 1 < len(preds):
                acc_points = _points(acc, realizations(g, preds[:k + 1]))
    return findings


# rendering

def _b(raw, precision):
    return None if raw is None else format_scaled(raw, precision)


def report_to_dict(report: DiscrepancyReport) -> dict:
    p, s = report.precision, report.scale
    return {
        "rows": [
            {
                "length": format_scaled(r.length, s),
                "recursion_belief": _b(r.recursion_belief, p),
                "oracle_belief": _b(r.oracle_belief, p),
                "delta": format_scaled(r.delta, p),
            }
            for r in report.rows
        ],
        "summary": {
            "mismatched_lengths": report.mismatch_count,
            "max_delta": format_scaled(report.max_delta, p),
            "supports_identical": report.supports_identical,
        },
    }


def format_report(report: DiscrepancyReport) -> str:
    p, s = report.precision, report.scale
    header = ("length", "recursion", "oracle", "delta")
    body = [
        (
            format_scaled(r.length, s),
            _b(r.recursion_belief, p) or "-",
            _b(r.oracle_belief, p) or "-",
            format_scaled(r.delta, p),
        )
        for r in report.rows
    ]
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(4)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in [header, *body]]
    if report.mismatch_count == 0:
        lines.append("no discrepancy")
    else:
        marks = ", ".join(format_scaled(r.length, s) for r in report.mismatches)
        lines.append(
            f"{report.mismatch_count} mismatched length(s): {marks}; "
            f"max delta {format_scaled(report.max_delta, p)}"
        )
    if not report.supports_identical:
        lines.append("supports differ")
    return "\n".join(lines)


def _witness_str(w, scale):
    return "{" + ", ".join(f"{a}:{format_scaled(d, scale)}" for a, d in w) + "}"


def finding_to_dict(f: CrossConfigurationFinding, g: ProjectNetwork) -> dict:
    s, p = g.scale, g.precision

    def point(pp):
        return {
            "duration": format_scaled(pp.duration, s),
            "belief": format_scaled(pp.belief, p),
            "witnesses": [{a: format_scaled(d, s) for a, d in w} for w in pp.witnesses],
        }

    return {
        "merge": f.merge,
        "left_sources": list(f.left_sources),
        "right_source": f.right_source,
        "left": point(f.left),
        "right": point(f.right),
        "result": {"duration": format_scaled(f.result[0], s),
                   "belief": format_scaled(f.result[1], p)},
        "conflicts": [
            {
                "activity": c.activity,
                "left_values": [format_scaled(v, s) for v in c.left_values],
                "right_values": [format_scaled(v, s) for v in c.right_values],
            }
            for c in f.conflicts
        ],
    }


def format_finding(f: CrossConfigurationFinding, g: ProjectNetwork) -> str:
    s, p = g.scale, g.precision
    left = "max(" + ", ".join(f"EF[{a}]" for a in f.left_sources) + ")" \
        if len(f.left_sources) > 1 else f"EF[{f.left_sources[0]}]"

    def pt(pp):
        w = " or ".join(_witness_str(x, s) for x in pp.witnesses) or "no consistent witness"
        return f"{format_scaled(pp.duration, s)}/{format_scaled(pp.belief, p)} via {w}"

    line = (f"potential cross-configuration max at {f.merge}: "
            f"{left} point {pt(f.left)} vs EF[{f.right_source}] point {pt(f.right)} "
            f"-> ES {format_scaled(f.result[0], s)}/{format_scaled(f.result[1], p)}")
    if f.conflicts:
        parts = [
            f"{c.activity}={'|'.join(format_scaled(v, s) for v in c.left_values)}"
            f" vs {'|'.join(format_scaled(v, s) for v in c.right_values)}"
            for c in f.conflicts
        ]
        line += "; conflicting " + ", ".join(parts)
    return line
