"""Fuzzy forward recursion over a project network.

Earliest starts are the fuzzy maximum of the predecessors' earliest
finishes and earliest finishes add the activity's fuzzy duration.  Each
fuzzy operation treats its operands as independent, so an ancestor shared
by two branches may be given different durations on each branch; see
:mod:`fuzzycpm.diagnostics` for the consequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ProvenanceCapExceeded
from .fuzzy import DiscreteFuzzyQuantity, fuzzy_add, fuzzy_max, singleton
from .network import ProjectNetwork

DEFAULT_PROVENANCE_CAP = 100_000

Witness = tuple[tuple[str, int], ...]

__all__ = [
    "DEFAULT_PROVENANCE_CAP",
    "FuzzySchedule",
    "ProvenancePoint",
    "ProvenanceSchedule",
    "fuzzy_forward_recursion",
    "fuzzy_forward_with_provenance",
    "realizations",
]


@dataclass(frozen=True)
class FuzzySchedule:
    es: dict[str, DiscreteFuzzyQuantity]
    ef: dict[str, DiscreteFuzzyQuantity]
    cp_set: DiscreteFuzzyQuantity


def fuzzy_forward_recursion(g: ProjectNetwork, pred_order=None) -> FuzzySchedule:
    """Fuzzy earliest start/finish for every activity.

    ``pred_order`` optionally maps an activity id to the sequence in which
    its predecessors are folded; by default declaration order is used.
    """
    es: dict[str, DiscreteFuzzyQuantity] = {}
    ef: dict[str, DiscreteFuzzyQuantity] = {}
    for a in g.order:
        preds = g.predecessors[a]
        if pred_order is not None and a in pred_order:
            preds = tuple(pred_order[a])
        if not preds:
            start = singleton(0, g.scale, g.precision)
        else:
            start = ef[preds[0]]
            for p in preds[1:]:
                start = fuzzy_max(start, ef[p])
        es[a] = start
        ef[a] = fuzzy_add(start, g.duration(a))
    return FuzzySchedule(es, ef, ef[g.finish])


@dataclass(frozen=True)
class ProvenancePoint:
    """A support point of an earliest finish with every configuration realizing it.

    ``witnesses`` holds each assignment of the activity and its ancestors
    whose crisp earliest finish equals ``duration`` and whose smallest belief
    is at least ``belief``.  An empty tuple means the point cannot be reached
    by any consistent assignment at that belief.
    """

    duration: int
    belief: int
    witnesses: tuple[Witness, ...]

    @property
    def realizable(self) -> bool:
        return bool(self.witnesses)


@dataclass(frozen=True)
class ProvenanceSchedule(FuzzySchedule):
    provenance: dict[str, tuple[ProvenancePoint, ...]]

    def point(self, activity_id: str, duration: int) -> ProvenancePoint:
        for p in self.provenance[activity_id]:
            if p.duration == duration:
                return p
        raise KeyError(f"{duration} is not in the support of ef({activity_id})")


def realizations(g: ProjectNetwork, heads) -> dict[int, list[tuple[Witness, int]]]:
    """Crisp outcomes of ``max(EF_h for h in heads)`` over consistent assignments.

    Variables are the heads and all their ancestors, in declaration order.
    Returns ``{value: [(witness, belief), ...]}`` with witnesses in
    lexicographic order.
    """
    involved = set()
    for h in heads:
        involved.add(h)
        involved |= g.ancestors(h)
    variables = [a for a in g.ids if a in involved]
    order = [a for a in g.order if a in involved]
    preds = g.predecessors
    supports = [g.duration(a).points for a in variables]
    out: dict[int, list[tuple[Witness, int]]] = {}
    for combo in itertools.product(*supports):
        t = {a: d for a, (d, _) in zip(variables, combo)}
        ef: dict[str, int] = {}
        for a in order:
            p = preds[a]
            ef[a] = (max(ef[j] for j in p) if p else 0) + t[a]
        value = max(ef[h] for h in heads)
        belief = min(b for _, b in combo)
        witness = tuple((a, d) for a, (d, _) in zip(variables, combo))
        out.setdefault(value, []).append((witness, belief))
    return out


def fuzzy_forward_with_provenance(g: ProjectNetwork,
                                  cap: int = DEFAULT_PROVENANCE_CAP) -> ProvenanceSchedule:
    """:func:`fuzzy_forward_recursion` plus witness sets for every ef point."""
    total = g.configuration_count()
    if total > cap:
        raise ProvenanceCapExceeded(
            f"network has {total} configurations, provenance cap is {cap}",
            count=total, cap=cap,
        )
    sched = fuzzy_forward_recursion(g)
    provenance = {}
    for a in g.order:
        table = realizations(g, (a,))
        points = []
        for d, b in sched.ef[a].points:
            wit = tuple(w for w, wb in table.get(d, ()) if wb >= b)
            points.append(ProvenancePoint(d, b, wit))
        provenance[a] = tuple(points)
    return ProvenanceSchedule(sched.es, sched.ef, sched.cp_set, provenance)
