"""Activity-on-node project networks, the crisp forward pass and path enumeration."""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from math import prod
from pathlib import Path
from typing import Iterable, Mapping

from .errors import (
    CycleDetected,
    DuplicateActivity,
    EmptyNetwork,
    InvalidDummy,
    MissingDuration,
    PathCapExceeded,
    ScaleMismatch,
    UnknownPredecessor,
    ValidationError,
)
from .fuzzy import (
    DEFAULT_PRECISION,
    DiscreteFuzzyQuantity,
    parse_quantity,
    singleton,
    strip_zero_beliefs,
    validate_quantity,
)

DEFAULT_PATH_CAP = 10_000

__all__ = [
    "Activity",
    "CrispSchedule",
    "DEFAULT_PATH_CAP",
    "ProjectNetwork",
    "build_network",
    "crisp_forward_pass",
    "enumerate_paths",
    "extreme_lengths",
    "load_network",
    "network_to_dict",
    "path_length",
    "topological_order",
]


@dataclass(frozen=True)
class Activity:
    id: str
    duration: DiscreteFuzzyQuantity
    label: str = ""
    is_dummy: bool = False

    def __post_init__(self):
        if self.is_dummy and self.duration.points != ((0, self.duration.one),):
            raise InvalidDummy(f"dummy activity {self.id!r} must have duration 0/1")


@dataclass(frozen=True)
class ProjectNetwork:
    """A validated project graph.

    Use :func:`build_network` rather than the constructor.  ``order`` is the
    deterministic topological order; ``start`` and ``finish`` are the unique
    source and sink activities.
    """

    activities: tuple[Activity, ...]
    predecessors: Mapping[str, tuple[str, ...]]
    scale: int
    precision: int
    order: tuple[str, ...]
    start: str
    finish: str
    inserted: tuple[str, ...] = ()
    successors: Mapping[str, tuple[str, ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.activities)

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(a.id for a in self.activities)

    def activity(self, activity_id: str) -> Activity:
        return self._by_id[activity_id]

    @property
    def _by_id(self) -> dict[str, Activity]:
        cache = self.__dict__.get("_by_id_cache")
        if cache is None:
            cache = {a.id: a for a in self.activities}
            object.__setattr__(self, "_by_id_cache", cache)
        return cache

    def duration(self, activity_id: str) -> DiscreteFuzzyQuantity:
        return self._by_id[activity_id].duration

    def configuration_count(self) -> int:
        return prod(len(a.duration) for a in self.activities)

    def ancestors(self, activity_id: str) -> frozenset[str]:
        """Strict ancestors of an activity."""
        seen = set()
        stack = list(self.predecessors[activity_id])
        while stack:
            a = stack.pop()
            if a not in seen:
                seen.add(a)
                stack.extend(self.predecessors[a])
        return frozenset(seen)


@dataclass(frozen=True)
class CrispSchedule:
    es: dict[str, int]
    ef: dict[str, int]
    cp_length: int


def _coerce_duration(raw, scale, precision, context):
    try:
        return _coerce_duration_inner(raw, scale, precision, context)
    except ValidationError as e:
        if str(e).startswith(context):
            raise
        raise type(e)(f"{context}: {e}") from None


def _coerce_duration_inner(raw, scale, precision, context):
    if isinstance(raw, DiscreteFuzzyQuantity):
        if raw.scale != scale or raw.precision != precision:
            raise ScaleMismatch(
                f"{context}: duration uses scale/precision {raw.scale}/{raw.precision}, "
                f"network uses {scale}/{precision}"
            )
        return raw
    if isinstance(raw, str):
        return parse_quantity(raw, scale, precision)
    pairs = []
    for item in raw:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise ValidationError(f"{context}: duration entries must be [value, belief] pairs")
        pairs.append(tuple(item))
    return validate_quantity(strip_zero_beliefs(pairs, context), scale, precision)


def _find_cycle(ids, preds):
    white, grey, black = 0, 1, 2
    color = dict.fromkeys(ids, white)
    for root in ids:
        if color[root] != white:
            continue
        # iterative DFS along predecessor edges
        stack = [(root, iter(preds[root]))]
        path = [root]
        color[root] = grey
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = black
                stack.pop()
                path.pop()
            elif color[nxt] == grey:
                cycle = path[path.index(nxt):] + [nxt]
                # path follows predecessor links; report in precedence direction
                return list(reversed(cycle))
            elif color[nxt] == white:
                color[nxt] = grey
                stack.append((nxt, iter(preds[nxt])))
                path.append(nxt)
    return None


def _fresh_id(base, taken):
    candidate, n = base, 1
    while candidate in taken:
        n += 1
        candidate = f"{base}{n}"
    return candidate


def _topo(ids, preds):
    position = {a: i for i, a in enumerate(ids)}
    indeg = {a: len(preds[a]) for a in ids}
    succ = {a: [] for a in ids}
    for a in ids:
        for p in preds[a]:
            succ[p].append(a)
    heap = [position[a] for a in ids if indeg[a] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        a = ids[heapq.heappop(heap)]
        out.append(a)
        for s in succ[a]:
            indeg[s] -= 1
            if indeg[s] == 0:
                heapq.heappush(heap, position[s])
    return tuple(out), {a: tuple(v) for a, v in succ.items()}


def build_network(raw, *, scale: int | None = None,
                  precision: int | None = None) -> ProjectNetwork:
    """Validate a network definition and return a :class:`ProjectNetwork`.

    ``raw`` is either a mapping in the network file layout (``scale``,
    ``belief_precision``, ``activities``) or an iterable of activity
    mappings.  Activity mappings take ``id``, optional ``label``,
    ``predecessors`` and ``duration`` (a list of ``[value, belief]`` pairs,
    a literal string such as ``"3/0.5, 5/1"`` or a quantity) plus an
    optional ``dummy`` flag.

    When several activities have no predecessor, or several have no
    successor, a dummy start or finish with duration 0/1 is added.
    """
    if isinstance(raw, Mapping):
        if scale is None:
            scale = raw.get("scale", 0)
        if precision is None:
            precision = raw.get("belief_precision", DEFAULT_PRECISION)
        items = raw.get("activities")
        if items is None:
            raise ValidationError("network definition has no 'activities' field")
    else:
        items = raw
    items = list(items)
    if not items:
        raise EmptyNetwork("network has no activities")
    if scale is None:
        scale = 0
    if precision is None:
        precision = DEFAULT_PRECISION
    if not isinstance(scale, int) or scale < 0:
        raise ValidationError(f"scale must be a non-negative integer, got {scale!r}")
    if not isinstance(precision, int) or precision < 0:
        raise ValidationError(f"belief_precision must be a non-negative integer, got {precision!r}")

    activities: list[Activity] = []
    preds: dict[str, tuple[str, ...]] = {}
    for n, item in enumerate(items):
        if not isinstance(item, Mapping):
            raise ValidationError(f"activity #{n + 1} is not a mapping")
        if "id" not in item:
            raise ValidationError(f"activity #{n + 1} has no 'id'")
        aid = str(item["id"])
        context = f"activity {aid!r}"
        if "duration" not in item:
            raise MissingDuration(f"{context} has no duration")
        act = Activity(
            id=aid,
            duration=_coerce_duration(item["duration"], scale, precision, context),
            label=str(item.get("label", "") or ""),
            is_dummy=bool(item.get("dummy", False)),
        )
        pred_ids = tuple(dict.fromkeys(str(p) for p in item.get("predecessors", ()) or ()))
        if act.id in preds:
            raise DuplicateActivity(f"duplicate activity id {act.id!r}")
        activities.append(act)
        preds[act.id] = pred_ids

    ids = [a.id for a in activities]
    for a in ids:
        for p in preds[a]:
            if p not in preds:
                raise UnknownPredecessor(f"activity {a!r} lists unknown predecessor {p!r}")
    cycle = _find_cycle(ids, preds)
    if cycle:
        raise CycleDetected(cycle)

    inserted = []
    starts = [a for a in ids if not preds[a]]
    if len(starts) > 1:
        sid = _fresh_id("start", preds)
        activities.insert(0, Activity(sid, singleton(0, scale, precision), "dummy start", True))
        preds[sid] = ()
        for a in starts:
            preds[a] = (sid,)
        ids.insert(0, sid)
        inserted.append(sid)
    has_succ = {p for a in ids for p in preds[a]}
    finishes = [a for a in ids if a not in has_succ]
    if len(finishes) > 1:
        fid = _fresh_id("finish", preds)
        activities.append(Activity(fid, singleton(0, scale, precision), "dummy finish", True))
        preds[fid] = tuple(finishes)
        ids.append(fid)
        inserted.append(fid)

    order, succ = _topo(ids, preds)
    return ProjectNetwork(
        activities=tuple(activities),
        predecessors=preds,
        scale=scale,
        precision=precision,
        order=order,
        start=order[0],
        finish=order[-1],
        inserted=tuple(inserted),
        successors=succ,
    )


def load_network(path, **kwargs) -> ProjectNetwork:
    """Read a JSON network file."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    return build_network(raw, **kwargs)


def network_to_dict(g: ProjectNetwork, include_inserted: bool = False) -> dict:
    """Inverse of :func:`build_network` for the file layout (values as strings)."""
    from .fuzzy import format_scaled

    out = []
    for a in g.activities:
        if a.id in g.inserted and not include_inserted:
            continue
        entry = {"id": a.id}
        if a.label:
            entry["label"] = a.label
        entry["predecessors"] = [
            p for p in g.predecessors[a.id] if include_inserted or p not in g.inserted
        ]
        entry["duration"] = [
            [format_scaled(d, g.scale), format_scaled(b, g.precision)] for d, b in a.duration
        ]
        if a.is_dummy:
            entry["dummy"] = True
        out.append(entry)
    return {"scale": g.scale, "belief_precision": g.precision, "activities": out}


def topological_order(g: ProjectNetwork) -> list[str]:
    """Activities in precedence order, ties broken by declaration order."""
    return list(g.order)


def crisp_forward_pass(g: ProjectNetwork, t: Mapping[str, int]) -> CrispSchedule:
    """Earliest start/finish for crisp durations ``t`` (scaled integers)."""
    es: dict[str, int] = {}
    ef: dict[str, int] = {}
    for a in g.order:
        if a not in t:
            raise MissingDuration(f"no duration given for activity {a!r}")
        p = g.predecessors[a]
        es[a] = max(ef[j] for j in p) if p else 0
        ef[a] = es[a] + t[a]
    return CrispSchedule(es, ef, ef[g.finish])


def enumerate_paths(g: ProjectNetwork, cap: int = DEFAULT_PATH_CAP) -> list[tuple[str, ...]]:
    """All start-to-finish paths, depth first along successors in declaration order."""
    paths = []
    stack = [(g.start, (g.start,))]
    while stack:
        node, path = stack.pop()
        if node == g.finish:
            paths.append(path)
            if len(paths) > cap:
                raise PathCapExceeded(f"more than {cap} paths", count=None, cap=cap)
            continue
        for s in reversed(g.successors[node]):
            stack.append((s, path + (s,)))
    return paths


def path_length(path: Iterable[str], t: Mapping[str, int]) -> int:
    return sum(t[a] for a in path)


def extreme_lengths(g: ProjectNetwork) -> tuple[int, int]:
    """Critical path length with every activity at its smallest, then largest, duration."""
    lo = crisp_forward_pass(g, {a.id: a.duration.lower for a in g.activities}).cp_length
    hi = crisp_forward_pass(g, {a.id: a.duration.upper for a in g.activities}).cp_length
    return lo, hi


def bundled_network_path(name: str) -> Path | None:
    """Path of a network shipped with the package, or None."""
    p = Path(__file__).parent / "networks" / f"{name}.json"
    return p if p.is_file() else None

