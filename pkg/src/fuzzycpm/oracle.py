"""Ground-truth fuzzy critical path sets by configuration enumeration, and a sampler.

A configuration fixes one support point for every activity.  Its belief is
the smallest chosen belief; the fuzzy set of critical path lengths keeps,
for each length, the largest belief of any configuration reaching it.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterator

import numpy as np

from . import kernel
from .errors import ConfigurationCapExceeded, ValidationError
from .fuzzy import DiscreteFuzzyQuantity, area
from .network import ProjectNetwork, crisp_forward_pass, enumerate_paths, path_length

DEFAULT_CONFIG_CAP = 10_000_000
DEFAULT_TOLERANCE = Decimal("0.001")
DEFAULT_BATCH = 64
DEFAULT_MAX_BATCHES = 10_000

__all__ = [
    "Configuration",
    "SampleResult",
    "TraceEntry",
    "configuration_belief",
    "configuration_table",
    "enumerate_configurations",
    "oracle_cp_set",
    "sample_choices",
    "sample_cp_set",
]


@dataclass(frozen=True)
class Configuration:
    """One crisp duration per activity: ``choices`` maps id -> (duration, belief)."""

    choices: dict[str, tuple[int, int]]

    @property
    def belief(self) -> int:
        return configuration_belief(self)

    @property
    def durations(self) -> dict[str, int]:
        return {a: d for a, (d, _) in self.choices.items()}


def configuration_belief(c: Configuration) -> int:
    return min(b for _, b in c.choices.values())


def _check_cap(g: ProjectNetwork, cap: int) -> int:
    count = g.configuration_count()
    if count > cap:
        raise ConfigurationCapExceeded(
            f"network has {count} configurations, cap is {cap}", count=count, cap=cap
        )
    return count


def enumerate_configurations(g: ProjectNetwork,
                             cap: int = DEFAULT_CONFIG_CAP) -> Iterator[Configuration]:
    """All configurations, lexicographic in (declaration order, support order)."""
    _check_cap(g, cap)
    ids = g.ids
    for combo in itertools.product(*(g.duration(a).points for a in ids)):
        yield Configuration(dict(zip(ids, combo)))


def _from_best(best: dict[int, int], g: ProjectNetwork) -> DiscreteFuzzyQuantity:
    return DiscreteFuzzyQuantity._trusted(sorted(best.items()), g.scale, g.precision)


def _merge_max(into: dict[int, int], other: dict[int, int]) -> None:
    for k, v in other.items():
        if v > into.get(k, 0):
            into[k] = v


def _range_worker(args):
    packed, lo, hi, backend = args
    return kernel.best_by_length(packed, lo, hi, backend)


def oracle_cp_set(g: ProjectNetwork, cap: int = DEFAULT_CONFIG_CAP, *,
                  workers: int = 1, backend: str | None = None) -> DiscreteFuzzyQuantity:
    """Exact fuzzy set of critical path lengths over every configuration.

    ``workers > 1`` splits the configuration index range across processes;
    the per-length max merge makes the result independent of the split.
    """
    total = _check_cap(g, cap)
    packed = kernel.pack(g)
    if workers <= 1 or total < 2 * workers:
        best = kernel.best_by_length(packed, backend=backend)
    else:
        bounds = np.linspace(0, total, workers + 1).astype(np.int64).tolist()
        jobs = [(packed, lo, hi, backend) for lo, hi in zip(bounds, bounds[1:]) if lo < hi]
        best = {}
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_range_worker, jobs):
                _merge_max(best, part)
        best = dict(sorted(best.items()))
    return _from_best(best, g)


@dataclass(frozen=True)
class TraceEntry:
    samples: int
    area: Decimal
    relative_change: Decimal | None  # None: previous area was 0 and area grew
    estimate: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SampleResult:
    estimate: DiscreteFuzzyQuantity   # may be sub-normal, see ``normal``
    trace: tuple[TraceEntry, ...]
    converged: bool

    @property
    def normal(self) -> bool:
        return self.estimate.is_normal

    @property
    def samples(self) -> int:
        return self.trace[-1].samples if self.trace else 0


def sample_choices(sizes, seed: int, start: int, count: int) -> np.ndarray:
    """Support indices for samples ``start .. start+count-1``.

    Row ``i`` depends only on ``(seed, start + i)``: each sample reads its
    own Philox counter block, so batching and worker layout cannot change
    which configuration a given sample index draws.
    """
    sizes_arr = np.asarray(sizes, dtype=np.uint64)
    n = len(sizes_arr)
    rows = np.empty((count, n), dtype=np.int64)
    for r in range(count):
        counter = np.array([0, 0, start + r, 0], dtype=np.uint64)
        words = np.random.Philox(counter=counter, key=seed).random_raw(n)
        rows[r] = words % sizes_arr
    return rows


def sample_cp_set(g: ProjectNetwork, seed: int = 0, tolerance=DEFAULT_TOLERANCE,
                  batch_size: int = DEFAULT_BATCH, max_batches: int = DEFAULT_MAX_BATCHES,
                  *, backend: str | None = None) -> SampleResult:
    """Approximate the fuzzy critical path set from random configurations.

    Each activity's duration is drawn uniformly from its support points.
    After every batch the AREA (sum of length times belief) is recorded;
    sampling stops once the relative AREA change between consecutive
    batches drops below ``tolerance`` (never before the second batch) or
    after ``max_batches`` batches.
    """
    tol = Decimal(str(tolerance))
    if tol <= 0:
        raise ValidationError("tolerance must be positive")
    if batch_size < 1:
        raise ValidationError("batch_size must be at least 1")
    if max_batches < 1:
        raise ValidationError("max_batches must be at least 1")
    if not 0 <= seed < 2 ** 128:
        raise ValidationError("seed must be a non-negative integer below 2**128")

    packed = kernel.pack(g)
    best: dict[int, int] = {}
    trace: list[TraceEntry] = []
    prev_area = None
    converged = False
    drawn = 0
    for _ in range(max_batches):
        rows = sample_choices(packed.sizes, seed, drawn, batch_size)
        drawn += batch_size
        _merge_max(best, kernel.score(packed, rows, backend))
        snapshot = tuple(sorted(best.items()))
        cur = area(DiscreteFuzzyQuantity._trusted(snapshot, g.scale, g.precision))
        if prev_area is None:
            change = None
        elif cur == prev_area:
            change = Decimal(0)
        elif prev_area == 0:
            change = None
        else:
            change = abs(cur - prev_area) / prev_area
        trace.append(TraceEntry(drawn, cur, change, snapshot))
        prev_area = cur
        if len(trace) >= 2 and change is not None and change < tol:
            converged = True
            break
    estimate = DiscreteFuzzyQuantity._trusted(trace[-1].estimate, g.scale, g.precision)
    return SampleResult(estimate, tuple(trace), converged)


@dataclass(frozen=True)
class TableRow:
    configuration: Configuration
    path_lengths: tuple[int, ...]
    cp_length: int
    belief: int


@dataclass(frozen=True)
class ConfigurationTable:
    paths: tuple[tuple[str, ...], ...]
    rows: tuple[TableRow, ...]
    cp_set: DiscreteFuzzyQuantity


def configuration_table(g: ProjectNetwork, cap: int = DEFAULT_CONFIG_CAP,
                        path_cap: int | None = None) -> ConfigurationTable:
    """Per-configuration path lengths, critical path length and belief.

    The aggregated set is rebuilt from the rows, independently of the kernels.
    """
    paths = tuple(enumerate_paths(g) if path_cap is None else enumerate_paths(g, path_cap))
    rows = []
    best: dict[int, int] = {}
    for c in enumerate_configurations(g, cap):
        t = c.durations
        lengths = tuple(path_length(p, t) for p in paths)
        cp = crisp_forward_pass(g, t).cp_length
        b = c.belief
        rows.append(TableRow(c, lengths, cp, b))
        if b > best.get(cp, 0):
            best[cp] = b
    return ConfigurationTable(paths, tuple(rows), _from_best(best, g))
