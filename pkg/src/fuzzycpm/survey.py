"""Random network generation and the recursion-vs-oracle survey."""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal

import numpy as np

from .diagnostics import compare_cp_sets
from .errors import ConfigurationCapExceeded, ValidationError
from .forward import fuzzy_forward_recursion
from .network import ProjectNetwork, build_network
from .oracle import DEFAULT_CONFIG_CAP, oracle_cp_set


def random_network(rng: np.random.Generator, activities: int = 5, max_points: int = 3,
                   edge_prob: float = 0.4, max_duration: int = 9,
                   chain: bool = False, precision: int = 1) -> ProjectNetwork:
    """A random activity-on-node DAG with random discrete fuzzy durations.

    Edges only run from lower to higher activity numbers.  Beliefs are drawn
    from the grid ``k / 10**precision`` and one point per activity is set to 1.
    """
    one = 10 ** precision
    items = []
    for i in range(activities):
        if chain:
            preds = [f"a{i}"] if i else []
        else:
            preds = [f"a{j + 1}" for j in range(i) if rng.random() < edge_prob]
        k = int(rng.integers(1, max_points + 1))
        values = sorted(rng.choice(max_duration + 1, size=k, replace=False).tolist())
        beliefs = rng.integers(1, one + 1, size=k).tolist()
        beliefs[int(rng.integers(0, k))] = one
        items.append({
            "id": f"a{i + 1}",
            "predecessors": preds,
            "duration": [[v, str(Decimal(b).scaleb(-precision))] for v, b in zip(values, beliefs)],
        })
    return build_network({"scale": 0, "belief_precision": precision, "activities": items})


@dataclass
class SurveySummary:
    instances: int = 0
    discrepant: int = 0
    strict_support: int = 0
    negative_deltas: int = 0
    max_deltas: list = field(default_factory=list)  # per discrepant instance, as Decimal

    @property
    def fraction(self) -> Decimal | None:
        if not self.instances:
            return None
        return Decimal(self.discrepant) / Decimal(self.instances)

    @property
    def mean_max_delta(self) -> Decimal | None:
        if not self.max_deltas:
            return None
        return sum(self.max_deltas, Decimal(0)) / len(self.max_deltas)

    @property
    def largest_delta(self) -> Decimal | None:
        return max(self.max_deltas) if self.max_deltas else None

    def add(self, g: ProjectNetwork, config_cap: int = DEFAULT_CONFIG_CAP,
            backend: str | None = None) -> None:
        rec = fuzzy_forward_recursion(g).cp_set
        orc = oracle_cp_set(g, config_cap, backend=backend)
        report = compare_cp_sets(rec, orc)
        self.instances += 1
        if report.min_delta < 0:
            self.negative_deltas += 1
        if report.mismatch_count:
            self.discrepant += 1
            self.max_deltas.append(report.delta_decimal(report.max_delta))
        if set(orc.support) < set(rec.support):
            self.strict_support += 1


def run_survey(count: int, seed: int = 0, activities: int = 5, max_points: int = 3,
               edge_prob: float = 0.4, max_duration: int = 9, chain: bool = False,
               extra=(), config_cap: int = DEFAULT_CONFIG_CAP,
               backend: str | None = None) -> SurveySummary:
    """Compare recursion and oracle on ``count`` random networks plus ``extra`` ones."""
    if count < 0:
        raise ValidationError("count must be non-negative")
    if activities < 1 or max_points < 1:
        raise ValidationError("activities and max_points must be at least 1")
    worst = max_points ** activities
    if count and worst > config_cap:
        raise ConfigurationCapExceeded(
            f"up to {worst} configurations per network, cap is {config_cap}",
            count=worst, cap=config_cap,
        )
    rng = np.random.default_rng(seed)
    summary = SurveySummary()
    for g in extra:
        summary.add(g, config_cap, backend)
    for _ in range(count):
        g = random_network(rng, activities, max_points, edge_prob, max_duration, chain)
        summary.add(g, config_cap, backend)
    return summary
