"""Discrete fuzzy quantities and extension-principle arithmetic.

Durations and beliefs are held as scaled integers: a duration ``raw`` with
scale ``s`` denotes ``raw * 10**-s`` and a belief ``raw`` with precision ``p``
denotes ``raw * 10**-p``.  Addition and maximum only ever add durations and
take min/max of existing beliefs, so every result is exact and comparisons
need no tolerance.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Iterable, Iterator

from .errors import (
    BeliefOutOfRange,
    DuplicateDuration,
    EmptySupport,
    ExcessPrecision,
    NegativeDuration,
    NonNormal,
    ScaleMismatch,
    ValidationError,
)

DEFAULT_PRECISION = 3

__all__ = [
    "DEFAULT_PRECISION",
    "DiscreteFuzzyQuantity",
    "ZeroBeliefStripped",
    "area",
    "format_scaled",
    "fuzzy_add",
    "fuzzy_max",
    "fuzzy_max_all",
    "parse_quantity",
    "singleton",
    "to_scaled",
    "validate_quantity",
]


class ZeroBeliefStripped(UserWarning):
    """A point with belief 0 was dropped while parsing (it is outside the support)."""


def _as_decimal(value) -> Decimal:
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        # repr gives the shortest round-tripping literal, so 0.1 -> Decimal("0.1")
        value = repr(value)
    try:
        d = Decimal(str(value).strip())
    except InvalidOperation:
        raise ValidationError(f"not a number: {value!r}") from None
    if not d.is_finite():
        raise ValidationError(f"not a finite number: {value!r}")
    return d


def to_scaled(value, places: int, what: str = "value") -> int:
    """Convert ``value`` to an integer count of ``10**-places`` units.

    Raises :class:`ExcessPrecision` instead of rounding.
    """
    d = _as_decimal(value)
    scaled = d.scaleb(places)
    if scaled != scaled.to_integral_value():
        raise ExcessPrecision(
            f"{what} {value!r} has more than {places} decimal place(s)"
        )
    return int(scaled)


def format_scaled(raw: int, places: int) -> str:
    """Render a scaled integer with no trailing zeros (``500, 3`` -> ``'0.5'``)."""
    d = Decimal(raw).scaleb(-places)
    if d == 0:
        return "0"
    return format(d.normalize(), "f")


@dataclass(frozen=True)
class DiscreteFuzzyQuantity:
    """A normal fuzzy quantity with finite support.

    ``points`` is a tuple of ``(duration, belief)`` scaled-integer pairs with
    strictly increasing durations.  Build instances with
    :func:`validate_quantity` or :func:`parse_quantity`; the constructor
    re-checks every invariant.
    """

    points: tuple[tuple[int, int], ...]
    scale: int = 0
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        _check_raw(self.points, self.precision, require_normal=True)

    @classmethod
    def _trusted(cls, points, scale, precision):
        # bypass validation for results of closed operations and for
        # sub-normal sampling estimates
        obj = object.__new__(cls)
        object.__setattr__(obj, "points", tuple(points))
        object.__setattr__(obj, "scale", scale)
        object.__setattr__(obj, "precision", precision)
        return obj

    @property
    def one(self) -> int:
        """Raw integer representing belief 1."""
        return 10 ** self.precision

    @property
    def is_normal(self) -> bool:
        one = self.one
        return any(b == one for _, b in self.points)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.points)

    @property
    def lower(self) -> int:
        return self.points[0][0]

    @property
    def upper(self) -> int:
        return self.points[-1][0]

    def belief_of(self, duration: int) -> int:
        """Raw belief of a raw duration (0 outside the support)."""
        for d, b in self.points:
            if d == duration:
                return b
        return 0

    def membership(self, value) -> Decimal:
        raw = to_scaled(value, self.scale, "duration")
        return Decimal(self.belief_of(raw)).scaleb(-self.precision)

    def as_dict(self) -> dict[int, int]:
        return dict(self.points)

    def decimal_points(self) -> list[tuple[Decimal, Decimal]]:
        return [
            (Decimal(d).scaleb(-self.scale), Decimal(b).scaleb(-self.precision))
            for d, b in self.points
        ]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.points)

    def format_point(self, duration: int, belief: int) -> str:
        return f"{format_scaled(duration, self.scale)}/{format_scaled(belief, self.precision)}"

    def __str__(self) -> str:
        return ", ".join(self.format_point(d, b) for d, b in self.points)


def _check_raw(points, precision: int, require_normal: bool) -> None:
    if not points:
        raise EmptySupport("fuzzy quantity has an empty support")
    one = 10 ** precision
    prev = None
    for d, b in points:
        if d < 0:
            raise NegativeDuration(f"negative duration {d}")
        if not 0 < b <= one:
            raise BeliefOutOfRange(f"belief {format_scaled(b, precision)} outside (0, 1]")
        if prev is not None and d <= prev:
            if d == prev:
                raise DuplicateDuration(f"duplicate duration {d}")
            raise ValidationError("durations must be strictly increasing")
        prev = d
    if require_normal and not any(b == one for _, b in points):
        raise NonNormal("no point has belief 1")


def validate_quantity(points: Iterable, scale: int = 0,
                      precision: int = DEFAULT_PRECISION) -> DiscreteFuzzyQuantity:
    """Build a quantity from ``(duration, belief)`` pairs in any order.

    Values may be ints, strings, Decimals or floats; they are converted
    exactly and rejected if they need more than ``scale`` (durations) or
    ``precision`` (beliefs) decimal places.
    """
    raw = []
    for item in points:
        try:
            value, belief = item
        except (TypeError, ValueError):
            raise ValidationError(f"expected a (duration, belief) pair, got {item!r}") from None
        b = _as_decimal(belief)
        if not 0 < b <= 1:
            raise BeliefOutOfRange(f"belief {belief} outside (0, 1]")
        d = _as_decimal(value)
        if d < 0:
            raise NegativeDuration(f"negative duration {value}")
        raw.append((to_scaled(d, scale, "duration"), to_scaled(b, precision, "belief")))
    if not raw:
        raise EmptySupport("fuzzy quantity has an empty support")
    raw.sort()
    for (d0, _), (d1, _) in zip(raw, raw[1:]):
        if d0 == d1:
            raise DuplicateDuration(f"duplicate duration {format_scaled(d0, scale)}")
    return DiscreteFuzzyQuantity(tuple(raw), scale, precision)


def strip_zero_beliefs(pairs, context: str = "") -> list:
    """Drop pairs whose belief is exactly zero, warning once per dropped point."""
    kept = []
    for value, belief in pairs:
        if _as_decimal(belief) == 0:
            where = f" in {context}" if context else ""
            warnings.warn(f"dropped zero-belief point {value}/0{where}",
                          ZeroBeliefStripped, stacklevel=3)
            continue
        kept.append((value, belief))
    return kept


def parse_quantity(text: str, scale: int = 0,
                   precision: int = DEFAULT_PRECISION) -> DiscreteFuzzyQuantity:
    """Parse the ``v1/b1, v2/b2, ...`` literal notation.

    >>> str(parse_quantity("5/1, 3/0.5"))
    '3/0.5, 5/1'
    """
    pairs = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        value, sep, belief = chunk.partition("/")
        if not sep:
            raise ValidationError(f"expected value/belief, got {chunk!r}")
        pairs.append((value.strip(), belief.strip()))
    return validate_quantity(strip_zero_beliefs(pairs, repr(text)), scale, precision)


def singleton(value: int = 0, scale: int = 0,
              precision: int = DEFAULT_PRECISION) -> DiscreteFuzzyQuantity:
    """The crisp quantity ``value/1`` (``value`` is already scaled)."""
    return DiscreteFuzzyQuantity(((value, 10 ** precision),), scale, precision)


def _same_units(a: DiscreteFuzzyQuantity, b: DiscreteFuzzyQuantity) -> None:
    if a.scale != b.scale or a.precision != b.precision:
        raise ScaleMismatch(
            f"cannot combine scale/precision {a.scale}/{a.precision} "
            f"with {b.scale}/{b.precision}"
        )


def _combine(a, b, op) -> DiscreteFuzzyQuantity:
    _same_units(a, b)
    out: dict[int, int] = {}
    for x, bx in a.points:
        for y, by in b.points:
            z = op(x, y)
            m = bx if bx < by else by
            if m > out.get(z, 0):
                out[z] = m
    return DiscreteFuzzyQuantity._trusted(sorted(out.items()), a.scale, a.precision)


def _add(x, y):
    return x + y


def fuzzy_add(a: DiscreteFuzzyQuantity, b: DiscreteFuzzyQuantity) -> DiscreteFuzzyQuantity:
    """Extension-principle sum: mu(z) = max over x+y=z of min(mu_a(x), mu_b(y))."""
    return _combine(a, b, _add)


def fuzzy_max(a: DiscreteFuzzyQuantity, b: DiscreteFuzzyQuantity) -> DiscreteFuzzyQuantity:
    """Extension-principle maximum: mu(z) = max over max(x,y)=z of min(mu_a(x), mu_b(y))."""
    return _combine(a, b, max)


def fuzzy_max_all(quantities: Iterable[DiscreteFuzzyQuantity]) -> DiscreteFuzzyQuantity:
    """Left fold of :func:`fuzzy_max` in iteration order."""
    it = iter(quantities)
    try:
        acc = next(it)
    except StopIteration:
        raise ValueError("fuzzy_max_all() of an empty sequence") from None
    for q in it:
        acc = fuzzy_max(acc, q)
    return acc


def area(m: DiscreteFuzzyQuantity) -> Decimal:
    """Sum of duration times belief over the support, exact."""
    total = sum(d * b for d, b in m.points)
    return Decimal(total).scaleb(-(m.scale + m.precision))
