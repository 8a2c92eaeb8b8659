"""Instance and solution types for MKP and its divisible-size relaxation.

Two instance kinds live here:

* :class:`MkpInstance` -- the 0-1 multiple knapsack problem: ``n`` items with
  integer profits and weights, ``m`` knapsacks with integer capacities.
* :class:`BsmkpInstance` -- the bounded multiple knapsack with divisible
  sizes: item *classes* ``(size, profit, bound)`` whose distinct sizes form a
  divisibility chain. Profits are exact :class:`~fractions.Fraction` values
  because splitting an item yields profits ``p * s / w``.

Both are immutable once validated. The plain-text file formats are::

    # MKP                      # BSMKP
    n m                        L m
    p_1 w_1                    s_1 v_num_1 v_den_1 b_1
    ...                        ...
    c_1                        c_1
    ...                        ...

Lines starting with ``#`` are comments; ``# name: <id>`` carries the
instance name through a write/read round trip.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DivisibilityViolation,
    EmptyInstance,
    InvalidInstance,
    NonPositiveValue,
)


class Item(NamedTuple):
    profit: int
    weight: int


class BsmkpClass(NamedTuple):
    size: int
    profit: Fraction
    bound: int


@dataclass(frozen=True)
class MkpInstance:
    items: tuple[Item, ...]
    capacities: tuple[int, ...]
    name: str | None = None

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def m(self) -> int:
        return len(self.capacities)

    @property
    def profits(self) -> tuple[int, ...]:
        return tuple(it.profit for it in self.items)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(it.weight for it in self.items)

    @property
    def degenerate(self) -> bool:
        """True when no item fits any knapsack."""
        cmax = max(self.capacities)
        return all(it.weight > cmax for it in self.items)

    def with_capacities(self, capacities: Sequence[int]) -> "MkpInstance":
        return validate_mkp(self.items, capacities, name=self.name)


@dataclass(frozen=True)
class MkpSolution:
    """Integral assignment: ``assignment[j]`` is a knapsack index or ``None``."""

    assignment: tuple[int | None, ...]
    value: int

    def check(self, instance: MkpInstance) -> None:
        loads = [0] * instance.m
        value = 0
        for j, i in enumerate(self.assignment):
            if i is None:
                continue
            loads[i] += instance.items[j].weight
            value += instance.items[j].profit
        for i, load in enumerate(loads):
            if load > instance.capacities[i]:
                raise AssertionError(f"knapsack {i} overloaded: {load} > {instance.capacities[i]}")
        if value != self.value:
            raise AssertionError(f"claimed value {self.value} != assignment value {value}")

    @property
    def assigned_items(self) -> tuple[int, ...]:
        return tuple(j for j, i in enumerate(self.assignment) if i is not None)


@dataclass(frozen=True)
class BsmkpInstance:
    classes: tuple[BsmkpClass, ...]
    capacities: tuple[int, ...]
    name: str | None = None

    @property
    def sizes(self) -> tuple[int, ...]:
        """Distinct class sizes, ascending."""
        return tuple(sorted({c.size for c in self.classes}))

    @property
    def m(self) -> int:
        return len(self.capacities)


@dataclass(frozen=True)
class BsmkpSolution:
    """``counts[t][i]`` items of class ``t`` placed in knapsack ``i``."""

    counts: tuple[tuple[int, ...], ...]
    value: Fraction

    @property
    def totals(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.counts)

    def check(self, instance: BsmkpInstance) -> None:
        m = instance.m
        loads = [0] * m
        value = Fraction(0)
        for cls, row in zip(instance.classes, self.counts):
            if len(row) != m or any(k < 0 for k in row):
                raise AssertionError("malformed count row")
            if sum(row) > cls.bound:
                raise AssertionError(f"class bound exceeded: {sum(row)} > {cls.bound}")
            for i, k in enumerate(row):
                loads[i] += k * cls.size
            value += sum(row) * cls.profit
        for i, load in enumerate(loads):
            if load > instance.capacities[i]:
                raise AssertionError(f"knapsack {i} overloaded: {load} > {instance.capacities[i]}")
        if value != self.value:
            raise AssertionError(f"claimed value {self.value} != counted value {value}")


@dataclass
class BoundReport:
    """Bounds, timings and gap metrics for one instance.

    Percent gaps are ``None`` when the optimum is unknown (rendered ``-``).
    Timings are wall-clock seconds.
    """

    z_seq: Fraction | None = None
    z_surr: int | None = None
    z_lp: Fraction | None = None
    opt: int | None = None
    exact_opt: bool = False
    t_seq: float | None = None
    t_surr: float | None = None
    t_lp: float | None = None
    gap_se: Fraction | None = None
    gap_su: Fraction | None = None
    gap_lp: Fraction | None = None
    g_se_lp: Fraction | None = None
    g_su_lp: Fraction | None = None
    errors: dict[str, str] = field(default_factory=dict)

    def fill_gaps(self) -> None:
        self.gap_se = self.gap_su = self.gap_lp = None
        if self.opt is not None and self.exact_opt and self.opt > 0:
            self.gap_se = percent_gap(self.z_seq, self.opt)
            self.gap_su = percent_gap(self.z_surr, self.opt)
            self.gap_lp = percent_gap(self.z_lp, self.opt)
        self.g_se_lp = percent_gap(self.z_lp, self.z_seq)
        self.g_su_lp = percent_gap(self.z_lp, self.z_surr)


def percent_gap(upper, base) -> Fraction | None:
    """``(upper - base) / base * 100`` as an exact fraction."""
    if upper is None or base is None or base == 0:
        return None
    return (Fraction(upper) - Fraction(base)) / Fraction(base) * 100


def render_decimal(x, places: int = 2) -> str:
    """Fixed-point rendering of an exact rational, rounding half away from zero."""
    x = Fraction(x)
    scale = 10 ** places
    q, r = divmod(abs(x.numerator) * scale, x.denominator)
    if 2 * r >= x.denominator:
        q += 1
    sign = "-" if x < 0 and q else ""
    if places == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


# -- validation -------------------------------------------------------------


def _positive_int(value, field_name: str, index: int, violations: list) -> int:
    if isinstance(value, bool):
        violations.append(("non_integer", field_name, index))
        return 0
    if not isinstance(value, int):
        try:
            as_int = int(value)
        except (TypeError, ValueError):
            violations.append(("non_integer", field_name, index))
            return 0
        if as_int != value:
            violations.append(("non_integer", field_name, index))
            return 0
        value = as_int
    if value < 1:
        violations.append(("non_positive", field_name, index))
    return value


def validate_mkp(items: Iterable, capacities: Iterable, name: str | None = None) -> MkpInstance:
    """Build an :class:`MkpInstance` from ``(profit, weight)`` pairs and capacities.

    Raises :class:`NonPositiveValue` (carrying all violations) when any value
    is not a positive integer, and :class:`EmptyInstance` for no items or no
    knapsacks. Items too heavy for every knapsack are kept.
    """
    items = list(items)
    capacities = list(capacities)
    if not items or not capacities:
        raise EmptyInstance("an MKP instance needs at least one item and one knapsack")
    violations: list = []
    clean_items = []
    for j, pair in enumerate(items):
        p, w = pair
        clean_items.append(
            Item(_positive_int(p, "profit", j, violations), _positive_int(w, "weight", j, violations))
        )
    caps = [_positive_int(c, "capacity", i, violations) for i, c in enumerate(capacities)]
    if violations:
        kind, fld, idx = violations[0]
        if kind == "non_positive":
            raise NonPositiveValue(fld, idx, violations)
        raise InvalidInstance(f"{fld}[{idx}] is not an integer", violations)
    return MkpInstance(tuple(clean_items), tuple(caps), name)


def check_chain(sizes: Iterable[int]) -> tuple[int, ...]:
    """Return the distinct sizes ascending, raising unless each divides the next."""
    levels = sorted(set(sizes))
    for a, b in zip(levels, levels[1:]):
        if b % a:
            raise DivisibilityViolation(a, b)
    return tuple(levels)


def validate_bsmkp(classes: Iterable, capacities: Iterable, name: str | None = None) -> BsmkpInstance:
    """Validate and canonicalize BSMKP data.

    Classes with equal ``(size, profit)`` are merged by summing bounds; the
    result is ordered by size ascending, then profit descending. Validating
    an already canonical instance returns an equal one.
    """
    classes = list(classes)
    capacities = list(capacities)
    if not classes or not capacities:
        raise EmptyInstance("a BSMKP instance needs at least one class and one knapsack")
    violations: list = []
    merged: dict[tuple[int, Fraction], int] = {}
    for t, entry in enumerate(classes):
        s, v, b = entry
        s = _positive_int(s, "size", t, violations)
        b = _positive_int(b, "bound", t, violations)
        v = Fraction(v)
        if v < 0:
            violations.append(("non_positive", "profit", t))
        key = (s, v)
        merged[key] = merged.get(key, 0) + b
    caps = [_positive_int(c, "capacity", i, violations) for i, c in enumerate(capacities)]
    if violations:
        kind, fld, idx = violations[0]
        if kind == "non_positive":
            raise NonPositiveValue(fld, idx, violations)
        raise InvalidInstance(f"{fld}[{idx}] is not an integer", violations)
    check_chain(s for s, _ in merged)
    ordered = sorted(merged.items(), key=lambda kv: (kv[0][0], -kv[0][1]))
    return BsmkpInstance(
        tuple(BsmkpClass(s, v, b) for (s, v), b in ordered), tuple(caps), name
    )


# -- text formats -------------------------------------------------------------


def _data_lines(text: str) -> tuple[list[list[str]], str | None]:
    rows = []
    name = None
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("name:"):
                name = body[len("name:"):].strip() or None
            continue
        rows.append(stripped.split())
    return rows, name


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    return source.read()


def parse_mkp(text: str) -> MkpInstance:
    rows, name = _data_lines(text)
    if not rows:
        raise EmptyInstance("empty instance file")
    n, m = (int(x) for x in rows[0])
    if len(rows) != 1 + n + m:
        raise InvalidInstance(f"expected {1 + n + m} data lines, found {len(rows)}")
    items = [(int(p), int(w)) for p, w in rows[1:1 + n]]
    caps = [int(r[0]) for r in rows[1 + n:]]
    return validate_mkp(items, caps, name=name)


def format_mkp(instance: MkpInstance) -> str:
    out = io.StringIO()
    if instance.name:
        out.write(f"# name: {instance.name}\n")
    out.write(f"{instance.n} {instance.m}\n")
    for it in instance.items:
        out.write(f"{it.profit} {it.weight}\n")
    for c in instance.capacities:
        out.write(f"{c}\n")
    return out.getvalue()


def read_instance(source) -> MkpInstance:
    """Read an MKP instance from a path or an open text stream."""
    return parse_mkp(_read_text(source))


def write_instance(instance: MkpInstance, target) -> None:
    text = format_mkp(instance)
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        target.write(text)


def parse_bsmkp(text: str) -> BsmkpInstance:
    rows, name = _data_lines(text)
    if not rows:
        raise EmptyInstance("empty instance file")
    n_classes, m = (int(x) for x in rows[0])
    if len(rows) != 1 + n_classes + m:
        raise InvalidInstance(f"expected {1 + n_classes + m} data lines, found {len(rows)}")
    classes = [
        (int(s), Fraction(int(num), int(den)), int(b)) for s, num, den, b in rows[1:1 + n_classes]
    ]
    caps = [int(r[0]) for r in rows[1 + n_classes:]]
    return validate_bsmkp(classes, caps, name=name)


def format_bsmkp(instance: BsmkpInstance) -> str:
    out = io.StringIO()
    if instance.name:
        out.write(f"# name: {instance.name}\n")
    out.write(f"{len(instance.classes)} {instance.m}\n")
    for c in instance.classes:
        out.write(f"{c.size} {c.profit.numerator} {c.profit.denominator} {c.bound}\n")
    for c in instance.capacities:
        out.write(f"{c}\n")
    return out.getvalue()


def read_bsmkp(source) -> BsmkpInstance:
    return parse_bsmkp(_read_text(source))


def write_bsmkp(instance: BsmkpInstance, target) -> None:
    text = format_bsmkp(instance)
    if isinstance(target, (str, os.PathLike)):
        with open(target, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        target.write(text)
