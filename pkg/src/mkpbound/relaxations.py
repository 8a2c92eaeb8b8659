"""Upper bounds for MKP: LP, surrogate and the sequential (divisible-size) bound.

The sequential bound replaces every item by fragments whose sizes come from a
divisibility chain ``S`` (fragment profits proportional to size), solves the
resulting divisible-size problem exactly with :mod:`mkpbound.bsmkp`, and
keeps the smallest value over several chains, one chain per seed item.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .bsmkp import solve_bsmkp
from .errors import DegenerateItem, MkpBoundError, ResourceLimit, WitnessFailure
from .kernels import dantzig_bound, greedy_fractions, max_subset_sums, solve_knapsack_01
from .model import BsmkpInstance, MkpInstance, check_chain, validate_bsmkp

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SequenceParams:
    q_max: int = 10
    l_max: int = 5
    it_max: int = 10

    def __post_init__(self):
        if self.q_max < 2 or self.l_max < 2 or self.it_max < 1:
            raise ValueError("need q_max >= 2, l_max >= 2, it_max >= 1")


@dataclass(frozen=True)
class SequenceBuild:
    seed_item: int | None
    q_cap: int
    q: int
    s_bar: int
    sequence: tuple[int, ...]


@dataclass
class IterationRecord:
    seed_item: int
    build: SequenceBuild
    z_seq: Fraction | None
    seconds: float
    cached: bool = False
    error: str | None = None


@dataclass
class SequentialResult:
    z_seq: Fraction
    trace: list[IterationRecord] = field(default_factory=list)

    @property
    def best(self) -> IterationRecord:
        return min((r for r in self.trace if r.z_seq is not None), key=lambda r: r.z_seq)


def tighten_capacities(instance: MkpInstance, flagged: list | None = None) -> MkpInstance:
    """Shrink each capacity to the largest subset sum of weights it can hold.

    Knapsacks whose subset-sum solve hits a resource limit keep their
    capacity; their indices are appended to ``flagged`` when given. A
    capacity that no weight fits is left as is, since capacities must stay
    positive.
    """
    weights = instance.weights
    try:
        sums = max_subset_sums(weights, instance.capacities)
    except ResourceLimit:
        sums = []
        for i, c in enumerate(instance.capacities):
            try:
                sums.append(max_subset_sums(weights, [c])[0])
            except ResourceLimit:
                log.warning("capacity %d of %s not tightened: resource limit", i, instance.name)
                if flagged is not None:
                    flagged.append(i)
                sums.append(c)
    caps = [s if s > 0 else c for s, c in zip(sums, instance.capacities)]
    if tuple(caps) == instance.capacities:
        return instance
    return instance.with_capacities(caps)


def lp_fractional_solution(instance: MkpInstance) -> list[list[Fraction]]:
    """A fractional ``x[i][j]`` reaching the LP bound.

    The greedy fractions of the aggregated knapsack are spread over the
    knapsacks in proportion to their capacities.
    """
    total = sum(instance.capacities)
    xs = greedy_fractions(instance.items, total)
    return [[xj * Fraction(c, total) for xj in xs] for c in instance.capacities]


def lp_bound(instance: MkpInstance) -> Fraction:
    """Optimum of the continuous relaxation of the MKP model.

    Equal to the fractional knapsack bound with capacity ``sum(c)``; a
    fractional assignment is rebuilt and checked before returning.
    """
    z = dantzig_bound(instance.items, sum(instance.capacities))
    x = lp_fractional_solution(instance)
    _check_lp_witness(instance, x, z)
    return z


def _check_lp_witness(instance: MkpInstance, x, z) -> None:
    for i, row in enumerate(x):
        load = sum(xij * it.weight for xij, it in zip(row, instance.items))
        if load > instance.capacities[i]:
            raise WitnessFailure(f"knapsack {i} overloaded in LP witness")
    value = Fraction(0)
    for j, it in enumerate(instance.items):
        col = sum(row[j] for row in x)
        if col > 1 or any(row[j] < 0 for row in x):
            raise WitnessFailure(f"item {j} fractions out of range")
        value += col * it.profit
    if value != z:
        raise WitnessFailure(f"LP witness value {value} != bound {z}")


def surrogate_bound(instance: MkpInstance) -> int:
    """0-1 knapsack optimum with all capacities pooled (uniform multipliers)."""
    value, _ = solve_knapsack_01(instance.items, sum(instance.capacities))
    return value


def reference_size(w: int, q_cap: int) -> tuple[int, int]:
    """Largest ``q`` in ``[2, q_cap]`` minimizing ``w mod q``, and ``w - w mod q``."""
    if w < 2:
        raise DegenerateItem(f"weight {w} admits no divisor q >= 2")
    if q_cap < 2:
        raise ValueError("q_cap must be at least 2")
    best_q = max(range(2, q_cap + 1), key=lambda q: (-(w % q), q))
    return best_q, w - w % best_q


def _chain_accepts(chain: set[int], t: int) -> bool:
    for s in chain:
        if s > t and s % t:
            return False
        if s < t and t % s:
            return False
        if s == t:
            return False
    return True


def build_sequence(w: int, params: SequenceParams = SequenceParams(), seed_item: int | None = None) -> SequenceBuild:
    """Divisibility chain derived from one item weight.

    Starts from ``{1, s_bar}`` and scans ``s_bar - q, s_bar - 2q, ..., q``
    then ``q - 1, ..., 2``, keeping each value that extends the chain, until
    ``l_max`` sizes are collected.
    """
    q_cap = min(params.q_max, w)
    q, s_bar = reference_size(w, q_cap)
    chain = {1, s_bar}
    candidates = list(range(s_bar - q, q - 1, -q)) + list(range(q - 1, 1, -1))
    for t in candidates:
        if len(chain) >= params.l_max:
            break
        if t >= 2 and _chain_accepts(chain, t):
            chain.add(t)
    return SequenceBuild(seed_item, q_cap, q, s_bar, tuple(sorted(chain)))


def split_items(instance: MkpInstance, sequence: Iterable[int]) -> BsmkpInstance:
    """Fragment every item into sizes from ``sequence`` (largest first).

    Fragment profits are ``p * s / w``, so fragment sizes sum to ``w`` and
    fragment profits to ``p`` for each item. Knapsacks are copied unchanged.
    """
    sizes = check_chain(sequence)
    if sizes[0] != 1:
        raise ValueError("sequence must contain 1")
    desc = sizes[::-1]
    classes = []
    for it in instance.items:
        residual = it.weight
        for s in desc:
            k, residual = divmod(residual, s)
            if k:
                classes.append((s, Fraction(it.profit * s, it.weight), k))
    return validate_bsmkp(classes, instance.capacities, name=instance.name)


SEED_RULES = ("index", "weight")


def seed_order(instance: MkpInstance, rule: str = "index") -> list[int]:
    """Seed visit order: ``index`` (input order) or ``weight`` (heaviest first, then index)."""
    if rule == "index":
        return list(range(instance.n))
    if rule == "weight":
        return sorted(range(instance.n), key=lambda j: (-instance.items[j].weight, j))
    raise ValueError(f"unknown seed rule {rule!r}")


def sequential_bound(
    instance: MkpInstance,
    params: SequenceParams = SequenceParams(),
    order: Sequence[int] | None = None,
    seed_rule: str = "index",
) -> SequentialResult:
    """Minimum divisible-size relaxation value over up to ``it_max`` seed items.

    ``order`` forces the seed items to visit, otherwise ``seed_rule`` picks
    them (see :func:`seed_order`); items of weight below 2 are skipped. Seeds producing an already solved chain reuse its value.
    """
    candidates = list(order) if order is not None else seed_order(instance, seed_rule)
    memo: dict[tuple[int, ...], Fraction] = {}
    trace: list[IterationRecord] = []
    visited = 0
    for j in candidates:
        if visited >= params.it_max:
            break
        w = instance.items[j].weight
        if w < 2:
            continue
        visited += 1
        t0 = time.perf_counter()
        build = build_sequence(w, params, seed_item=j)
        if build.sequence in memo:
            trace.append(IterationRecord(j, build, memo[build.sequence], time.perf_counter() - t0, cached=True))
            continue
        try:
            z = solve_bsmkp(split_items(instance, build.sequence)).value
        except MkpBoundError as exc:
            log.warning("seed item %d skipped: %s", j, exc)
            trace.append(IterationRecord(j, build, None, time.perf_counter() - t0, error=str(exc)))
            continue
        memo[build.sequence] = z
        trace.append(IterationRecord(j, build, z, time.perf_counter() - t0))
    values = [r.z_seq for r in trace if r.z_seq is not None]
    if not values:
        # every weight below 2 (or every solve failed): the unit chain is always valid
        z = solve_bsmkp(split_items(instance, (1,))).value
        build = SequenceBuild(None, 1, 1, 1, (1,))
        trace.append(IterationRecord(-1, build, z, 0.0))
        values = [z]
    return SequentialResult(min(values), trace)
