"""Exact solver for the bounded multiple knapsack with divisible item sizes.

Slot accounting
---------------
Let ``s_1 < ... < s_L`` be the size levels (each divides the next) and
``A_l = sum_i floor(c_i / s_l)`` the number of level-``l`` slots. Because
sizes divide, placing an item of size ``s_u >= s_l`` in a knapsack removes
exactly ``s_u / s_l`` level-``l`` slots from it. Hence per-level item totals
``K_u`` can be packed iff for every level ``l``::

    sum_{u >= l} K_u * s_u / s_l <= A_l

and any largest-first placement succeeds (:func:`realize_assignment`).

Solving
-------
Write ``A_l = E_l + r_l * A_{l+1}`` with ``r_l = s_{l+1} / s_l``. The ``E_l``
extra slots only fit items of size ``<= s_l``, so they go to the best
level-``l`` items; the remaining level-``l`` items, best first, behave like
items of size ``s_{l+1}`` when grouped ``r_l`` at a time. Merging those
bundles into level ``l+1`` and repeating up to the top level (which keeps its
best ``A_L`` items) gives the optimum. Item lists are run-length encoded so
large class bounds cost nothing extra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InfeasibleCounts
from .model import BsmkpInstance, BsmkpSolution, check_chain


@dataclass(frozen=True)
class SlotProfile:
    levels: tuple[int, ...]
    slot_caps: tuple[int, ...]


def slot_capacities(capacities: Sequence[int], sizes: Sequence[int]) -> SlotProfile:
    levels = check_chain(sizes)
    return SlotProfile(levels, tuple(sum(c // s for c in capacities) for s in levels))


def nested_slots_feasible(capacities: Sequence[int], sizes: Sequence[int], level_totals: Sequence[int]) -> bool:
    """Aggregate test: can ``level_totals[l]`` items of size ``sizes[l]`` be packed?

    ``sizes`` must be a strictly increasing divisibility chain.
    """
    profile = slot_capacities(capacities, sizes)
    if tuple(sizes) != profile.levels:
        raise ValueError("sizes must be distinct and ascending")
    used = 0
    for l in range(len(sizes) - 1, -1, -1):
        if l < len(sizes) - 1:
            used *= sizes[l + 1] // sizes[l]
        used += level_totals[l]
        if used > profile.slot_caps[l]:
            return False
    return True


def _bundle(runs, skip, r):
    """Drop the first ``skip`` items of ``runs`` and group the rest ``r`` at a time."""
    out = []
    part_n, part_v = 0, Fraction(0)
    for v, cnt in runs:
        if skip:
            d = min(skip, cnt)
            skip -= d
            cnt -= d
        if cnt and part_n:
            d = min(r - part_n, cnt)
            part_n += d
            part_v += d * v
            cnt -= d
            if part_n == r:
                out.append((part_v, 1))
                part_n, part_v = 0, Fraction(0)
        if cnt >= r:
            out.append((r * v, cnt // r))
            cnt %= r
        if cnt:
            part_n, part_v = cnt, cnt * v
    if part_n:
        out.append((part_v, 1))
    return out


def level_totals_optimum(instance: BsmkpInstance) -> tuple[Fraction, list[int]]:
    """Optimal value and per-class totals (placement not yet fixed)."""
    classes = instance.classes
    profile = slot_capacities(instance.capacities, [c.size for c in classes])
    levels, A = profile.levels, profile.slot_caps
    L = len(levels)
    index = {s: l for l, s in enumerate(levels)}
    natives: list[list[int]] = [[] for _ in levels]
    for t, c in enumerate(classes):
        if c.bound > 0:
            natives[index[c.size]].append(t)
    for lst in natives:
        lst.sort(key=lambda t: (-classes[t].profit, t))

    # merged[l]: list of (profit, count, tag); tag is a class index or None for a bundle
    merged = []
    extra = []
    carry: list[tuple[Fraction, int]] = []
    for l in range(L):
        runs = [(classes[t].profit, classes[t].bound, t) for t in natives[l]]
        runs += [(v, cnt, None) for v, cnt in carry]
        runs.sort(key=lambda e: -e[0])  # stable: natives before bundles on ties
        merged.append(runs)
        if l == L - 1:
            extra.append(A[l])
            break
        r = levels[l + 1] // levels[l]
        e = A[l] - r * A[l + 1]
        extra.append(e)
        carry = _bundle([(v, cnt) for v, cnt, _ in runs], e, r)

    totals = [0] * len(classes)
    value = Fraction(0)
    take = min(A[L - 1], sum(cnt for _, cnt, _ in merged[L - 1]))
    for l in range(L - 1, -1, -1):
        left = take
        bundles = 0
        for v, cnt, tag in merged[l]:
            if left == 0:
                break
            d = min(left, cnt)
            left -= d
            if tag is None:
                bundles += d
            else:
                totals[tag] += d
                value += d * v
        if l > 0:
            r = levels[l] // levels[l - 1]
            avail = sum(cnt for _, cnt, _ in merged[l - 1])
            take = min(avail, extra[l - 1] + r * bundles)
    return value, totals


def realize_assignment(instance: BsmkpInstance, totals: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """Place per-class totals into knapsacks, largest size first.

    Returns ``counts[t][i]``. Raises :class:`InfeasibleCounts` if some item
    cannot be placed, which means the totals violate the slot constraints.
    """
    classes = instance.classes
    m = instance.m
    if len(totals) != len(classes):
        raise ValueError("one total per class required")
    residual = list(instance.capacities)
    counts = [[0] * m for _ in classes]
    order = sorted(range(len(classes)), key=lambda t: (-classes[t].size, -classes[t].profit, t))
    for t in order:
        s = classes[t].size
        need = totals[t]
        if need < 0 or need > classes[t].bound:
            raise InfeasibleCounts(f"class {t}: count {need} outside [0, {classes[t].bound}]")
        for i in range(m):
            if need == 0:
                break
            k = min(need, residual[i] // s)
            if k:
                counts[t][i] += k
                residual[i] -= k * s
                need -= k
        if need:
            raise InfeasibleCounts(f"class {t}: {need} items of size {s} could not be placed")
    return tuple(tuple(row) for row in counts)


def solve_bsmkp(instance: BsmkpInstance) -> BsmkpSolution:
    """Exact optimum of the divisible-size bounded multiple knapsack."""
    value, totals = level_totals_optimum(instance)
    counts = realize_assignment(instance, totals)
    return BsmkpSolution(counts, value)
