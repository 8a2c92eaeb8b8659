"""Reference solvers for checking the bounds.

The brute-force solvers are deliberately naive enumerations. ``bnb_mkp`` is
a depth-first branch and bound that supplies desk-scale optima for the gap
tables.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .errors import TooLarge
from .kernels import dantzig_bound, density_order, solve_knapsack_01, solve_subset_sum
from .model import BsmkpInstance, BsmkpSolution, MkpInstance, MkpSolution
from .relaxations import SequenceParams, sequential_bound, surrogate_bound


@dataclass(frozen=True)
class OracleLimits:
    max_items: int = 12
    node_budget: int = 2_000_000
    time_budget: float | None = None

    def __post_init__(self):
        if self.max_items < 1 or self.node_budget < 1:
            raise ValueError("budgets must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time budget must be positive")


@dataclass(frozen=True)
class BnbResult:
    value: int
    lower: int
    upper: int
    exact: bool
    solution: MkpSolution
    nodes: int


def brute_force_mkp(instance: MkpInstance, limits: OracleLimits = OracleLimits()) -> MkpSolution:
    """Enumerate every assignment of items to knapsacks (or to none).

    Items in index order, knapsacks in index order, "unassigned" last.
    Branches are cut on capacity violations and when even taking every
    remaining item could not beat the incumbent.
    """
    n, m = instance.n, instance.m
    if n > limits.max_items:
        raise TooLarge(f"brute force limited to {limits.max_items} items, got {n}")
    p = instance.profits
    w = instance.weights
    residual = list(instance.capacities)
    current: list[int | None] = [None] * n
    best_value = -1
    best: list[int | None] = []
    suffix = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix[j] = suffix[j + 1] + p[j]

    def rec(j: int, value: int) -> None:
        nonlocal best_value, best
        if value + suffix[j] <= best_value:
            return
        if j == n:
            if value > best_value:
                best_value = value
                best = current.copy()
            return
        for i in range(m):
            if w[j] <= residual[i]:
                residual[i] -= w[j]
                current[j] = i
                rec(j + 1, value + p[j])
                residual[i] += w[j]
        current[j] = None
        rec(j + 1, value)

    rec(0, 0)
    return MkpSolution(tuple(best), best_value)


def _knapsack_vectors(classes, cap, remaining):
    """All count vectors fitting ``cap`` within ``remaining`` bounds."""
    out = []
    vec = [0] * len(classes)

    def rec(t, room):
        if t == len(classes):
            out.append(tuple(vec))
            return
        s = classes[t].size
        for k in range(min(remaining[t], room // s) + 1):
            vec[t] = k
            rec(t + 1, room - k * s)
        vec[t] = 0

    rec(0, cap)
    return out


def brute_force_bsmkp(instance: BsmkpInstance, limits: OracleLimits = OracleLimits()) -> BsmkpSolution:
    """Enumerate per-knapsack count vectors knapsack by knapsack.

    Raises :class:`TooLarge` once more than ``limits.node_budget`` partial
    assignments have been visited.
    """
    classes = instance.classes
    m = instance.m
    best_value = Fraction(-1)
    best_rows: list[tuple[int, ...]] = []
    rows: list[tuple[int, ...]] = []
    remaining = [c.bound for c in classes]
    nodes = 0

    def rec(i: int, value: Fraction) -> None:
        nonlocal best_value, best_rows, nodes
        nodes += 1
        if nodes > limits.node_budget:
            raise TooLarge("BSMKP enumeration exceeded node budget")
        if i == m:
            if value > best_value:
                best_value = value
                best_rows = rows.copy()
            return
        for vec in _knapsack_vectors(classes, instance.capacities[i], remaining):
            for t, k in enumerate(vec):
                remaining[t] -= k
            rows.append(vec)
            rec(i + 1, value + sum(k * c.profit for k, c in zip(vec, classes)))
            rows.pop()
            for t, k in enumerate(vec):
                remaining[t] += k

    rec(0, Fraction(0))
    counts = tuple(tuple(best_rows[i][t] for i in range(m)) for t in range(len(classes)))
    return BsmkpSolution(counts, best_value)


ROOT_PACK_BUDGET = 500_000
NODE_PACK_BUDGET = 20_000


class _Budget(Exception):
    pass


def _pack_by_subset_sum(weights: list[int], caps: list[int], partial: bool = False):
    """Fill knapsacks tightest first, each with a max-weight subset of what is left.

    Returns a knapsack index per weight, ``-1`` for unplaced ones when
    ``partial`` is set; otherwise ``None`` unless everything was placed.
    """
    where = [-1] * len(weights)
    left = list(range(len(weights)))
    for i in sorted(range(len(caps)), key=lambda i: (caps[i], i)):
        if not left:
            break
        _, chosen = solve_subset_sum([weights[t] for t in left], caps[i], return_subset=True)
        for c in chosen:
            where[left[c]] = i
        left = [t for t in left if where[t] < 0]
    if partial:
        return where
    return None if left else where


def _pack(weights: list[int], caps: list[int], budget: int = 5000) -> list[int] | None:
    """Knapsack index for each weight so that no capacity is exceeded, or ``None``.

    Tries a subset-sum fill, then a depth-first search (heaviest item
    first) with a node budget; ``None`` means "not found", not "impossible".
    """
    if sum(weights) > sum(caps):
        return None
    where = _pack_by_subset_sum(weights, caps)
    if where is not None:
        return where
    order = sorted(range(len(weights)), key=lambda t: -weights[t])
    room = list(caps)
    where = [0] * len(weights)
    nodes = 0

    def rec(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        nodes += 1
        if nodes > budget:
            return False
        t = order[pos]
        tried = set()
        for i in sorted(range(len(room)), key=lambda i: room[i]):
            r = room[i]
            if weights[t] <= r and r not in tried:
                tried.add(r)
                room[i] -= weights[t]
                where[t] = i
                if rec(pos + 1):
                    return True
                room[i] += weights[t]
        return False

    return where if rec(0) else None


def _greedy_fill(p, w, caps):
    """Fill knapsacks smallest first, each with an exact 0-1 knapsack over what is left."""
    assign: list[int | None] = [None] * len(p)
    value = 0
    for i in sorted(range(len(caps)), key=lambda i: (caps[i], i)):
        free = [k for k in range(len(p)) if assign[k] is None]
        got, chosen = solve_knapsack_01([(p[k], w[k]) for k in free], caps[i])
        for idx in chosen:
            assign[free[idx]] = i
        value += got
    return value, assign


def bnb_mkp(
    instance: MkpInstance,
    limits: OracleLimits = OracleLimits(),
    root_sequential: bool = True,
) -> BnbResult:
    """Depth-first branch and bound over item-to-knapsack assignments.

    The root upper bound is ``min(z_surr, z_seq)`` with a one-seed sequential
    bound. At every node the remaining items get the fractional bound and
    then the surrogate bound (pooled residual capacity); when the surrogate
    solution happens to pack into the residual knapsacks the node is solved
    outright. Items are branched in density order: each knapsack in turn
    (knapsacks with equal residual capacity are interchangeable, only the
    first is tried), then "unassigned". When the node or time budget runs
    out the result is the interval ``[lower, upper]`` with ``exact=False``.
    """
    n, m = instance.n, instance.m
    order = density_order(instance.items)
    p = [instance.items[j].profit for j in order]
    w = [instance.items[j].weight for j in order]

    root_upper = surrogate_bound(instance)
    if root_sequential:
        z_seq = sequential_bound(instance, SequenceParams(it_max=1)).z_seq
        root_upper = min(root_upper, floor(z_seq))

    best_value, best_assign = _greedy_fill(p, w, list(instance.capacities))
    residual = list(instance.capacities)
    assign: list[int | None] = [None] * n
    nodes = 0
    deadline = None if limits.time_budget is None else time.perf_counter() + limits.time_budget

    def close_node(k: int, value: int) -> bool:
        """True when the subtree at item ``k`` needs no further branching."""
        nonlocal best_value, best_assign
        room = max(residual)
        rest = [t for t in range(k, n) if w[t] <= room]
        if not rest:
            return True
        items = [(p[t], w[t]) for t in rest]
        pool = sum(residual)
        if value + floor(dantzig_bound(items, pool)) <= best_value:
            return True
        sub, chosen = solve_knapsack_01(items, pool)
        if value + sub <= best_value:
            return True
        picked = [rest[c] for c in sorted(chosen)]
        where = _pack([w[t] for t in picked], residual, ROOT_PACK_BUDGET if k == 0 else NODE_PACK_BUDGET)
        if where is not None:
            best_value = value + sub
            best_assign = assign.copy()
            for t, i in zip(picked, where):
                best_assign[t] = i
            return True
        repair(k, value, picked)
        return value + sub <= best_value

    def repair(k: int, value: int, picked: list[int]) -> None:
        """Feasible completion: pack what fits of the surrogate set, then fill the gaps."""
        nonlocal best_value, best_assign
        room = list(residual)
        trial = assign.copy()
        where = _pack_by_subset_sum([w[t] for t in picked], room, partial=True)
        for t, i in zip(picked, where):
            if i >= 0:
                trial[t] = i
                room[i] -= w[t]
                value += p[t]
        for i in sorted(range(m), key=lambda i: (room[i], i)):
            free = [t for t in range(k, n) if trial[t] is None and w[t] <= room[i]]
            if not free:
                continue
            got, chosen = solve_knapsack_01([(p[t], w[t]) for t in free], room[i])
            for c in chosen:
                trial[free[c]] = i
            room[i] -= sum(w[free[c]] for c in chosen)
            value += got
        if value > best_value:
            best_value = value
            best_assign = trial

    def rec(k: int, value: int) -> None:
        nonlocal nodes, best_value, best_assign
        nodes += 1
        if nodes > limits.node_budget or (deadline is not None and nodes % 64 == 0 and time.perf_counter() > deadline):
            raise _Budget
        if value > best_value:
            best_value = value
            best_assign = assign.copy()
        if best_value >= root_upper or k == n:
            return
        if close_node(k, value):
            return
        seen = set()
        for i in range(m):
            r = residual[i]
            if w[k] <= r and r not in seen:
                seen.add(r)
                residual[i] -= w[k]
                assign[k] = i
                rec(k + 1, value + p[k])
                residual[i] += w[k]
                assign[k] = None
                if best_value >= root_upper:
                    return
        rec(k + 1, value)

    exact = True
    if best_value < root_upper:
        try:
            rec(0, 0)
        except _Budget:
            exact = False

    by_item: list[int | None] = [None] * n
    for k, i in enumerate(best_assign):
        by_item[order[k]] = i
    solution = MkpSolution(tuple(by_item), best_value)
    upper = best_value if exact else root_upper
    return BnbResult(best_value, best_value, upper, exact, solution, nodes)
