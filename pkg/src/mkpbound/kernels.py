"""Single-knapsack primitives: fractional bound, exact 0-1 knapsack, subset sum.

Items are ``(profit, weight)`` pairs with integer profit >= 0 and weight >= 1.
Density order is profit/weight descending, ties toward the larger weight and
then the lower index.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ResourceLimit

log = logging.getLogger(__name__)

DP_CAPACITY_LIMIT = 10**6
BITSET_CAPACITY_LIMIT = 10**7
# bits of the packed take-matrix kept for DP backtracking
DP_MEMORY_LIMIT = 4 * 10**8
DEFAULT_NODE_BUDGET = 2_000_000


class KernelItem(NamedTuple):
    profit: int
    weight: int


def density_order(items: Sequence) -> list[int]:
    """Indices sorted by profit density, larger weight then lower index first on ties."""
    return sorted(range(len(items)), key=lambda j: (-Fraction(items[j][0], items[j][1]), -items[j][1], j))


def dantzig_bound(items: Sequence, capacity: int) -> Fraction:
    """Value of the fractional knapsack relaxation (greedy fill, one split item)."""
    if capacity <= 0:
        return Fraction(0)
    value = Fraction(0)
    residual = capacity
    for j in density_order(items):
        p, w = items[j]
        if w <= residual:
            value += p
            residual -= w
            if residual == 0:
                break
        else:
            value += Fraction(p * residual, w)
            break
    return value


def greedy_fractions(items: Sequence, capacity: int) -> list[Fraction]:
    """Per-item fractions of the greedy fractional solution (same order rules)."""
    x = [Fraction(0)] * len(items)
    residual = max(capacity, 0)
    for j in density_order(items):
        if residual == 0:
            break
        p, w = items[j]
        if w <= residual:
            x[j] = Fraction(1)
            residual -= w
        else:
            x[j] = Fraction(residual, w)
            residual = 0
    return x


def solve_knapsack_01(
    items: Sequence, capacity: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[int, frozenset[int]]:
    """Exact 0-1 knapsack optimum and one optimal item index set.

    Uses a weight-indexed DP for capacities up to ``DP_CAPACITY_LIMIT``,
    otherwise depth-first branch and bound. Raises :class:`ResourceLimit`
    when the branch and bound exhausts ``node_budget``.
    """
    capacity = max(int(capacity), 0)
    fitting = [j for j, (p, w) in enumerate(items) if w <= capacity and p > 0]
    if not fitting:
        return 0, frozenset()
    total_w = sum(items[j][1] for j in fitting)
    if total_w <= capacity:
        return sum(items[j][0] for j in fitting), frozenset(fitting)
    capacity = min(capacity, total_w)
    if capacity <= DP_CAPACITY_LIMIT and len(fitting) * (capacity + 1) <= DP_MEMORY_LIMIT:
        return _knapsack_dp(items, fitting, capacity)
    return _knapsack_bnb(items, fitting, capacity, node_budget)


def _knapsack_dp(items, fitting, capacity):
    dp = np.zeros(capacity + 1, dtype=np.int64)
    takes = []
    for j in fitting:
        p, w = items[j]
        cand = dp[:-w] + p
        take = cand > dp[w:]
        dp[w:] = np.where(take, cand, dp[w:])
        takes.append(np.packbits(take))
    value = int(dp[capacity])
    chosen = []
    c = capacity
    for k in range(len(fitting) - 1, -1, -1):
        j = fitting[k]
        w = items[j][1]
        pos = c - w
        if pos >= 0 and (takes[k][pos >> 3] >> (7 - (pos & 7))) & 1:
            chosen.append(j)
            c -= w
    return value, frozenset(chosen)


def _knapsack_bnb(items, fitting, capacity, node_budget):
    order = sorted(fitting, key=lambda j: (-Fraction(items[j][0], items[j][1]), -items[j][1], j))
    p = [items[j][0] for j in order]
    w = [items[j][1] for j in order]
    n = len(order)
    pw = [0] * (n + 1)
    pp = [0] * (n + 1)
    for k in range(n):
        pw[k + 1] = pw[k] + w[k]
        pp[k + 1] = pp[k] + p[k]

    def upper(k, r):
        t = bisect_right(pw, pw[k] + r, lo=k) - 1
        ub = pp[t] - pp[k]
        if t < n:
            ub += (r - (pw[t] - pw[k])) * p[t] // w[t]
        return ub

    root_ub = upper(0, capacity)
    # greedy incumbent
    best, best_set, r = 0, [], capacity
    for k in range(n):
        if w[k] <= r:
            r -= w[k]
            best += p[k]
            best_set.append(k)
    nodes = 0
    # (next index, residual, value, chosen linked list)
    stack = [(0, capacity, 0, None)]
    while stack:
        k, r, val, chain = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise ResourceLimit("0-1 knapsack node budget exhausted", best, root_ub)
        if val > best:
            best = val
            best_set = _unchain(chain)
        if best == root_ub:
            break
        if k >= n or val + upper(k, r) <= best:
            continue
        stack.append((k + 1, r, val, chain))
        if w[k] <= r:
            stack.append((k + 1, r - w[k], val + p[k], (k, chain)))
    return best, frozenset(order[k] for k in best_set)


def _unchain(chain):
    out = []
    while chain is not None:
        out.append(chain[0])
        chain = chain[1]
    return out


def _subset_bitset(weights: Sequence[int], capacity: int) -> int:
    mask = (1 << (capacity + 1)) - 1
    bits = 1
    for w in weights:
        if 0 < w <= capacity:
            bits |= (bits << w) & mask
            if bits == mask:
                break
    return bits


def solve_subset_sum(weights: Sequence[int], capacity: int, return_subset: bool = False):
    """Largest subset sum of ``weights`` not exceeding ``capacity``.

    With ``return_subset`` the result is ``(value, indices)`` and the indices
    realize the value.
    """
    capacity = max(int(capacity), 0)
    if capacity > BITSET_CAPACITY_LIMIT:
        value, chosen = solve_knapsack_01([(w, w) for w in weights], capacity)
        return (value, chosen) if return_subset else value
    if not return_subset:
        return _subset_bitset(weights, capacity).bit_length() - 1
    mask = (1 << (capacity + 1)) - 1
    history = [1]
    for w in weights:
        bits = history[-1]
        if 0 < w <= capacity:
            bits = bits | ((bits << w) & mask)
        history.append(bits)
    value = history[-1].bit_length() - 1
    target = value
    chosen = []
    for j in range(len(weights) - 1, -1, -1):
        if (history[j] >> target) & 1:
            continue
        chosen.append(j)
        target -= weights[j]
    assert target == 0
    return value, frozenset(chosen)


def max_subset_sums(weights: Sequence[int], capacities: Sequence[int]) -> list[int]:
    """:func:`solve_subset_sum` for several capacities sharing one bitset."""
    cmax = max(capacities, default=0)
    if cmax > BITSET_CAPACITY_LIMIT:
        return [solve_subset_sum(weights, c) for c in capacities]
    bits = _subset_bitset(weights, cmax)
    return [(bits & ((1 << (c + 1)) - 1)).bit_length() - 1 for c in capacities]
