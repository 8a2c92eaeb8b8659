import random

import pytest
from _enum import enum_knapsack
from hypothesis import given
from hypothesis import strategies as st

from mkpbound import kernels
from mkpbound.errors import ResourceLimit
from mkpbound.kernels import (
    dantzig_bound,
    density_order,
    greedy_fractions,
    max_subset_sums,
    solve_knapsack_01,
    solve_subset_sum,
)

item_st = st.tuples(st.integers(0, 60), st.integers(1, 40))


def _check_subset(items, capacity, value, chosen):
    assert sum(items[j][1] for j in chosen) <= capacity
    assert sum(items[j][0] for j in chosen) == value


def test_knapsack_matches_enumeration():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 13)
        items = [(rng.randint(0, 50), rng.randint(1, 40)) for _ in range(n)]
        cap = rng.randint(0, 25 * n)
        value, chosen = solve_knapsack_01(items, cap)
        assert value == enum_knapsack(items, cap)
        _check_subset(items, cap, value, chosen)


def test_branch_and_bound_path(monkeypatch):
    monkeypatch.setattr(kernels, "DP_CAPACITY_LIMIT", 0)
    rng = random.Random(12)
    for _ in range(200):
        n = rng.randint(1, 12)
        items = [(rng.randint(0, 50), rng.randint(1, 40)) for _ in range(n)]
        cap = rng.randint(0, 25 * n)
        value, chosen = solve_knapsack_01(items, cap)
        assert value == enum_knapsack(items, cap)
        _check_subset(items, cap, value, chosen)


def test_large_capacity_uses_branch_and_bound():
    items = [(3 * 10**7 + j, 10**7 + j) for j in range(6)]
    value, chosen = solve_knapsack_01(items, 3 * 10**7 + 3)
    assert value == enum_knapsack(items, 3 * 10**7 + 3)
    _check_subset(items, 3 * 10**7 + 3, value, chosen)


def test_budget_exhaustion_reports_interval(monkeypatch):
    monkeypatch.setattr(kernels, "DP_CAPACITY_LIMIT", 0)
    rng = random.Random(5)
    items = [(w + 10, w) for w in (rng.randint(100, 1000) for _ in range(40))]
    with pytest.raises(ResourceLimit) as err:
        solve_knapsack_01(items, 7777, node_budget=10)
    assert err.value.lower <= err.value.upper
    monkeypatch.setattr(kernels, "DP_CAPACITY_LIMIT", 10**6)
    opt, _ = solve_knapsack_01(items, 7777)
    assert err.value.lower <= opt <= err.value.upper


def test_knapsack_edge_cases():
    assert solve_knapsack_01([], 10) == (0, frozenset())
    assert solve_knapsack_01([(5, 3)], 0) == (0, frozenset())
    assert solve_knapsack_01([(5, 3), (4, 4)], 100) == (9, frozenset({0, 1}))
    assert solve_knapsack_01([(0, 1)], 5) == (0, frozenset())


def test_dantzig_example_pool():
    items = [(99, 33), (70, 35), (74, 37), (47, 47), (64, 64)]
    assert dantzig_bound(items, 111) == 249
    assert dantzig_bound(items, 0) == 0
    assert dantzig_bound(items, 10) == 30


@given(st.lists(item_st, min_size=1, max_size=10), st.integers(0, 300))
def test_dantzig_properties(items, cap):
    bound = dantzig_bound(items, cap)
    x = greedy_fractions(items, cap)
    assert sum(xj * p for xj, (p, _) in zip(x, items)) == bound
    assert sum(xj * w for xj, (_, w) in zip(x, items)) <= cap
    assert all(0 <= xj <= 1 for xj in x)
    assert sum(1 for xj in x if 0 < xj < 1) <= 1
    assert bound >= solve_knapsack_01(items, cap)[0]


def test_density_order_ties():
    # equal density: heavier first, then lower index
    assert density_order([(2, 1), (4, 2), (4, 2), (9, 3)]) == [3, 1, 2, 0]


def test_subset_sum_matches_enumeration():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 12)
        ws = [rng.randint(1, 60) for _ in range(n)]
        cap = rng.randint(0, 30 * n)
        expect = enum_knapsack([(w, w) for w in ws], cap)
        assert solve_subset_sum(ws, cap) == expect
        value, chosen = solve_subset_sum(ws, cap, return_subset=True)
        assert value == expect == sum(ws[j] for j in chosen)


def test_subset_sum_above_bitset_limit(monkeypatch):
    monkeypatch.setattr(kernels, "BITSET_CAPACITY_LIMIT", 50)
    ws = [17, 23, 31, 44]
    assert solve_subset_sum(ws, 70) == 67
    assert solve_subset_sum(ws, 70, return_subset=True)[0] == 67
    assert max_subset_sums(ws, [70, 40]) == [67, 40]


def test_max_subset_sums_shared():
    ws = [33, 35, 37, 47, 64]
    assert max_subset_sums(ws, [47, 64, 100, 1]) == [47, 64, 99, 0]
    assert max_subset_sums(ws, []) == []
