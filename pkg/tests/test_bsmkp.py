import itertools
import random
from fractions import Fraction

import pytest
from _gen import tiny_bsmkp
from _placement import can_place

from mkpbound.bsmkp import (
    level_totals_optimum,
    nested_slots_feasible,
    realize_assignment,
    slot_capacities,
    solve_bsmkp,
)
from mkpbound.errors import InfeasibleCounts
from mkpbound.fixtures import example
from mkpbound.model import validate_bsmkp
from mkpbound.oracles import brute_force_bsmkp
from mkpbound.relaxations import split_items


def test_example_split():
    inst = split_items(example(), (1, 3, 33))
    sol = solve_bsmkp(inst)
    sol.check(inst)
    assert sol.value == 216


def test_slot_capacities():
    prof = slot_capacities([47, 64], [1, 3, 33])
    assert prof.levels == (1, 3, 33)
    assert prof.slot_caps == (111, 15 + 21, 1 + 1)


def test_matches_brute_force():
    rng = random.Random(2024)
    for _ in range(300):
        inst = tiny_bsmkp(rng)
        sol = solve_bsmkp(inst)
        sol.check(inst)
        assert sol.value == brute_force_bsmkp(inst).value


def test_large_bounds_cost_nothing():
    inst = validate_bsmkp([(1, Fraction(1, 3), 10**9), (4, 5, 10**9), (16, 17, 3)], [10**6, 999_999])
    value, totals = level_totals_optimum(inst)
    sol = solve_bsmkp(inst)
    sol.check(inst)
    assert sol.value == value
    # 4s have the best density; the 3 leftover units of the second knapsack take size-1 items
    assert sol.totals == (3, 499_999, 0)
    assert sol.value == 499_999 * 5 + 1


def test_unit_chain_is_fractional_pool():
    inst = validate_bsmkp([(1, Fraction(3, 2), 5), (1, 1, 10)], [4, 3])
    assert solve_bsmkp(inst).value == Fraction(3, 2) * 5 + 2


def test_realize_rejects_infeasible():
    inst = validate_bsmkp([(4, 1, 3)], [5, 5])
    with pytest.raises(InfeasibleCounts):
        realize_assignment(inst, [3])
    with pytest.raises(InfeasibleCounts):
        realize_assignment(inst, [4])


def test_nested_slots_exhaustive():
    chains = [(1,), (2,), (1, 2), (1, 3), (2, 4), (1, 2, 4), (1, 2, 6), (1, 3, 9), (2, 6, 12)]
    cases = 0
    rng = random.Random(7)
    for sizes in chains:
        for m in (1, 2, 3):
            for _ in range(40):
                caps = [rng.randint(1, 20) for _ in range(m)]
                top = [sum(caps) // s for s in sizes]
                for totals in itertools.product(*(range(min(t, 4) + 1) for t in top)):
                    if rng.random() < 0.5:
                        continue
                    assert nested_slots_feasible(caps, sizes, totals) == can_place(caps, sizes, totals), (caps, sizes, totals)
                    cases += 1
    assert cases >= 1000


def test_nested_slots_rejects_unsorted():
    with pytest.raises(ValueError):
        nested_slots_feasible([5], [2, 1], [0, 0])
