import random

import pytest
from _enum import enum_knapsack
from _gen import tiny_bsmkp, tiny_mkp

from mkpbound.errors import TooLarge
from mkpbound.fixtures import example, fixture_inst1
from mkpbound.generators import GenSpec, generate
from mkpbound.model import validate_bsmkp, validate_mkp
from mkpbound.oracles import OracleLimits, bnb_mkp, brute_force_bsmkp, brute_force_mkp
from mkpbound.relaxations import tighten_capacities


def test_example_optimum():
    sol = brute_force_mkp(example())
    sol.check(example())
    assert sol.value == 173
    assert sol.assigned_items == (0, 2)
    res = bnb_mkp(example())
    assert res.exact and res.value == res.lower == res.upper == 173
    res.solution.check(example())


def test_brute_force_single_knapsack_is_knapsack():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 9)
        items = [(rng.randint(1, 30), rng.randint(1, 20)) for _ in range(n)]
        cap = rng.randint(1, 60)
        assert brute_force_mkp(validate_mkp(items, [cap])).value == enum_knapsack(items, cap)


def test_brute_force_limits():
    inst = validate_mkp([(1, 1)] * 13, [5])
    with pytest.raises(TooLarge):
        brute_force_mkp(inst)
    assert brute_force_mkp(inst, OracleLimits(max_items=13)).value == 5


def test_bnb_matches_brute_force():
    rng = random.Random(77)
    for _ in range(150):
        inst = tiny_mkp(rng, n_max=9, m_max=3)
        res = bnb_mkp(inst)
        assert res.exact
        res.solution.check(inst)
        assert res.value == brute_force_mkp(inst).value


def test_bnb_without_root_sequential():
    rng = random.Random(78)
    for _ in range(30):
        inst = tiny_mkp(rng, n_max=9, m_max=3)
        assert bnb_mkp(inst, root_sequential=False).value == brute_force_mkp(inst).value


def test_bnb_budget_gives_interval():
    # optimum of this fixture is 2000; a small budget cannot close the gap
    res = bnb_mkp(tighten_capacities(fixture_inst1()), OracleLimits(node_budget=200))
    assert not res.exact
    assert res.lower <= 2000 <= res.upper
    res.solution.check(fixture_inst1())


def test_bnb_desk_scale_exact():
    inst = tighten_capacities(generate(GenSpec("small", 40, 10, "uncorrelated", 0, sigma=0.5)))
    res = bnb_mkp(inst, OracleLimits(time_budget=30))
    assert res.exact
    res.solution.check(inst)


def test_brute_force_bsmkp_budget():
    inst = validate_bsmkp([(1, 1, 40), (2, 3, 40)], [30, 30, 30])
    with pytest.raises(TooLarge):
        brute_force_bsmkp(inst, OracleLimits(node_budget=50))


def test_brute_force_bsmkp_solution_valid():
    rng = random.Random(3)
    for _ in range(50):
        inst = tiny_bsmkp(rng)
        sol = brute_force_bsmkp(inst)
        sol.check(inst)


def test_limits_validation():
    with pytest.raises(ValueError):
        OracleLimits(max_items=0)
    with pytest.raises(ValueError):
        OracleLimits(time_budget=0)


def test_nothing_fits():
    inst = validate_mkp([(5, 10), (7, 12)], [3, 9])
    assert brute_force_mkp(inst).value == 0
    res = bnb_mkp(inst)
    assert res.exact and res.value == 0


def test_bsmkp_single_class():
    inst = validate_bsmkp([(3, 5, 4)], [10])
    assert brute_force_bsmkp(inst).value == min(4, 10 // 3) * 5
    assert brute_force_bsmkp(validate_bsmkp([(3, 5, 4)], [2])).value == 0


def test_desk_scale_value_below_relaxations():
    from mkpbound.relaxations import lp_bound, sequential_bound, surrogate_bound

    inst = tighten_capacities(generate(GenSpec("small", 40, 10, "uncorrelated", 0, sigma=0.5)))
    res = bnb_mkp(inst, OracleLimits(time_budget=30))
    assert res.lower <= res.value <= res.upper
    assert res.value <= surrogate_bound(inst)
    assert res.value <= sequential_bound(inst).z_seq
    assert res.value <= lp_bound(inst)
