"""Hard-coded reference instances."""

from __future__ import annotations

from .model import MkpInstance, validate_mkp

_EXAMPLE_WEIGHTS = [33, 35, 37, 47, 64]
_EXAMPLE_PROFITS = [99, 70, 74, 47, 64]
_EXAMPLE_CAPACITIES = [47, 64]

_INST1_WEIGHTS = [
    33, 35, 37, 47, 64, 30, 35, 36, 39, 39, 40, 41, 33, 35, 37, 47, 64, 33, 35, 37, 47,
    64, 30, 35, 36, 39, 39, 40, 41, 33, 35, 37, 47, 64, 47, 64,
]
_INST1_PROFITS = [
    99, 70, 74, 47, 64, 50, 50, 39, 39, 39, 38, 37, 99, 70, 74, 47, 64, 99, 70, 74, 47,
    64, 50, 50, 39, 39, 39, 38, 37, 99, 70, 74, 47, 64, 100, 50,
]
_INST1_CAPACITIES = [
    47, 64, 40, 64, 47, 64, 40, 64, 47, 64, 40, 64, 40, 64, 40, 64, 40, 64, 47, 64, 40,
    39, 39, 37, 39, 39, 37, 39, 39, 37,
]


def example() -> MkpInstance:
    """Five items, two knapsacks (47, 64); optimum 173."""
    return validate_mkp(zip(_EXAMPLE_PROFITS, _EXAMPLE_WEIGHTS), _EXAMPLE_CAPACITIES, name="example")


def fixture_inst1() -> MkpInstance:
    """36 items, 30 knapsacks; optimum 2000."""
    return validate_mkp(zip(_INST1_PROFITS, _INST1_WEIGHTS), _INST1_CAPACITIES, name="inst1")


def replicate(instance: MkpInstance, k: int) -> MkpInstance:
    """``k`` copies of every item and every knapsack."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return instance
    name = f"{instance.name}x{k}" if instance.name else None
    return validate_mkp(
        [it for it in instance.items for _ in range(k)],
        [c for c in instance.capacities for _ in range(k)],
        name=name,
    )


def fixture_inst2() -> MkpInstance:
    return replicate(fixture_inst1(), 3)


def fixture_inst3() -> MkpInstance:
    return replicate(fixture_inst1(), 6)
