"""Upper bounds for the 0-1 multiple knapsack problem.

The main entry points are :func:`sequential_bound`, :func:`surrogate_bound`
and :func:`lp_bound`; :func:`solve_bsmkp` solves the divisible-size
problem underneath the sequential bound.
"""

from .bsmkp import nested_slots_feasible, solve_bsmkp
from .errors import InvalidInstance, MkpBoundError, ResourceLimit
from .fixtures import example, fixture_inst1, fixture_inst2, fixture_inst3, replicate
from .generators import GenSpec, generate
from .harness import SuiteConfig, run_instance, run_suite
from .kernels import dantzig_bound, solve_knapsack_01, solve_subset_sum
from .lpfile import export_lp_with_cut
from .model import (
    BoundReport,
    BsmkpInstance,
    MkpInstance,
    read_instance,
    validate_bsmkp,
    validate_mkp,
    write_instance,
)
from .oracles import OracleLimits, bnb_mkp, brute_force_bsmkp, brute_force_mkp
from .relaxations import (
    SequenceParams,
    build_sequence,
    lp_bound,
    sequential_bound,
    split_items,
    surrogate_bound,
    tighten_capacities,
)

__version__ = "0.1.0"

__all__ = [
    "nested_slots_feasible",
    "solve_bsmkp",
    "InvalidInstance",
    "MkpBoundError",
    "ResourceLimit",
    "fixture_inst1",
    "fixture_inst2",
    "fixture_inst3",
    "replicate",
    "example",
    "GenSpec",
    "generate",
    "SuiteConfig",
    "run_instance",
    "run_suite",
    "dantzig_bound",
    "solve_knapsack_01",
    "solve_subset_sum",
    "export_lp_with_cut",
    "BoundReport",
    "BsmkpInstance",
    "MkpInstance",
    "read_instance",
    "validate_bsmkp",
    "validate_mkp",
    "write_instance",
    "OracleLimits",
    "bnb_mkp",
    "brute_force_bsmkp",
    "brute_force_mkp",
    "SequenceParams",
    "build_sequence",
    "lp_bound",
    "sequential_bound",
    "split_items",
    "surrogate_bound",
    "tighten_capacities",
]
