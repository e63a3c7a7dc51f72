"""Exact 0-1 and Bounded Knapsack solving via proximity partitioning.

Pipeline: trim the bounded instance with the classic proximity bound, expand
to at most 4*w_max^2 explicit items, perturb profits so ratios are strictly
distinct, partition the items with per-part proximity bounds, solve each
part's equal-weight buckets greedily, and combine the concave results with
linear-time (max,+)-convolutions.
"""

from .model import (BoundedInstance, BoundedItem, Instance01, Item01, NEG_INF,
                    PrefixSolution, ValidationError, canonical_sort,
                    make_bounded_instance, make_instance_01,
                    maximal_prefix_01, maximal_prefix_bounded)
from .oracles import (OracleBudgetError, bellman_01, bellman_bounded,
                      brute_force_01)
from .reduction import ReducedInstance, recover, reduce_bounded, solve_bounded
from .solver import solve_01, solve_01_auto
from .proximity import Part, cap_delta, partition, potential, single_step

__all__ = [
    "BoundedInstance", "BoundedItem", "Instance01", "Item01", "NEG_INF",
    "PrefixSolution", "ValidationError", "canonical_sort",
    "make_bounded_instance", "make_instance_01", "maximal_prefix_01",
    "maximal_prefix_bounded", "OracleBudgetError", "bellman_01",
    "bellman_bounded", "brute_force_01", "ReducedInstance", "recover",
    "reduce_bounded", "solve_bounded", "solve_01", "solve_01_auto", "Part",
    "cap_delta", "partition", "potential", "single_step",
]

__version__ = "0.1.0"
