"""Bounded-to-0-1 reduction: trim, expand, make ratios distinct, recover.

Trimming uses the classic proximity bound: within every weight class, some
optimal solution keeps all but the 2*w_max least profitable picked copies
and discards all but the 2*w_max most profitable unpicked copies.  The kept
copies total at most 4*w_max per class, hence at most 4*w_max^2 items after
expansion, independent of the original multiplicities.

Profit perturbation replaces p_i by M*p_i + (n-i)*w_i with M = n^2*w_max + 1
(1-based i).  Ratios become strictly decreasing, and because every solution's
tiebreak mass is below M, floor-dividing the perturbed optimum by M recovers
the original one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .model import (BoundedInstance, BoundedItem, Instance01, Item01,
                    canonical_sort, is_canonically_sorted,
                    maximal_prefix_bounded, ratio_cmp, validate_instance)
from . import solver


@dataclass(frozen=True)
class ReducedInstance:
    """A perturbed 0-1 instance plus what is needed to undo the reduction."""

    instance01: Instance01
    committed_profit: int
    reduced_capacity: int
    scale: int
    original_n_bar: int


def trim_bounded(instance: BoundedInstance) -> Tuple[BoundedInstance, int, int]:
    """Returns (trimmed instance, committed profit P, reduced capacity W_bar).

    Runs in O(n + w_max) time regardless of the multiplicities: only
    per-class counters are manipulated, never individual copies.
    """
    if not is_canonically_sorted(instance):
        raise ValueError("trim_bounded requires a canonically sorted instance")
    n = instance.n
    if n == 0:
        return instance, 0, instance.capacity
    w_max = instance.w_max()
    keep = 2 * w_max
    g = maximal_prefix_bounded(instance)
    picked = _picked_counts(instance, g)

    by_weight: Dict[int, List[int]] = {}
    for i, it in enumerate(instance.items):
        by_weight.setdefault(it.weight, []).append(i)

    removed = [0] * n    # u^(0): copies discarded outright
    committed = [0] * n  # u^(1): copies committed into the solution
    for idx_list in by_weight.values():
        # Unpicked side: drop the least profitable unpicked copies beyond
        # the first 2*w_max, walking up from the worst ratio.
        excess = sum(instance.items[i].multiplicity - picked[i]
                     for i in idx_list) - keep
        for i in reversed(idx_list):
            if excess <= 0:
                break
            avail = instance.items[i].multiplicity - picked[i]
            take = min(avail, excess)
            removed[i] = take
            excess -= take
        # Picked side: commit the most profitable picked copies beyond the
        # last 2*w_max, walking down from the best ratio.
        excess = sum(picked[i] for i in idx_list) - keep
        for i in idx_list:
            if excess <= 0:
                break
            take = min(picked[i], excess)
            committed[i] = take
            excess -= take

    committed_profit = 0
    committed_weight = 0
    kept_items = []
    for i, it in enumerate(instance.items):
        committed_profit += committed[i] * it.profit
        committed_weight += committed[i] * it.weight
        left = it.multiplicity - removed[i] - committed[i]
        if left > 0:
            kept_items.append(BoundedItem(it.weight, it.profit, left))
    reduced_capacity = instance.capacity - committed_weight
    if reduced_capacity < 0:
        raise AssertionError("committed weight exceeded the capacity")
    trimmed = BoundedInstance(tuple(kept_items), reduced_capacity)
    total = sum(it.multiplicity for it in trimmed.items)
    if total > 4 * w_max * w_max:
        raise AssertionError(f"trim left {total} copies > 4*w_max^2")
    return trimmed, committed_profit, reduced_capacity


def _picked_counts(instance: BoundedInstance, g) -> List[int]:
    counts = [0] * instance.n
    for i in range(g.picked_count):
        counts[i] = instance.items[i].multiplicity
    if g.cut <= instance.n:
        counts[g.cut - 1] = g.bounded_partial
    return counts


def expand_to_01(trimmed: BoundedInstance) -> Instance01:
    """Write out every remaining copy explicitly, preserving order."""
    w_max = trimmed.w_max()
    total = sum(it.multiplicity for it in trimmed.items)
    if total > 4 * w_max * w_max:
        raise AssertionError("expand_to_01 called on an untrimmed instance")
    items = []
    for it in trimmed.items:
        items.extend([Item01(it.weight, it.profit)] * it.multiplicity)
    return Instance01(tuple(items), trimmed.capacity)


def perturb_profits(instance: Instance01) -> Tuple[Instance01, int]:
    """Make all ratios strictly distinct; returns (instance, scale M)."""
    if not is_canonically_sorted(instance):
        raise ValueError("perturb_profits requires a canonically sorted instance")
    n = instance.n
    if n == 0:
        return instance, 1
    w_max = instance.w_max()
    scale = n * n * w_max + 1
    items = tuple(Item01(it.weight, scale * it.profit + (n - k - 1) * it.weight)
                  for k, it in enumerate(instance.items))
    out = Instance01(items, instance.capacity)
    for a, b in zip(items, items[1:]):
        if ratio_cmp(a.profit, a.weight, b.profit, b.weight) <= 0:
            raise AssertionError("perturbation failed to separate ratios")
    return out, scale


def recover(value_perturbed: int, red: ReducedInstance) -> int:
    """Original optimum from the perturbed one: floor-divide and add P."""
    if value_perturbed < 0:
        raise ValueError("perturbed value must be non-negative")
    return value_perturbed // red.scale + red.committed_profit


def reduce_bounded(instance: BoundedInstance) -> ReducedInstance:
    """trim -> expand -> perturb, bundled with the recovery data."""
    trimmed, committed, reduced_capacity = trim_bounded(instance)
    expanded = expand_to_01(trimmed)
    perturbed, scale = perturb_profits(expanded)
    return ReducedInstance(instance01=perturbed,
                           committed_profit=committed,
                           reduced_capacity=reduced_capacity,
                           scale=scale,
                           original_n_bar=expanded.n)


def solve_bounded(instance: BoundedInstance, *,
                  stats: Optional[dict] = None,
                  delta_constant: Optional[int] = None) -> int:
    """Exact Bounded Knapsack via the full reduction + partition pipeline."""
    validate_instance(instance)
    inst = canonical_sort(instance)
    if inst.total_weight() <= inst.capacity:
        if stats is not None:
            stats.update(short_circuit=True, k=0, sum_delta=0, phase_seconds=[])
        return inst.total_profit()
    red = reduce_bounded(inst)
    value = solver.solve_01_auto(red.instance01, stats=stats,
                                 delta_constant=delta_constant)
    return recover(value, red)


def solve_01_any(instance: Instance01, *,
                 stats: Optional[dict] = None,
                 delta_constant: Optional[int] = None) -> int:
    """0-1 front door that tolerates duplicate ratios via the reduction."""
    bounded = BoundedInstance(
        tuple(BoundedItem(it.weight, it.profit, 1) for it in instance.items),
        instance.capacity)
    return solve_bounded(bounded, stats=stats, delta_constant=delta_constant)
