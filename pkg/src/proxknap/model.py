"""Knapsack instances, exact ratio ordering, and maximal prefix solutions.

All weights and profits are plain Python integers, so arithmetic is exact and
unbounded (after profit perturbation, values routinely exceed 64 bits).  The
single non-integer value is ``NEG_INF`` (the float ``-inf``), which marks
unreachable entries of profit sequences: it is absorbing under addition and
smaller than every integer under comparison.

Item indices are 0-based everywhere in this package.  The prefix cut ``t`` in
:class:`PrefixSolution` is 1-based (``t = n + 1`` means "every item picked"),
matching the usual statement of the greedy prefix rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

NEG_INF = float("-inf")

ExtProfit = Union[int, float]  # int, or the NEG_INF sentinel


def is_finite(value: ExtProfit) -> bool:
    return value != NEG_INF


def ext_add(a: ExtProfit, b: ExtProfit) -> ExtProfit:
    """Exact addition with an absorbing NEG_INF."""
    if a == NEG_INF or b == NEG_INF:
        return NEG_INF
    return a + b


class ValidationError(ValueError):
    """An instance violates a structural precondition (non-positive field, ...)."""


@dataclass(frozen=True)
class Item01:
    weight: int
    profit: int


@dataclass(frozen=True)
class BoundedItem:
    weight: int
    profit: int
    multiplicity: int


@dataclass(frozen=True)
class Instance01:
    """0-1 instance; immutable and safe to share across threads."""

    items: tuple
    capacity: int

    @property
    def n(self) -> int:
        return len(self.items)

    def weights(self) -> list:
        return [it.weight for it in self.items]

    def profits(self) -> list:
        return [it.profit for it in self.items]

    def w_max(self) -> int:
        return max((it.weight for it in self.items), default=0)


@dataclass(frozen=True)
class BoundedInstance:
    items: tuple
    capacity: int

    @property
    def n(self) -> int:
        return len(self.items)

    def w_max(self) -> int:
        return max((it.weight for it in self.items), default=0)

    def total_weight(self) -> int:
        return sum(it.weight * it.multiplicity for it in self.items)

    def total_profit(self) -> int:
        return sum(it.profit * it.multiplicity for it in self.items)


@dataclass(frozen=True)
class PrefixSolution:
    """The maximal feasible prefix g of a ratio-sorted instance.

    ``cut`` is the 1-based index t: items 1..t-1 are fully picked.  In the
    bounded case ``bounded_partial`` holds the partial count g_t of item t
    (0 in the 0-1 case and when t = n + 1).
    """

    cut: int
    bounded_partial: int
    total_weight: int
    total_profit: int

    @property
    def picked_count(self) -> int:
        """Number of fully picked items, i.e. t - 1 (0-based prefix length)."""
        return self.cut - 1


def make_instance_01(items: Iterable, capacity: int) -> Instance01:
    """Build and validate from Item01 objects or (weight, profit) pairs."""
    converted = tuple(it if isinstance(it, Item01) else Item01(*it) for it in items)
    inst = Instance01(converted, capacity)
    validate_instance(inst)
    return inst


def make_bounded_instance(items: Iterable, capacity: int) -> BoundedInstance:
    """Build and validate from BoundedItem objects or (w, p, u) triples."""
    converted = tuple(it if isinstance(it, BoundedItem) else BoundedItem(*it)
                      for it in items)
    inst = BoundedInstance(converted, capacity)
    validate_instance(inst)
    return inst


def validate_instance(instance) -> None:
    if instance.capacity < 0:
        raise ValidationError(f"capacity must be >= 0, got {instance.capacity}")
    for k, it in enumerate(instance.items):
        if it.weight < 1:
            raise ValidationError(f"item {k}: weight must be >= 1, got {it.weight}")
        if it.profit < 1:
            raise ValidationError(f"item {k}: profit must be >= 1, got {it.profit}")
        if isinstance(it, BoundedItem) and it.multiplicity < 1:
            raise ValidationError(
                f"item {k}: multiplicity must be >= 1, got {it.multiplicity}")


def canonical_sort(instance):
    """Stable sort by non-increasing profit-to-weight ratio, exactly.

    Two items with p1/w1 != p2/w2 differ by at least 1/(w1*w2) >= 1/w_max^2,
    so the integer key floor(p * 2*w_max^2 / w) separates distinct ratios by
    more than 1 and collides exactly on equal ratios.  Sorting descending by
    this key is therefore identical to an exact rational sort; Python's sort
    stability gives the ascending-input-index tie rule for free.
    """
    validate_instance(instance)
    n = instance.n
    if n <= 1:
        return instance
    w_max = instance.w_max()
    scale = 2 * w_max * w_max
    ordered = sorted(instance.items,
                     key=lambda it: (it.profit * scale) // it.weight,
                     reverse=True)
    return type(instance)(tuple(ordered), instance.capacity)


def ratio_cmp(p1: int, w1: int, p2: int, w2: int) -> int:
    """Sign of p1/w1 - p2/w2 via cross-multiplication (never division)."""
    lhs = p1 * w2
    rhs = p2 * w1
    return (lhs > rhs) - (lhs < rhs)


def is_canonically_sorted(instance) -> bool:
    items = instance.items
    return all(ratio_cmp(items[i].profit, items[i].weight,
                         items[i + 1].profit, items[i + 1].weight) >= 0
               for i in range(len(items) - 1))


def has_strictly_decreasing_ratios(instance) -> bool:
    """Adjacent strict check; sufficient under sortedness by transitivity."""
    items = instance.items
    return all(ratio_cmp(items[i].profit, items[i].weight,
                         items[i + 1].profit, items[i + 1].weight) > 0
               for i in range(len(items) - 1))


def maximal_prefix_01(instance: Instance01) -> PrefixSolution:
    """Largest t with w_1 + ... + w_{t-1} <= W; g picks items 1..t-1."""
    if not is_canonically_sorted(instance):
        raise ValidationError("maximal_prefix_01 requires a canonically sorted instance")
    weight = 0
    profit = 0
    cut = instance.n + 1
    for k, it in enumerate(instance.items):
        if weight + it.weight > instance.capacity:
            cut = k + 1
            break
        weight += it.weight
        profit += it.profit
    return PrefixSolution(cut=cut, bounded_partial=0,
                          total_weight=weight, total_profit=profit)


def maximal_prefix_bounded(instance: BoundedInstance) -> PrefixSolution:
    """Bounded prefix: full multiplicities before the cut, floor-divided at it."""
    if not is_canonically_sorted(instance):
        raise ValidationError("maximal_prefix_bounded requires a canonically sorted instance")
    weight = 0
    profit = 0
    cut = instance.n + 1
    partial = 0
    for k, it in enumerate(instance.items):
        block = it.weight * it.multiplicity
        if weight + block > instance.capacity:
            cut = k + 1
            partial = (instance.capacity - weight) // it.weight
            weight += partial * it.weight
            profit += partial * it.profit
            break
        weight += block
        profit += it.profit * it.multiplicity
    return PrefixSolution(cut=cut, bounded_partial=partial,
                          total_weight=weight, total_profit=profit)
