"""0-1 solver over a proximity partition: equal-weight greedy plus combine.

Per part (processed in ascending delta order), items are split by prefix
membership and by weight.  Each equal-weight bucket is solved exactly for
every budget up to the part's delta by a greedy prefix sum, giving a concave
sequence; the additions fold into z+ and the removals (with negated profits)
into z-, each by a concave (max,+)-convolution, truncating to the running
delta sum.  The answer combines z+ and z- against the leftover capacity of
the prefix solution.

Truncation follows the running delta sum literally; ``weight_cap`` tightens
it further (the automatic driver passes (2*w_max - 1) * w_max, valid because
the classic proximity bound limits the total deviation weight of the same
distance-minimizing optimal solution that the per-part bounds hold for).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import maxplus
from . import _kernels
from .maxplus import ConcaveSeq, NEG_INF, prefix_max
from .model import (Instance01, has_strictly_decreasing_ratios,
                    maximal_prefix_01)
from .proximity import DELTA_CONSTANT, Part, cap_delta, partition


@dataclass(frozen=True)
class WeightGroup:
    """Equal-weight items of one part and one side, profits non-increasing.

    For the removal side the profits are already negated (so "non-increasing
    negated profit" means the least profitable picked items come first).
    """

    weight: int
    profits: tuple
    side: str  # "picked" or "unpicked"


def equal_weights(group: WeightGroup, budget: int) -> ConcaveSeq:
    """Optimal profit for every exact weight 0, w, 2w, ... up to the budget.

    With equal weights the greedy prefix is optimal, so entry i*w is the sum
    of the i largest profits, for i up to min(count, budget // w).
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    profits = group.profits
    for k in range(len(profits) - 1):
        if profits[k] < profits[k + 1]:
            raise ValueError("equal_weights needs profits sorted non-increasing")
    steps = [0]
    acc = 0
    for p in profits[: budget // group.weight]:
        acc += p
        steps.append(acc)
    return ConcaveSeq(values=tuple(steps), offset=group.weight,
                      length=budget + 1)


def solve_01(instance: Instance01, parts: List[Part], *,
             weight_cap: Optional[int] = None,
             debug_checks: bool = False,
             stats: Optional[dict] = None) -> int:
    """Optimal value given a valid partition with ascending proximity bounds."""
    n = instance.n
    if n == 0:
        return 0
    if not has_strictly_decreasing_ratios(instance):
        raise ValueError("solve_01 requires strictly decreasing ratios; "
                         "perturb profits first")
    for a, b in zip(parts, parts[1:]):
        if a.delta > b.delta:
            raise ValueError("parts must be sorted by ascending delta")
    covered = sorted(i for p in parts for i in p.indices)
    if covered != list(range(n)):
        raise ValueError("parts must partition the item indices exactly")

    weights = instance.weights()
    profits = instance.profits()
    g = maximal_prefix_01(instance)
    pc = g.picked_count

    # Array-resident int64 mode whenever the whole profit mass provably
    # fits; otherwise plain lists of exact Python integers.
    use_arr = sum(profits) + 1 <= _kernels.KERNEL_VALUE_CAP
    if use_arr:
        zp = np.zeros(1, dtype=np.int64)
        zm = np.zeros(1, dtype=np.int64)
    else:
        zp = [0]
        zm = [0]

    processed_plus: List[int] = []
    processed_minus: List[int] = []
    phase_seconds: List[float] = []
    dsum = 0
    for part in parts:
        t0 = time.perf_counter()
        dsum += part.delta
        bound = dsum if weight_cap is None else min(dsum, weight_cap)
        limit = bound + 1

        buckets: Dict[int, Tuple[list, list]] = {}
        for i in part.indices:
            side = buckets.setdefault(weights[i], ([], []))
            side[0 if i >= pc else 1].append(profits[i])

        for w in sorted(buckets):
            plus_profits, minus_profits = buckets[w]
            if plus_profits:
                y = equal_weights(
                    WeightGroup(w, tuple(plus_profits), "unpicked"), part.delta)
                zp = _fold(zp, y, limit, use_arr)
            if minus_profits:
                negated = tuple(-p for p in reversed(minus_profits))
                y = equal_weights(WeightGroup(w, negated, "picked"), part.delta)
                zm = _fold(zm, y, limit, use_arr)

        zp = _pad_to(zp, limit, use_arr)
        zm = _pad_to(zm, limit, use_arr)
        phase_seconds.append(time.perf_counter() - t0)

        if debug_checks and n <= 24:
            processed_plus.extend(i for i in part.indices if i >= pc)
            processed_minus.extend(i for i in part.indices if i < pc)
            _check_realizable(_as_list(zp, use_arr), processed_plus,
                              weights, profits, upper=True)
            _check_realizable(_as_list(zm, use_arr), processed_minus,
                              weights, profits, upper=False)

    slack = instance.capacity - g.total_weight
    best = _combine(_as_list(zp, use_arr), _as_list(zm, use_arr), slack)
    if best < 0:
        raise AssertionError("combination lost the prefix solution itself")
    if stats is not None:
        stats["k"] = len(parts)
        stats["sum_delta"] = dsum
        stats["weight_cap"] = weight_cap
        stats["phase_seconds"] = phase_seconds
        stats["int64_mode"] = use_arr
    return g.total_profit + best


def solve_01_auto(instance: Instance01, *,
                  debug_checks: bool = False,
                  delta_constant: Optional[int] = None,
                  stats: Optional[dict] = None) -> int:
    """Full pipeline: prefix, partition, capped deltas, combine.

    Short-circuits when everything fits.  Requires strictly decreasing
    profit-to-weight ratios (route through the reduction otherwise).
    """
    n = instance.n
    if n == 0:
        return 0
    total_w = sum(it.weight for it in instance.items)
    if total_w <= instance.capacity:
        if stats is not None:
            stats.update(k=0, sum_delta=0, phase_seconds=[], short_circuit=True)
        return sum(it.profit for it in instance.items)
    if not has_strictly_decreasing_ratios(instance):
        raise ValueError("solve_01_auto requires strictly decreasing ratios; "
                         "perturb profits first")
    g = maximal_prefix_01(instance)
    constant = DELTA_CONSTANT if delta_constant is None else delta_constant
    parts = partition(instance, g, delta_constant=constant)
    weights = instance.weights()
    w_max = instance.w_max()
    parts = [cap_delta(p, instance, _weights=weights, _w_max=w_max)
             for p in parts]
    parts.sort(key=lambda p: p.delta)
    cap = (2 * w_max - 1) * w_max
    return solve_01(instance, parts, weight_cap=cap,
                    debug_checks=debug_checks, stats=stats)


def _fold(z, y: ConcaveSeq, limit: int, use_arr: bool):
    if use_arr:
        out_len = min(limit, int(z.shape[0]) + y.length - 1)
        return maxplus.conv_concave_arr(z, y, out_len)
    return maxplus.conv_concave(z, y, limit=limit)


def _pad_to(z, limit: int, use_arr: bool):
    if use_arr:
        n = int(z.shape[0])
        if n < limit:
            pad = np.full(limit - n, maxplus._I64_SENTINEL, dtype=np.int64)
            return np.concatenate([z, pad])
        return z[:limit]
    if len(z) < limit:
        z.extend([NEG_INF] * (limit - len(z)))
        return z
    return z[:limit]


def _as_list(z, use_arr: bool) -> list:
    return maxplus.decode_i64(z) if use_arr else z


def _combine(zp: list, zm: list, slack: int) -> int:
    """max over removals b of the best addition within b + slack, exactly."""
    sp = prefix_max(zp)
    top = len(zp) - 1
    best = None
    for b, v in enumerate(zm):
        if v == NEG_INF:
            continue
        a = b + slack
        if a > top:
            a = top
        s = sp[a]
        if s == NEG_INF:
            continue
        total = s + v
        if best is None or total > best:
            best = total
    return best if best is not None else -1


def _check_realizable(z: list, processed: List[int], weights, profits,
                      upper: bool) -> None:
    """Claim-style debug check: finite entries are bounded by exact subsets.

    For the addition side, z+[W'] can never exceed the best profit of an
    exact-weight-W' subset of the items folded so far; for the removal side,
    z-[W'] never exceeds minus the cheapest such subset.
    """
    horizon = len(z) - 1
    table: Dict[int, int] = {0: 0}
    for i in processed:
        w, p = weights[i], profits[i]
        for wt, val in list(table.items()):
            nw = wt + w
            if nw > horizon:
                continue
            cand = val + p
            cur = table.get(nw)
            if cur is None or (cand > cur if upper else cand < cur):
                table[nw] = cand
    for wt, val in enumerate(z):
        if val == NEG_INF:
            continue
        if wt not in table:
            raise AssertionError(f"z[{wt}] finite but weight {wt} unreachable")
        bound = table[wt] if upper else -table[wt]
        if val > bound:
            side = "z+" if upper else "z-"
            raise AssertionError(f"{side}[{wt}] = {val} exceeds bound {bound}")
