"""Correct-by-construction baselines for differential testing and verify mode.

These are deliberately simple: a table-filling dynamic program over weights
0..W for both problem variants (multiplicities handled by binary splitting)
and an exhaustive subset scan.  None of them is fast; each refuses instances
beyond an explicit cell budget rather than silently thrashing.

The dynamic program runs vectorized on int64 when the instance's total
profit provably fits, and on plain Python integers otherwise, so perturbed
(>64 bit) profits are still handled exactly.
"""

from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .model import BoundedInstance, Instance01

DEFAULT_CELL_BUDGET = 400_000_000
_BRUTE_FORCE_MAX_N = 24
_I64_SAFE = 1 << 59


class OracleBudgetError(RuntimeError):
    """The instance exceeds the oracle's configured size budget."""


def _bellman_core(pairs: List[Tuple[int, int]], capacity: int,
                  budget: int) -> int:
    cells = len(pairs) * (capacity + 1)
    if cells > budget:
        raise OracleBudgetError(
            f"Bellman table of {cells} cells exceeds budget {budget}; "
            f"refusing (n={len(pairs)}, W={capacity})")
    total_profit = sum(p for _, p in pairs)
    if total_profit <= _I64_SAFE:
        dp = np.zeros(capacity + 1, dtype=np.int64)
        for w, p in pairs:
            if w <= capacity:
                np.maximum(dp[w:], dp[:-w] + p, out=dp[w:])
        return int(dp[capacity])
    dp = [0] * (capacity + 1)
    for w, p in pairs:
        for c in range(capacity, w - 1, -1):
            cand = dp[c - w] + p
            if cand > dp[c]:
                dp[c] = cand
    return dp[capacity]


def bellman_01(instance: Instance01, *, budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Classic O(nW) dynamic program; exact optimum."""
    pairs = [(it.weight, it.profit) for it in instance.items]
    if not pairs or instance.capacity == 0:
        return 0
    return _bellman_core(pairs, instance.capacity, budget)


def bellman_bounded(instance: BoundedInstance, *,
                    budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Bounded variant via binary splitting of each multiplicity."""
    pairs: List[Tuple[int, int]] = []
    for it in instance.items:
        left = it.multiplicity
        take = 1
        while left > 0:
            k = min(take, left)
            pairs.append((it.weight * k, it.profit * k))
            left -= k
            take *= 2
    if not pairs or instance.capacity == 0:
        return 0
    return _bellman_core(pairs, instance.capacity, budget)


def brute_force_01(instance: Instance01) -> int:
    """Exhaustive 2^n subset scan; refuses n > 24."""
    n = instance.n
    if n > _BRUTE_FORCE_MAX_N:
        raise OracleBudgetError(f"brute force refuses n={n} > {_BRUTE_FORCE_MAX_N}")
    if n == 0:
        return 0
    weights = instance.weights()
    profits = instance.profits()
    if sum(profits) <= _I64_SAFE and sum(weights) <= _I64_SAFE:
        return _brute_force_numpy(weights, profits, instance.capacity)
    return _brute_force_dfs(weights, profits, instance.capacity)


def _brute_force_numpy(weights, profits, capacity) -> int:
    n = len(weights)
    w = np.asarray(weights, dtype=np.int64)
    p = np.asarray(profits, dtype=np.int64)
    shifts = np.arange(n, dtype=np.uint64)
    best = 0
    chunk = 1 << 20
    for lo in range(0, 1 << n, chunk):
        masks = np.arange(lo, min(lo + chunk, 1 << n), dtype=np.uint64)
        bits = ((masks[:, None] >> shifts) & 1).astype(np.int64)
        tot_w = bits @ w
        feasible = tot_w <= capacity
        if feasible.any():
            best = max(best, int((bits @ p)[feasible].max()))
    return best


def _brute_force_dfs(weights, profits, capacity) -> int:
    n = len(weights)

    def go(k: int, room: int) -> int:
        if k == n:
            return 0
        skip = go(k + 1, room)
        if weights[k] <= room:
            take = profits[k] + go(k + 1, room - weights[k])
            if take > skip:
                return take
        return skip

    return go(0, capacity)
