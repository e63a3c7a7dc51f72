"""Item partitioning with per-part proximity bounds.

One step selects the weight class of (dyadically) largest multiplicity among
the live items, splits it into the picked and unpicked side of the prefix
solution, keeps the better-ratio half of the picked side and the worse-ratio
half of the unpicked side, and returns the larger of the two together with a
distance bound

    delta = ceil(36000000 * log2(2n)^3 * m * w_max^2 / |I|).

Repeating until no item is live yields a partition whose part count is
bounded through a strictly decreasing integer potential.

All bound arithmetic is exact: log2(2n) is rational only when 2n is a power
of two (handled in integers); otherwise it is transcendental, so the ceiling
is never on a boundary and an adaptive-precision Decimal evaluation settles
it.  No floats are involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .model import Instance01, PrefixSolution, has_strictly_decreasing_ratios

DELTA_CONSTANT = 36_000_000
PRODUCT_BOUND_CONSTANT = 300_000_000


@dataclass(frozen=True)
class Part:
    """An index set with its proximity bound and distinct-weight support."""

    indices: tuple
    delta: int
    support: int


@dataclass(frozen=True)
class SingleStepState:
    """Intermediate sets of one selection step (0-based indices)."""

    m: int
    weight_class: frozenset
    j_all: tuple
    j_minus: tuple
    j_plus: tuple
    i_minus: tuple
    i_plus: tuple
    chosen: tuple


def ceil_log2(x: int) -> int:
    """Smallest c with 2^c >= x (x >= 1)."""
    if x < 1:
        raise ValueError("ceil_log2 needs x >= 1")
    return (x - 1).bit_length()


def ceil_log43(x: int) -> int:
    """Smallest c >= 0 with (4/3)^c >= x, in exact integers."""
    if x < 1:
        raise ValueError("ceil_log43 needs x >= 1")
    c = 0
    four = 1
    three = 1
    while four < x * three:
        c += 1
        four *= 4
        three *= 3
    return c


def _log2_cubed_times(factor: int, n: int, prec: int) -> Decimal:
    """factor * log2(2n)^3 at the given Decimal precision."""
    with localcontext() as ctx:
        ctx.prec = prec
        two_n = Decimal(2 * n)
        log2 = two_n.ln() / Decimal(2).ln()
        return Decimal(factor) * log2 * log2 * log2


def delta_bound(n: int, m: int, w_max: int, i_size: int,
                constant: int = DELTA_CONSTANT) -> int:
    """ceil(constant * log2(2n)^3 * m * w_max^2 / i_size), exactly."""
    if min(n, m, w_max, i_size) < 1:
        raise ValueError("delta_bound needs positive arguments")
    two_n = 2 * n
    if two_n & (two_n - 1) == 0:
        k = two_n.bit_length() - 1
        num = constant * k ** 3 * m * w_max * w_max
        return -(-num // i_size)
    # log2(2n) is transcendental here, so the value is never an integer and
    # a sufficiently precise evaluation determines the ceiling.
    factor = constant * m * w_max * w_max
    prec = 45
    while True:
        v = _log2_cubed_times(factor, n, prec) / Decimal(i_size)
        floor = v.to_integral_value(rounding="ROUND_FLOOR")
        frac = v - floor
        margin = Decimal(10) ** (v.adjusted() + 25 - prec)
        if frac > margin and (1 - frac) > margin:
            return int(floor) + 1
        prec *= 2
        if prec > 20000:  # pragma: no cover - transcendence makes this unreachable
            raise ArithmeticError("delta_bound failed to converge")


def product_bound_holds(support: int, delta: int, n: int, w_max: int,
                        constant: int = PRODUCT_BOUND_CONSTANT) -> bool:
    """support * delta <= constant * log2(2n)^3 * w_max^2, decided exactly.

    Compares against a certified lower estimate of the right-hand side; the
    mathematical slack of the bound (a factor of at least 24/25) dwarfs the
    evaluation error, so one fixed precision suffices.
    """
    two_n = 2 * n
    lhs = support * delta
    if two_n & (two_n - 1) == 0:
        k = two_n.bit_length() - 1
        return lhs <= constant * k ** 3 * w_max * w_max
    prec = 60
    v = _log2_cubed_times(constant * w_max * w_max, n, prec)
    low = v - Decimal(10) ** (v.adjusted() + 25 - prec)
    return Decimal(lhs) <= low


def potential(live: Sequence[int], instance: Instance01) -> int:
    """phi(U) = log2(m_U) * 2*ceil_log43(n) + ceil_log43(|J_U|), exactly."""
    if not live:
        raise ValueError("potential needs a non-empty live set")
    weights = instance.weights()
    m, weight_class = _top_weight_class(live, weights)
    j_size = sum(1 for i in live if weights[i] in weight_class)
    n = instance.n
    return (m.bit_length() - 1) * 2 * ceil_log43(n) + ceil_log43(j_size)


def _top_weight_class(live: Iterable[int], weights: Sequence[int]):
    """Largest power of two m with some weight occurring in (m/2, m] times."""
    counts: Dict[int, int] = {}
    for i in live:
        w = weights[i]
        counts[w] = counts.get(w, 0) + 1
    best = max(counts.values())
    m = 1 << (best - 1).bit_length()  # smallest power of two >= best count
    half = m >> 1
    weight_class = frozenset(w for w, c in counts.items() if half < c <= m)
    return m, weight_class


def single_step(instance: Instance01, g: PrefixSolution,
                live: Sequence[int],
                delta_constant: int = DELTA_CONSTANT, *,
                _weights: Optional[Sequence[int]] = None,
                _w_max: Optional[int] = None) -> Tuple[Part, SingleStepState]:
    """One selection step over the live indices (ascending, 0-based)."""
    if not live:
        raise ValueError("single_step needs a non-empty live set")
    weights = instance.weights() if _weights is None else _weights
    w_max = instance.w_max() if _w_max is None else _w_max
    m, weight_class = _top_weight_class(live, weights)
    j_all = [i for i in live if weights[i] in weight_class]
    picked_count = g.picked_count
    j_minus = [i for i in j_all if i < picked_count]
    j_plus = [i for i in j_all if i >= picked_count]
    i_minus = j_minus[: (len(j_minus) + 1) // 2]
    i_plus = j_plus[len(j_plus) - (len(j_plus) + 1) // 2:]
    # The larger of the two halves; ties go to the unpicked side.
    chosen = i_plus if len(i_plus) >= len(i_minus) else i_minus
    delta = delta_bound(instance.n, m, w_max, len(chosen),
                        constant=delta_constant)
    support = len({weights[i] for i in chosen})
    part = Part(indices=tuple(chosen), delta=delta, support=support)
    state = SingleStepState(
        m=m, weight_class=weight_class,
        j_all=tuple(j_all), j_minus=tuple(j_minus), j_plus=tuple(j_plus),
        i_minus=tuple(i_minus), i_plus=tuple(i_plus), chosen=tuple(chosen))
    return part, state


def cap_delta(part: Part, instance: Instance01, *,
              _weights: Optional[Sequence[int]] = None,
              _w_max: Optional[int] = None) -> Part:
    """Clamp delta to the classic proximity bound and the part's own weight.

    All the clamps bound the deviation weight of the same
    distance-minimizing optimal solution, so their minimum is still a valid
    proximity bound: the step bound holds for an arbitrary optimal solution,
    the classic bound limits the deviation to at most 2*w_max - 1 item flips
    (each of weight at most the part's own heaviest weight, within the
    part), and the part cannot deviate by more than its total weight.
    """
    weights = instance.weights() if _weights is None else _weights
    w_max = instance.w_max() if _w_max is None else _w_max
    part_w_max = max(weights[i] for i in part.indices)
    classic = (2 * w_max - 1) * part_w_max
    own = sum(weights[i] for i in part.indices)
    return Part(indices=part.indices,
                delta=min(part.delta, classic, own),
                support=part.support)


def partition(instance: Instance01, g: PrefixSolution,
              delta_constant: int = DELTA_CONSTANT,
              check: bool = True) -> List[Part]:
    """Repeated single steps until every item is assigned to a part.

    Asserts, on every run: the parts are disjoint and cover all items, each
    step keeps at least a quarter of its weight class, the support-delta
    product bound holds (for the default constant), and the potential
    strictly decreases, which caps the part count.
    """
    n = instance.n
    if n < 1:
        raise ValueError("partition needs at least one item")
    if not has_strictly_decreasing_ratios(instance):
        raise ValueError("partition requires strictly decreasing profit-to-weight "
                         "ratios; perturb profits first")
    weights = instance.weights()
    w_max = instance.w_max()
    live = list(range(n))
    parts: List[Part] = []
    last_phi = None
    log43n = ceil_log43(n)
    while live:
        part, state = single_step(instance, g, live, delta_constant,
                                  _weights=weights, _w_max=w_max)
        parts.append(part)
        if check:
            if 4 * len(state.chosen) < len(state.j_all):
                raise AssertionError("selection kept less than |J|/4")
            if delta_constant == DELTA_CONSTANT and not product_bound_holds(
                    part.support, part.delta, n, w_max):
                raise AssertionError("support*delta exceeds the product bound")
            phi = (state.m.bit_length() - 1) * 2 * log43n + ceil_log43(len(state.j_all))
            if last_phi is not None and phi >= last_phi:
                raise AssertionError("potential failed to decrease strictly")
            last_phi = phi
        removed = set(part.indices)
        live = [i for i in live if i not in removed]
    if check:
        covered = sorted(i for p in parts for i in p.indices)
        if covered != list(range(n)):
            raise AssertionError("parts do not form a partition of the items")
        k_bound = 2 * ceil_log2(2 * n) * ceil_log43(n) + 1
        if len(parts) > max(k_bound, 1):
            raise AssertionError(
                f"part count {len(parts)} exceeds potential bound {k_bound}")
    return parts
