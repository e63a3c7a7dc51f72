"""The baselines must agree with each other before they judge the solver."""

import random

import pytest

from proxknap.model import (canonical_sort, make_bounded_instance,
                            make_instance_01)
from proxknap.oracles import (OracleBudgetError, bellman_01, bellman_bounded,
                              brute_force_01)
from proxknap.reduction import expand_to_01


def test_bellman_01_examples():
    assert bellman_01(make_instance_01([(2, 3), (3, 4)], 4)) == 4
    assert bellman_01(make_instance_01([(2, 3), (3, 4)], 0)) == 0
    assert bellman_01(make_instance_01([], 10)) == 0


def test_bellman_bounded_examples():
    assert bellman_bounded(make_bounded_instance([(2, 3, 5)], 9)) == 12
    inst01 = make_instance_01([(3, 5), (2, 4), (4, 1)], 6)
    instb = make_bounded_instance([(3, 5, 1), (2, 4, 1), (4, 1, 1)], 6)
    assert bellman_bounded(instb) == bellman_01(inst01)


def test_brute_force_examples():
    assert brute_force_01(make_instance_01([], 5)) == 0
    assert brute_force_01(make_instance_01([(2, 3), (3, 4)], 4)) == 4


def test_bellman_equals_brute_force_random():
    rng = random.Random(303)
    for _ in range(150):
        n = rng.randint(0, 16)
        items = [(rng.randint(1, 20), rng.randint(1, 40)) for _ in range(n)]
        inst = make_instance_01(items, rng.randint(0, 120))
        assert bellman_01(inst) == brute_force_01(inst)


def test_bounded_equals_full_expansion():
    rng = random.Random(304)
    for _ in range(120):
        n = rng.randint(1, 8)
        items = [(rng.randint(1, 10), rng.randint(1, 30), rng.randint(1, 6))
                 for _ in range(n)]
        inst = canonical_sort(make_bounded_instance(items, rng.randint(0, 150)))
        expanded = expand_to_01(inst)
        assert bellman_bounded(inst) == bellman_01(expanded)


def test_monotone_in_capacity():
    rng = random.Random(305)
    for _ in range(40):
        items = [(rng.randint(1, 12), rng.randint(1, 25), rng.randint(1, 5))
                 for _ in range(rng.randint(1, 10))]
        inst_small = make_bounded_instance(items, 30)
        inst_big = make_bounded_instance(items, 60)
        assert bellman_bounded(inst_small) <= bellman_bounded(inst_big)


def test_budget_refusals():
    with pytest.raises(OracleBudgetError):
        bellman_01(make_instance_01([(1, 1)] * 100, 10 ** 9), budget=10 ** 6)
    with pytest.raises(OracleBudgetError):
        brute_force_01(make_instance_01([(1, 1)] * 25, 5))


def test_bellman_handles_perturbed_scale_profits():
    # beyond the int64 fast path: profits around 2^70
    big = 1 << 70
    inst = make_instance_01([(2, big + 3), (3, big + 4)], 4)
    assert bellman_01(inst) == big + 4
