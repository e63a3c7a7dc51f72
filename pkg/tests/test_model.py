"""Instance validation, exact ratio sorting, and prefix solutions."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from proxknap.model import (NEG_INF, Item01, ValidationError,
                            canonical_sort, ext_add, is_canonically_sorted,
                            make_bounded_instance, make_instance_01,
                            maximal_prefix_01, maximal_prefix_bounded,
                            ratio_cmp)


def test_sort_by_cross_multiplication():
    inst = canonical_sort(make_instance_01([(3, 4), (2, 3)], 10))
    # 3*3 = 9 > 4*2 = 8, so (2,3) has the strictly better ratio
    assert inst.items == (Item01(2, 3), Item01(3, 4))


def test_sort_equal_ratio_keeps_input_order():
    inst = canonical_sort(make_instance_01([(1, 2), (2, 4)], 10))
    assert inst.items == (Item01(1, 2), Item01(2, 4))


def test_sort_matches_exact_rational_oracle():
    rng = random.Random(101)
    for _ in range(30):
        items = [(rng.randint(1, 50), rng.randint(1, 90)) for _ in range(100)]
        got = canonical_sort(make_instance_01(items, 5)).items
        oracle = sorted(
            range(len(items)),
            key=lambda i: (-Fraction(items[i][1], items[i][0]), i))
        want = tuple(Item01(*items[i]) for i in oracle)
        assert got == want


def test_validation_rejects_nonpositive_fields():
    with pytest.raises(ValidationError):
        make_instance_01([(0, 3)], 5)
    with pytest.raises(ValidationError):
        make_instance_01([(2, 0)], 5)
    with pytest.raises(ValidationError):
        make_bounded_instance([(2, 3, 0)], 5)
    with pytest.raises(ValidationError):
        make_instance_01([(2, 3)], -1)


def test_empty_and_zero_capacity_are_legal():
    assert canonical_sort(make_instance_01([], 0)).n == 0
    g = maximal_prefix_01(make_instance_01([(2, 3)], 0))
    assert g.cut == 1 and g.total_weight == 0 and g.total_profit == 0


def test_prefix_01_examples():
    inst = canonical_sort(make_instance_01([(2, 9), (3, 9), (4, 9)], 6))
    g = maximal_prefix_01(inst)
    assert g.cut == 3
    assert g.total_weight == 5
    assert g.total_profit == 18

    inst = canonical_sort(make_instance_01([(2, 9), (3, 9)], 10))
    g = maximal_prefix_01(inst)
    assert g.cut == 3  # everything fits: t = n + 1
    assert g.total_weight == 5


def test_prefix_01_random_maximality():
    rng = random.Random(77)
    for _ in range(200):
        n = rng.randint(1, 40)
        items = [(rng.randint(1, 20), rng.randint(1, 30)) for _ in range(n)]
        inst = canonical_sort(make_instance_01(items, rng.randint(0, 200)))
        g = maximal_prefix_01(inst)
        # feasible, and re-scan confirms both the prefix sum and maximality
        assert g.total_weight <= inst.capacity
        acc = 0
        for k, it in enumerate(inst.items):
            if acc + it.weight > inst.capacity:
                assert g.cut == k + 1
                break
            acc += it.weight
        else:
            assert g.cut == inst.n + 1
        assert acc == g.total_weight
        if g.cut <= inst.n:
            assert g.total_weight + inst.items[g.cut - 1].weight > inst.capacity


def test_prefix_bounded_examples():
    inst = make_bounded_instance([(2, 3, 5)], 9)
    g = maximal_prefix_bounded(inst)
    assert g.cut == 1 and g.bounded_partial == 4
    assert g.total_weight == 8 and g.total_profit == 12

    inst = canonical_sort(make_bounded_instance([(2, 9, 1), (3, 9, 1)], 10))
    g = maximal_prefix_bounded(inst)
    assert g.cut == 3 and g.bounded_partial == 0 and g.total_weight == 5


def test_prefix_bounded_random_maximality():
    rng = random.Random(78)
    for _ in range(200):
        n = rng.randint(1, 25)
        items = [(rng.randint(1, 15), rng.randint(1, 30), rng.randint(1, 9))
                 for _ in range(n)]
        inst = canonical_sort(make_bounded_instance(items, rng.randint(0, 400)))
        g = maximal_prefix_bounded(inst)
        assert g.total_weight <= inst.capacity
        if g.cut <= inst.n:
            cut_w = inst.items[g.cut - 1].weight
            assert g.total_weight + cut_w > inst.capacity
            prior = sum(it.weight * it.multiplicity
                        for it in inst.items[: g.cut - 1])
            assert g.bounded_partial == (inst.capacity - prior) // cut_w


def test_prefix_weight_window():
    # w^T g lands in (W - w_max, W] unless everything fits
    rng = random.Random(79)
    for _ in range(150):
        n = rng.randint(1, 30)
        items = [(rng.randint(1, 12), rng.randint(1, 20)) for _ in range(n)]
        inst = canonical_sort(make_instance_01(items, rng.randint(0, 150)))
        g = maximal_prefix_01(inst)
        total = sum(it.weight for it in inst.items)
        if g.cut == inst.n + 1:
            assert g.total_weight == total <= inst.capacity
        else:
            assert inst.capacity - inst.w_max() < g.total_weight <= inst.capacity


def test_ratio_cmp_is_exact():
    assert ratio_cmp(3, 2, 4, 3) == 1
    assert ratio_cmp(4, 3, 3, 2) == -1
    assert ratio_cmp(2, 1, 4, 2) == 0
    big = 10 ** 25
    assert ratio_cmp(big + 1, big, 1, 1) == 1


@given(st.lists(st.one_of(st.integers(-10**20, 10**20), st.just(NEG_INF)),
                min_size=3, max_size=3))
def test_ext_add_associative_and_absorbing(vals):
    a, b, c = vals
    assert ext_add(ext_add(a, b), c) == ext_add(a, ext_add(b, c))
    assert ext_add(NEG_INF, a) == NEG_INF
    assert ext_add(a, NEG_INF) == NEG_INF


def test_sorted_invariant_cross_multiplication():
    rng = random.Random(80)
    for _ in range(50):
        items = [(rng.randint(1, 30), rng.randint(1, 50)) for _ in range(60)]
        inst = canonical_sort(make_instance_01(items, 1))
        assert is_canonically_sorted(inst)
        for i in range(inst.n - 1):
            a, b = inst.items[i], inst.items[i + 1]
            assert a.profit * b.weight >= b.profit * a.weight
