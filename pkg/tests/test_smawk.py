"""SMAWK row maxima against the exhaustive oracle, plus the eval budget."""

import random

from proxknap.model import NEG_INF
from proxknap.smawk import (CallCounter, ImplicitMatrix, row_maxima,
                            row_maxima_bruteforce)

# Documented eval budget: the REDUCE/INTERPOLATE recursion stays within
# EVAL_BUDGET_FACTOR * (rows + cols) evaluations (observed worst ~4.2).
EVAL_BUDGET_FACTOR = 8


def _concave_family(rng, rows, cols, dead_cols=0.0):
    """M[i, j] = a_j + c_{i-j} with c concave over the full offset range."""
    span = rows + cols - 1
    diffs = sorted((rng.randint(-25, 25) for _ in range(span - 1)), reverse=True)
    c = [rng.randint(-10, 10)]
    for d in diffs:
        c.append(c[-1] + d)
    shift = cols - 1
    a = [NEG_INF if rng.random() < dead_cols else rng.randint(-50, 50)
         for _ in range(cols)]

    def ev(i, j):
        if a[j] == NEG_INF:
            return NEG_INF
        return a[j] + c[i - j + shift]

    return ev


def test_two_by_two_example():
    m = ImplicitMatrix(2, 2, lambda i, j: ((1, 2), (3, 5))[i][j])
    assert row_maxima(m) == [(1, 2), (1, 5)]


def test_constant_matrix_ties_go_left():
    m = ImplicitMatrix(3, 4, lambda i, j: 0)
    assert row_maxima(m) == [(0, 0)] * 3


def test_empty_matrices():
    assert row_maxima(ImplicitMatrix(0, 5, lambda i, j: 0)) == []
    assert row_maxima(ImplicitMatrix(5, 0, lambda i, j: 0)) == []


def test_all_neg_inf_rows_report_column_zero():
    m = ImplicitMatrix(2, 3, lambda i, j: NEG_INF)
    assert row_maxima(m) == [(0, NEG_INF), (0, NEG_INF)]


def _is_inverse_monge(m: ImplicitMatrix) -> bool:
    from proxknap.model import ext_add
    for i in range(m.rows - 1):
        for j in range(m.cols - 1):
            lhs = ext_add(m.eval(i, j), m.eval(i + 1, j + 1))
            rhs = ext_add(m.eval(i + 1, j), m.eval(i, j + 1))
            if not (lhs >= rhs or (lhs == NEG_INF and rhs == NEG_INF)):
                return False
    return True


def test_matches_bruteforce_on_random_family():
    rng = random.Random(4242)
    for trial in range(200):
        rows = rng.randint(1, 40)
        cols = rng.randint(1, 40)
        ev = _concave_family(rng, rows, cols,
                             dead_cols=rng.choice((0.0, 0.15)))
        m = ImplicitMatrix(rows, cols, ev)
        if trial < 25:  # the family really is inverse-Monge
            assert _is_inverse_monge(m)
        assert row_maxima(m) == row_maxima_bruteforce(m)


def test_argmax_columns_monotone():
    rng = random.Random(4343)
    for trial in range(100):
        rows = rng.randint(1, 40)
        cols = rng.randint(1, 40)
        m = ImplicitMatrix(rows, cols, _concave_family(rng, rows, cols))
        result = row_maxima(m)
        finite_cols = [c for c, v in result if v != NEG_INF]
        assert all(a <= b for a, b in zip(finite_cols, finite_cols[1:]))


def test_eval_budget_linear():
    rng = random.Random(4444)
    for trial in range(80):
        rows = rng.randint(1, 120)
        cols = rng.randint(1, 120)
        counted = CallCounter(_concave_family(rng, rows, cols))
        row_maxima(ImplicitMatrix(rows, cols, counted))
        assert counted.count <= EVAL_BUDGET_FACTOR * (rows + cols), (
            f"{counted.count} evals for {rows}x{cols}")


def test_bruteforce_self_consistency():
    m = ImplicitMatrix(2, 2, lambda i, j: ((1, 2), (3, 5))[i][j])
    assert row_maxima_bruteforce(m) == [(1, 2), (1, 5)]
    z = ImplicitMatrix(3, 4, lambda i, j: 0)
    assert row_maxima_bruteforce(z) == [(0, 0)] * 3
