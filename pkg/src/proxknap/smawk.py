"""Row maxima of implicitly defined inverse-Monge matrices in linear time.

The matrix is given as an evaluation function, never materialized.  For an
inverse-Monge matrix (eval(i,j) + eval(i+1,j+1) >= eval(i+1,j) + eval(i,j+1))
the leftmost row maxima have non-decreasing column indices, which the classic
REDUCE / INTERPOLATE recursion exploits to find all of them with O(rows+cols)
evaluations.

Conventions:
  * ties are broken toward the smallest column index;
  * a row whose maximum is NEG_INF is reported as ``(0, NEG_INF)``;
  * entries may be NEG_INF, but matrices whose -inf pattern is not banded
    (finite entries of each column contiguous, bands shifting rightward) can
    make -inf ties violate total monotonicity.  Callers that need -inf
    padding on arbitrary shapes should substitute steep finite surrogates,
    as maxplus.conv_concave does.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Tuple

from .model import NEG_INF, ExtProfit


@dataclass(frozen=True)
class ImplicitMatrix:
    """An implicit matrix: ``eval(row, col)`` must be pure."""

    rows: int
    cols: int
    eval: Callable[[int, int], ExtProfit]


class CallCounter:
    """Wraps an eval function and counts invocations (for budget tests)."""

    __slots__ = ("count", "_fn")

    def __init__(self, fn: Callable[[int, int], ExtProfit]):
        self.count = 0
        self._fn = fn

    def __call__(self, i: int, j: int) -> ExtProfit:
        self.count += 1
        return self._fn(i, j)


def row_maxima(m: ImplicitMatrix) -> List[Tuple[int, ExtProfit]]:
    """Smallest argmax column and value for every row, via SMAWK.

    Returns one ``(col, value)`` pair per row; empty list when the matrix has
    no rows or no columns.  All-NEG_INF rows report column 0 by convention.
    """
    if m.rows == 0 or m.cols == 0:
        return []
    out: list = [None] * m.rows
    _smawk(m.eval, 0, 1, m.rows, list(range(m.cols)), out)
    for i in range(m.rows):
        if out[i][1] == NEG_INF:
            out[i] = (0, NEG_INF)
    return out


def row_maxima_bruteforce(m: ImplicitMatrix) -> List[Tuple[int, ExtProfit]]:
    """Exhaustive oracle with the identical tie rule; O(rows*cols) evals."""
    result = []
    if m.rows == 0 or m.cols == 0:
        return result
    for i in range(m.rows):
        best_c = 0
        best_v = m.eval(i, 0)
        for j in range(1, m.cols):
            v = m.eval(i, j)
            if v > best_v:
                best_v = v
                best_c = j
        result.append((best_c, best_v))
    return result


def _smawk(f, rbase: int, rstep: int, rcount: int, cols: list, out: list) -> None:
    """Recursive SMAWK over rows rbase, rbase+rstep, ... (rcount of them)."""
    # REDUCE: keep at most rcount columns that can still host a row maximum.
    if len(cols) > rcount:
        stack: list = []
        for c in cols:
            while stack:
                r = rbase + rstep * (len(stack) - 1)
                if f(r, stack[-1]) < f(r, c):
                    stack.pop()
                else:
                    break
            if len(stack) < rcount:
                stack.append(c)
        cols = stack

    if rcount == 1:
        r = rbase
        best_c = cols[0]
        best_v = f(r, best_c)
        for k in range(1, len(cols)):
            v = f(r, cols[k])
            if v > best_v:
                best_v = v
                best_c = cols[k]
        out[r] = (best_c, best_v)
        return

    # Solve the odd-indexed rows recursively, then interpolate the even ones:
    # each even row's argmax lies between its odd neighbours' argmax columns.
    _smawk(f, rbase + rstep, rstep * 2, rcount // 2, cols, out)

    pos = {c: k for k, c in enumerate(cols)}
    start = 0
    for t in range(0, rcount, 2):
        r = rbase + rstep * t
        if t + 1 < rcount:
            stop = pos[out[rbase + rstep * (t + 1)][0]]
        else:
            stop = len(cols) - 1
        best_c = cols[start]
        best_v = f(r, best_c)
        for k in range(start + 1, stop + 1):
            v = f(r, cols[k])
            if v > best_v:
                best_v = v
                best_c = cols[k]
        out[r] = (best_c, best_v)
        start = stop
