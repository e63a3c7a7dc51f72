"""(max,+)-convolution with a concave sequence in linear time.

A profit sequence is a plain list indexed by total weight, with ``NEG_INF``
marking unreachable weights.  A :class:`ConcaveSeq` is finite exactly at
0, h, 2h, ..., l*h with non-increasing differences; convolving an arbitrary
sequence with a concave one reduces, per residue class modulo h, to the row
maxima of an inverse-Monge matrix, solved by SMAWK.

Out-of-band matrix entries are not fed to SMAWK as NEG_INF: equal -inf
entries form ties that can break total monotonicity.  Instead the concave
sequence is extended beyond its band with steep finite slopes (steeper than
the total value span), which keeps the matrix inverse-Monge and every
surrogate entry strictly below every real one; rows won by a surrogate are
reported as NEG_INF.

Besides the reference SMAWK path this module carries exact fast engines,
selected by a small cost model per call:

  * a pure-Python fold per arithmetic run of the concave sequence (the
    max-plus product of any ordered split of its differences reproduces it),
    implemented as windowed hulls of equal-curvature parabolas whose
    pairwise comparisons reduce to integer lines;
  * numpy folds of linear runs via blockwise rolling maxima, when every
    value provably fits comfortably in int64;
  * optional numba kernels (banded scan, divide-and-conquer monotone
    argmax, and the arithmetic-run hull) behind the same int64 bounds.

All engines return identical values and are tested against the quadratic
definition and against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .model import NEG_INF, ExtProfit, is_finite
from . import smawk
from . import _kernels

ProfitSeq = List[ExtProfit]

# int64 layout for the numpy path: finite values must stay within
# I64_VALUE_CAP in magnitude (so sums of two stay above the sentinel floor),
# NEG_INF is encoded as _I64_SENTINEL, and everything at or below _I64_FLOOR
# after an operation is a sentinel descendant.
I64_VALUE_CAP = 1 << 58
_I64_SENTINEL = -(1 << 61)
_I64_FLOOR = -(1 << 60)

# Rough per-unit costs, used only to choose between equally exact paths.
_NUMPY_CALL_OVERHEAD = 40e-6
_NUMPY_PER_ELEMENT = 3e-9
_CONVERT_PER_ELEMENT = 1.5e-7
_PY_SMAWK_PER_UNIT = 6.5e-7
_DEQUE_PER_ELEMENT = 4.5e-7
# Below this output length the jitted kernels are not worth importing numba.
_KERNEL_MIN_LEN = 3000


class ConcavityError(ValueError):
    """The sequence handed to conv_concave is not concave on its grid."""


class _TooLarge(Exception):
    pass


@dataclass(frozen=True)
class ConcaveSeq:
    """Sequence finite exactly at 0, h, ..., count*h, concave there.

    ``values[i]`` is the entry at index ``i * offset``; ``length`` is the
    materialized sequence length (trailing NEG_INF entries included), so a
    greedy result over budget W' has ``length == W' + 1``.
    """

    values: tuple
    offset: int
    length: int

    @property
    def count(self) -> int:
        return len(self.values) - 1

    @property
    def seq(self) -> ProfitSeq:
        """Materialized ProfitSeq view (tests and small inputs only)."""
        out: ProfitSeq = [NEG_INF] * self.length
        for i, v in enumerate(self.values):
            out[i * self.offset] = v
        return out

    def validate(self) -> None:
        if self.offset < 1:
            raise ConcavityError(f"offset must be >= 1, got {self.offset}")
        if not self.values:
            raise ConcavityError("a concave sequence needs a finite entry at 0")
        if self.length < self.count * self.offset + 1:
            raise ConcavityError("length too small for count and offset")
        vals = self.values
        for v in vals:
            if not isinstance(v, int):
                raise ConcavityError("concave entries must be exact integers")
        for i in range(1, len(vals) - 1):
            if vals[i] - vals[i - 1] < vals[i + 1] - vals[i]:
                raise ConcavityError(
                    f"differences increase at step {i}: "
                    f"{vals[i] - vals[i - 1]} < {vals[i + 1] - vals[i]}")

    @staticmethod
    def from_seq(seq: Sequence[ExtProfit], offset: int) -> "ConcaveSeq":
        """Parse a materialized sequence (finite exactly on the h-grid)."""
        values = []
        for k, v in enumerate(seq):
            if k % offset == 0 and len(values) * offset == k and is_finite(v):
                values.append(v)
            elif is_finite(v):
                raise ConcavityError(f"finite entry off the grid at index {k}")
        cs = ConcaveSeq(tuple(values), offset, len(seq))
        cs.validate()
        return cs


def conv_naive(x: ProfitSeq, y: ProfitSeq) -> ProfitSeq:
    """Definitional O(n*m) oracle: z[k] = max_i x[i] + y[k-i]."""
    if not x or not y:
        return []
    out: ProfitSeq = [NEG_INF] * (len(x) + len(y) - 1)
    for i, xi in enumerate(x):
        if xi == NEG_INF:
            continue
        for j, yj in enumerate(y):
            if yj == NEG_INF:
                continue
            v = xi + yj
            if v > out[i + j]:
                out[i + j] = v
    return out


def prefix_max(x: ProfitSeq) -> ProfitSeq:
    """s[i] = max(x[0..i]); NEG_INF propagates until a finite entry appears."""
    out: ProfitSeq = []
    acc: ExtProfit = NEG_INF
    for v in x:
        if v > acc:
            acc = v
        out.append(acc)
    return out


def conv_concave(x: ProfitSeq, y: ConcaveSeq, *,
                 limit: Optional[int] = None,
                 counter: Optional[smawk.CallCounter] = None) -> ProfitSeq:
    """z[k] = max_i x[i] + y[k-i], in O(len(x) + y.length) time.

    ``limit`` truncates the output (exact: entry k of the result depends only
    on entries <= k).  With ``counter`` the computation runs through
    ``smawk.row_maxima`` on per-residue ImplicitMatrix closures whose
    evaluations are counted; otherwise the cheapest of three equally exact
    engines is chosen (SMAWK, arithmetic-run deque, numpy piece folds).
    """
    y.validate()
    if not x:
        return []
    out_len = len(x) + y.length - 1
    if limit is not None:
        out_len = min(out_len, limit)
    if out_len <= 0:
        return []
    if counter is not None:
        return _conv_instrumented(x, y, out_len, counter)
    return _conv_dispatch(x, y, out_len)


def _conv_dispatch(x: ProfitSeq, y: ConcaveSeq, out_len: int) -> ProfitSeq:
    if y.count == 0:
        base = y.values[0]
        out = [v + base if v != NEG_INF else NEG_INF for v in x[:out_len]]
        out.extend([NEG_INF] * (out_len - len(out)))
        return out
    runs = _ap_runs(y.values)
    q_runs = len(runs)
    q_pieces = sum(1 if d == 0 else c for c, _, d in runs)
    cost_deque = _DEQUE_PER_ELEMENT * q_runs * out_len
    cost_smawk = _PY_SMAWK_PER_UNIT * (out_len + len(x))
    cost_numpy = float("inf")
    if q_pieces <= 64:
        cost_numpy = (q_pieces * (_NUMPY_CALL_OVERHEAD + _NUMPY_PER_ELEMENT * out_len)
                      + _CONVERT_PER_ELEMENT * out_len)
    cost_kernel = float("inf")
    if out_len >= _KERNEL_MIN_LEN and _kernels.available():
        per_el = min((y.count + 1) * 2.5e-9,
                     max(1, out_len.bit_length()) * 1.2e-8,
                     q_runs * 3e-8 if _kernel_runs_ok(runs) else float("inf"))
        cost_kernel = (out_len * per_el + _NUMPY_CALL_OVERHEAD
                       + 2 * _CONVERT_PER_ELEMENT * out_len)
    cheapest = min(cost_deque, cost_smawk, cost_numpy, cost_kernel)
    if cheapest == cost_kernel or cheapest == cost_numpy:
        arr = encode_i64(x)
        if arr is not None and _y_fits_i64(y):
            if cheapest == cost_kernel:
                return decode_i64(conv_concave_arr(arr, y, out_len))
            folded = conv_concave_i64(arr, y, out_len)
            if folded is not None:
                return decode_i64(folded)
        cheapest = min(cost_deque, cost_smawk)
    if cheapest == cost_deque:
        return _conv_deque(x, y, runs, out_len)
    return _conv_smawk_lists(x, y, out_len)


def _kernel_runs_ok(runs: list) -> bool:
    """Per-run bounds keeping every kernel intermediate inside int64."""
    cap = _kernels.KERNEL_VALUE_CAP
    for copies, first, curvature in runs:
        if abs(first) * copies > cap or curvature * copies * copies > cap:
            return False
    return True


def conv_concave_arr(arr: np.ndarray, y: ConcaveSeq, out_len: int) -> np.ndarray:
    """Array-resident exact convolution for int64-encoded sequences.

    Requires every finite input value within I64_VALUE_CAP (guaranteed by
    encode_i64 or by the caller's global profit-mass bound) and y within the
    same cap.  Chooses the cheapest exact engine: a banded direct scan for
    few finite y entries, divide-and-conquer monotone argmax for dense ones,
    or per-run hull folds when y has few arithmetic runs; falls back to the
    numpy piece fold or the exact Python fold when kernels are unavailable
    or a bound check fails.
    """
    y.validate()
    if y.count == 0:
        n = int(arr.shape[0])
        cur = arr[:out_len]
        if n < out_len:
            cur = np.concatenate(
                [cur, np.full(out_len - n, _I64_SENTINEL, dtype=np.int64)])
        base = int(y.values[0])
        if base:
            cur = np.where(cur > _I64_FLOOR, cur + base, _I64_SENTINEL)
        return cur
    l = y.count
    h = y.offset
    runs = _ap_runs(y.values)
    want_kernel = (out_len >= _KERNEL_MIN_LEN
                   or (l + 1) * out_len >= 4 * _KERNEL_MIN_LEN)
    if want_kernel and _y_fits_i64(y) and _kernels.available():
        cost_brute = out_len * (l + 1) * 2.5e-9 + 3e-5
        log_rows = max(1, (max(1, out_len // h)).bit_length())
        cost_dc = out_len * log_rows * 1.2e-8 + 3e-5
        cost_hull = float("inf")
        if _kernel_runs_ok(runs):
            cost_hull = len(runs) * (out_len * 3e-8 + 2e-5)
        best = min(cost_brute, cost_dc, cost_hull)
        if best == cost_hull:
            cur = arr
            for copies, first, curvature in runs:
                cur = _kernels.ap_fold_i64(cur, h, copies, first, curvature,
                                           out_len)
            return _finish_arr(cur, y, out_len)
        yv = np.empty(l + 1, dtype=np.int64)
        for t, v in enumerate(y.values):
            yv[t] = v - y.values[0]
        if best == cost_brute:
            cur = _kernels.band_brute_i64(arr, h, yv, out_len)
        else:
            cur = _kernels.band_dc_i64(arr, h, yv, out_len)
        return _finish_arr(cur, y, out_len)
    return _conv_arr_fallback(arr, y, runs, out_len)


def _finish_arr(cur: np.ndarray, y: ConcaveSeq, out_len: int) -> np.ndarray:
    n = int(cur.shape[0])
    if n < out_len:
        cur = np.concatenate(
            [cur, np.full(out_len - n, _I64_SENTINEL, dtype=np.int64)])
    else:
        cur = cur[:out_len]
    base = int(y.values[0])
    if base:
        cur = np.where(cur > _I64_FLOOR, cur + base, _I64_SENTINEL)
    return cur


def _conv_arr_fallback(arr: np.ndarray, y: ConcaveSeq, runs: list,
                       out_len: int) -> np.ndarray:
    """No-kernel route: numpy linear pieces where safe, Python fold otherwise."""
    cap = _kernels.KERNEL_VALUE_CAP
    cur = arr
    for copies, first, curvature in runs:
        if curvature == 0 and abs(first) * copies <= cap:
            folded = _fold_linear(cur, y.offset, copies, first, out_len)
            if folded is not None:
                cur = folded
                continue
        folded_list = _fold_ap_list(decode_i64(cur), y.offset, copies, first,
                                    curvature, out_len)
        enc = encode_i64(folded_list)
        if enc is None:
            raise OverflowError("conv_concave_arr caller violated value caps")
        cur = enc
    return _finish_arr(cur, y, out_len)


def _ap_runs(values: Sequence[int]) -> list:
    """Maximal arithmetic runs of the difference sequence.

    Returns triples (copies, first_step, curvature); the run's steps are
    first_step - t*curvature for t in range(copies), curvature >= 0 by
    concavity.  Convolving the runs in order reproduces the sequence, since
    a concave sequence is the max-plus product of any ordered split of its
    differences.
    """
    diffs = [values[k + 1] - values[k] for k in range(len(values) - 1)]
    runs = []
    i = 0
    n = len(diffs)
    while i < n:
        if i + 1 == n:
            runs.append((1, diffs[i], 0))
            break
        dd = diffs[i + 1] - diffs[i]
        j = i + 1
        while j + 1 < n and diffs[j + 1] - diffs[j] == dd:
            j += 1
        runs.append((j - i + 1, diffs[i], -dd))
        i = j + 1
    return runs


def _conv_deque(x: ProfitSeq, y: ConcaveSeq, runs: list,
                out_len: int) -> ProfitSeq:
    cur = x
    h = y.offset
    for copies, first, curvature in runs:
        cur = _fold_ap_list(cur, h, copies, first, curvature, out_len)
    base = y.values[0]
    if base:
        cur = [v + base if v != NEG_INF else NEG_INF for v in cur]
    if len(cur) < out_len:
        cur = cur + [NEG_INF] * (out_len - len(cur))
    return cur


def _fold_ap_list(z: ProfitSeq, h: int, copies: int, first: int,
                  curvature: int, out_len: int) -> ProfitSeq:
    """Fold one arithmetic run: z'[q] = max_k z[q-k*h] + S(k), k <= copies,
    where S(k) = k*first - curvature*k*(k-1)/2 sums the run's first k steps.

    Per residue class this is a sliding-window maximum over equal-curvature
    parabolas.  Pairwise comparisons reduce to integer lines with a single
    crossover (the quadratic terms cancel), so each window-sized block of
    outputs is answered by two monotone hull passes: a forward one over the
    block's own candidates (never expired inside the block) and a backward
    one over the previous block's suffixes.  Amortized O(1) exact integer
    work per output.
    """
    n = len(z)
    m = min(n + copies * h, out_len)
    neg = NEG_INF
    if copies == 1:
        out = z[:m] + [neg] * (m - n)
        v1 = first
        for q in range(m - 1, h - 1, -1):
            u = z[q - h] if q - h < n else neg
            if u != neg:
                cand = u + v1
                if cand > out[q]:
                    out[q] = cand
        return out
    if copies == 2:
        out = z[:m] + [neg] * (m - n)
        v1 = first
        v2 = 2 * first - curvature
        for q in range(m - 1, h - 1, -1):
            best = out[q]
            u = z[q - h] if q - h < n else neg
            if u != neg and u + v1 > best:
                best = u + v1
            if q >= 2 * h:
                u = z[q - 2 * h] if q - 2 * h < n else neg
                if u != neg and u + v2 > best:
                    best = u + v2
            out[q] = best
        return out
    out: ProfitSeq = [neg] * m
    for r in range(min(h, m)):
        zr = z[r::h]
        rows = (m - r + h - 1) // h
        if curvature == 0:
            res = _fold_linear_residue(zr, rows, copies, first)
        else:
            res = _fold_ap_residue(zr, rows, copies, first, curvature)
        out[r::h] = res
    return out


def _fold_linear_residue(zr: list, rows: int, c: int, p: int) -> list:
    """Window max of zr[j] - j*p plus i*p: the curvature-free fold."""
    neg = NEG_INF
    res: ProfitSeq = [neg] * rows
    cols = len(zr)
    dq_j: list = []
    dq_t: list = []
    head = 0
    tail = 0
    for i in range(rows):
        if i < cols:
            v = zr[i]
            if v != neg:
                t = v - i * p
                while tail > head and dq_t[tail - 1] <= t:
                    tail -= 1
                    dq_j.pop()
                    dq_t.pop()
                dq_j.append(i)
                dq_t.append(t)
                tail += 1
        lo = i - c
        while head < tail and dq_j[head] < lo:
            head += 1
        if head < tail:
            res[i] = dq_t[head] + i * p
    return res


def _fold_ap_residue(zr: list, rows: int, c: int, p: int, d: int) -> list:
    """One residue class of the arithmetic-run fold (window c, steps p, -d).

    Candidate j's value at output i is zr[j] + S(i-j); pairwise comparisons
    reduce to integer lines (the shared quadratic term cancels), evaluated in
    block-local coordinates to keep the products small.
    """
    neg = NEG_INF
    res: ProfitSeq = [neg] * rows
    cols = len(zr)
    two_p = 2 * p
    b0 = two_p + d
    width = c + 1  # window and block length

    for block in range(0, rows, width):
        hi = min(block + width, rows)
        # Forward pass: candidates j in [block, i]; the window never binds
        # inside one block, so strong hull pops are sound.
        hull_j: list = []
        hull_a: list = []
        hull_b: list = []
        hlen = 0
        ptr = 0
        for i in range(block, hi):
            if i < cols:
                v = zr[i]
                if v != neg:
                    jj = i - block
                    b = b0 + 2 * d * jj
                    a = 2 * v - two_p * jj - d * jj * (jj + 1)
                    drop = False
                    while hlen:
                        at = hull_a[-1]
                        bt = hull_b[-1]
                        if b == bt:
                            if a >= at:
                                hull_j.pop(); hull_a.pop(); hull_b.pop()
                                hlen -= 1
                                continue
                            drop = True  # parallel and below; never wins
                            break
                        if hlen >= 2 and ((at - a) * (bt - hull_b[-2])
                                          <= (hull_a[-2] - at) * (b - bt)):
                            hull_j.pop(); hull_a.pop(); hull_b.pop()
                            hlen -= 1
                            continue
                        break
                    if ptr >= hlen:
                        ptr = hlen - 1 if hlen else 0
                    if not drop:
                        hull_j.append(i)
                        hull_a.append(a)
                        hull_b.append(b)
                        hlen += 1
            if hlen:
                qq = i - block
                val = hull_a[ptr] + hull_b[ptr] * qq
                while ptr + 1 < hlen:
                    cand = hull_a[ptr + 1] + hull_b[ptr + 1] * qq
                    if cand >= val:
                        val = cand
                        ptr += 1
                    else:
                        break
                j = hull_j[ptr]
                k = i - j
                res[i] = zr[j] + k * p - d * (k * (k - 1) // 2)
        if block == 0:
            continue
        # Backward pass over the previous block: candidates j descend (their
        # suffix grows), each unlocking exactly the query i = j + c; slopes
        # now decrease toward the hull top, queries descend.
        hull_j = []
        hull_a = []
        hull_b = []
        hlen = 0
        ptr = 0
        lo_j = block - c
        if lo_j < 0:
            lo_j = 0
        origin = lo_j
        for j in range(block - 1, lo_j - 1, -1):
            if j < cols:
                v = zr[j]
                if v != neg:
                    jj = j - origin
                    b = b0 + 2 * d * jj
                    a = 2 * v - two_p * jj - d * jj * (jj + 1)
                    drop = False
                    while hlen:
                        at = hull_a[-1]
                        bt = hull_b[-1]
                        if b == bt:
                            if a >= at:
                                hull_j.pop(); hull_a.pop(); hull_b.pop()
                                hlen -= 1
                                continue
                            drop = True
                            break
                        if hlen >= 2 and ((a - at) * (hull_b[-2] - bt)
                                          >= (at - hull_a[-2]) * (bt - b)):
                            hull_j.pop(); hull_a.pop(); hull_b.pop()
                            hlen -= 1
                            continue
                        break
                    if ptr >= hlen:
                        ptr = hlen - 1 if hlen else 0
                    if not drop:
                        hull_j.append(j)
                        hull_a.append(a)
                        hull_b.append(b)
                        hlen += 1
            i = j + c
            if i >= rows or i < block or not hlen:
                continue
            qq = i - origin
            val = hull_a[ptr] + hull_b[ptr] * qq
            while ptr + 1 < hlen:
                cand = hull_a[ptr + 1] + hull_b[ptr + 1] * qq
                if cand >= val:
                    val = cand
                    ptr += 1
                else:
                    break
            jj2 = hull_j[ptr]
            k = i - jj2
            cand2 = zr[jj2] + k * p - d * (k * (k - 1) // 2)
            if cand2 > res[i]:
                res[i] = cand2
    return res


# ---------------------------------------------------------------------------
# Reference path: per-residue SMAWK over surrogate-extended band matrices.


def _steep_slope(xs_vals: Sequence[int], ys: Sequence[int]) -> int:
    """Extension slope G; surrogates end strictly below every real entry."""
    return (max(xs_vals) - min(xs_vals)) + (max(ys) - min(ys)) + 1


def _extend_steps(ys: Sequence[int], lo_t: int, hi_t: int, g: int) -> list:
    """ys extended to offsets lo_t..hi_t, slopes +G / -G outside [0, l]."""
    l = len(ys) - 1
    y0 = ys[0]
    yl = ys[l]
    ext = []
    for t in range(lo_t, hi_t + 1):
        if t < 0:
            ext.append(y0 + t * g)
        elif t > l:
            ext.append(yl - (t - l) * g)
        else:
            ext.append(ys[t])
    return ext


def _conv_smawk_lists(x: ProfitSeq, y: ConcaveSeq, out_len: int) -> ProfitSeq:
    h = y.offset
    ys = y.values
    l = y.count
    out: ProfitSeq = [NEG_INF] * out_len
    for r in range(min(h, out_len)):
        n_rows = (out_len - r + h - 1) // h
        xs = x[r::h]
        posa = []
        xsv = []
        for j, v in enumerate(xs):
            if v != NEG_INF:
                posa.append(j)
                xsv.append(v)
        if not posa:
            continue
        g = _steep_slope(xsv, ys)
        shift = posa[-1]
        ysx = _extend_steps(ys, -shift, n_rows - 1, g)

        def f(i, jj, _xsv=xsv, _ysx=ysx, _posa=posa, _shift=shift):
            return _xsv[jj] + _ysx[i - _posa[jj] + _shift]

        pairs: list = [None] * n_rows
        smawk._smawk(f, 0, 1, n_rows, list(range(len(posa))), pairs)
        base = r
        for i in range(n_rows):
            c, v = pairs[i]
            if 0 <= i - posa[c] <= l:
                out[base + i * h] = v
    return out


def _conv_instrumented(x: ProfitSeq, y: ConcaveSeq, out_len: int,
                       counter: smawk.CallCounter) -> ProfitSeq:
    """Contract route: per-residue matrices share one counting eval closure."""
    h = y.offset
    ys = y.values
    l = y.count
    out: ProfitSeq = [NEG_INF] * out_len
    finite_x = [v for v in x if v != NEG_INF]
    if not finite_x:
        return out
    g = _steep_slope(finite_x, ys)
    dead_x = min(finite_x) - g  # finite stand-in for NEG_INF columns
    for r in range(min(h, out_len)):
        n_rows = (out_len - r + h - 1) // h
        xs = x[r::h]
        n_cols = len(xs)
        if n_cols == 0:
            continue
        shift = n_cols - 1
        ysx = _extend_steps(ys, -shift, n_rows - 1, g)

        def eval_fn(i, j, _xs=xs, _ysx=ysx, _shift=shift, _c=counter):
            _c.count += 1
            xv = _xs[j]
            if xv == NEG_INF:
                xv = dead_x
            return xv + _ysx[i - j + _shift]

        pairs = smawk.row_maxima(smawk.ImplicitMatrix(n_rows, n_cols, eval_fn))
        for i in range(n_rows):
            c, v = pairs[i]
            if 0 <= i - c <= l and xs[c] != NEG_INF:
                out[r + i * h] = v
    return out


# ---------------------------------------------------------------------------
# Exact numpy path.


def encode_i64(x: ProfitSeq) -> Optional[np.ndarray]:
    """Encode as int64 with the NEG_INF sentinel; None if any value is too big."""
    def enc(v):
        if v == NEG_INF:
            return _I64_SENTINEL
        if v > I64_VALUE_CAP or v < -I64_VALUE_CAP:
            raise _TooLarge
        return v

    try:
        return np.fromiter((enc(v) for v in x), dtype=np.int64, count=len(x))
    except (_TooLarge, OverflowError):
        return None


def decode_i64(arr: np.ndarray) -> ProfitSeq:
    return [v if v > _I64_FLOOR else NEG_INF for v in arr.tolist()]


def _y_fits_i64(y: ConcaveSeq) -> bool:
    return (max(y.values) <= I64_VALUE_CAP
            and min(y.values) >= -I64_VALUE_CAP)


def _pieces(y: ConcaveSeq) -> list:
    """Runs of equal differences, as (copies, step), steps non-increasing."""
    vals = y.values
    pieces = []
    k = 1
    while k < len(vals):
        d = vals[k] - vals[k - 1]
        run = 1
        while k + run < len(vals) and vals[k + run] - vals[k + run - 1] == d:
            run += 1
        pieces.append((run, d))
        k += run
    return pieces


def conv_concave_i64(arr: np.ndarray, y: ConcaveSeq,
                     out_len: int) -> Optional[np.ndarray]:
    """Numpy fold of y into an i64-encoded sequence; None when not worthwhile.

    The caller guarantees all finite values (input and y) fit I64_VALUE_CAP.
    Returns None when the cost model prefers the SMAWK path or a fold step
    cannot be kept int64-safe; callers then fall back, so the result is
    always exact.
    """
    pieces = _pieces(y)
    q = len(pieces)
    if q:
        cost_numpy = q * (_NUMPY_CALL_OVERHEAD + out_len * _NUMPY_PER_ELEMENT)
        cost_py = (2 * out_len + y.count * y.offset) * _PY_SMAWK_PER_UNIT
        if cost_numpy > cost_py:
            return None
    h = y.offset
    cur = arr
    for copies, step in pieces:
        folded = _fold_linear(cur, h, copies, step, out_len)
        if folded is None:
            return None
        cur = folded
    n = int(cur.shape[0])
    if n < out_len:
        cur = np.concatenate(
            [cur, np.full(out_len - n, _I64_SENTINEL, dtype=np.int64)])
    else:
        cur = cur[:out_len]
    base = int(y.values[0])
    if base:
        cur = np.where(cur > _I64_FLOOR, cur + base, _I64_SENTINEL)
    return cur


def _fold_linear(arr: np.ndarray, h: int, copies: int, step: int,
                 out_len: int) -> Optional[np.ndarray]:
    """z'[k] = max_{0<=d<=copies} arr[k - d*h] + d*step, truncated to out_len.

    Per residue class mod h this is a sliding-window maximum of width
    copies+1 over T[q] = arr_res[q] - q*step.  T is evaluated chunkwise with
    local origins so |q*step| never leaves int64 territory.
    """
    n = int(arr.shape[0])
    new_len = min(n + copies * h, out_len)
    if new_len <= 0:
        return arr[:0]
    window = copies + 1
    abs_step = abs(step)
    chunk = max(window, 1 << 16)
    if abs_step and (chunk + window) * abs_step > (1 << 60):
        chunk = window
        if 2 * window * abs_step > (1 << 60):
            return None  # absurdly steep piece; let SMAWK handle it

    rows = (new_len + h - 1) // h
    padded = np.full(rows * h, _I64_SENTINEL, dtype=np.int64)
    m = min(n, rows * h)
    padded[:m] = arr[:m]
    grid = padded.reshape(rows, h)

    out = np.empty_like(grid)
    start = 0
    while start < rows:
        stop = min(start + chunk, rows)
        lo = max(0, start - window + 1)
        local = np.arange(stop - lo, dtype=np.int64)
        t = grid[lo:stop] - (local * step)[:, None]
        mx = _rolling_max_axis0(t, window)
        keep = slice(start - lo, stop - lo)
        out[start:stop] = mx[keep] + (local[keep] * step)[:, None]
        start = stop

    flat = out.reshape(-1)[:new_len]
    # Refloor sentinel descendants; true values stay above _I64_FLOOR.
    return np.where(flat > _I64_FLOOR, flat, _I64_SENTINEL)


def _rolling_max_axis0(t: np.ndarray, window: int) -> np.ndarray:
    """out[i] = max(t[max(0, i-window+1) : i+1]) along axis 0, exactly."""
    rows = t.shape[0]
    if window >= rows:
        return np.maximum.accumulate(t, axis=0)
    nb = (rows + window - 1) // window
    pad_rows = nb * window
    if pad_rows != rows:
        pad = np.full((pad_rows - rows,) + t.shape[1:],
                      np.iinfo(np.int64).min // 2, dtype=np.int64)
        tp = np.concatenate([t, pad], axis=0)
    else:
        tp = t
    blocks = tp.reshape(nb, window, *t.shape[1:])
    left = np.maximum.accumulate(blocks, axis=1).reshape(pad_rows, *t.shape[1:])
    right = np.maximum.accumulate(blocks[:, ::-1], axis=1)[:, ::-1]
    right = right.reshape(pad_rows, *t.shape[1:])
    out = left[:rows].copy()
    out[window - 1:] = np.maximum(left[window - 1:rows],
                                  right[:rows - window + 1])
    return out
