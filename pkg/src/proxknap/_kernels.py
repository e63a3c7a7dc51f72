"""Optional numba kernel for the int64-safe arithmetic-run fold.

The kernel mirrors maxplus._fold_ap_list exactly (same block-hull algorithm,
same results) but runs on int64 arrays with the NEG_INF sentinel encoding.
Hull maintenance stores integer crossover points instead of comparing line
values, so no intermediate product leaves int64 as long as the caller checks
the documented bounds (values within 2^58, step*window and curvature*window^2
within 2^58).

Everything degrades gracefully: without numba, available() is False and
callers use the pure-Python fold, which is also the differential oracle for
this kernel in the test suite.
"""

from __future__ import annotations

import numpy as np

I64_SENTINEL = -(1 << 61)
I64_FLOOR = -(1 << 60)
KERNEL_VALUE_CAP = 1 << 58

_loaded = None  # tri-state: None (not attempted), False, True
ap_fold_i64 = None
band_brute_i64 = None
band_dc_i64 = None


def available() -> bool:
    """Lazily import numba and jit the kernels; False when numba is absent.

    Deferred because importing numba costs most of a second, which dwarfs
    small solves; callers only ask once their workload is big enough.
    """
    global _loaded, ap_fold_i64, band_brute_i64, band_dc_i64
    if _loaded is None:
        try:
            import numba
        except ImportError:  # pragma: no cover - exercised without numba
            _loaded = False
            return False
        jit = numba.njit(cache=True, nogil=True)
        ap_fold_i64 = jit(_ap_fold_impl)
        band_brute_i64 = jit(_band_brute_impl)
        band_dc_i64 = jit(_band_dc_impl)
        _loaded = True
    return _loaded


def _ap_fold_impl(z, h, c, p, d, out_len):  # pragma: no cover - jitted
    n = z.shape[0]
    m = n + c * h
    if m > out_len:
        m = out_len
    sent = I64_SENTINEL
    floor = I64_FLOOR
    out = np.full(m, sent, dtype=np.int64)
    if m <= 0:
        return out
    width = c + 1
    iinf = np.int64(1) << np.int64(62)
    cap = width if width < m else m
    hj = np.empty(cap + 2, dtype=np.int64)
    ha = np.empty(cap + 2, dtype=np.int64)
    hb = np.empty(cap + 2, dtype=np.int64)
    hs = np.empty(cap + 2, dtype=np.int64)
    two_p = 2 * p
    b0 = two_p + d
    top_h = h
    if m < h:
        top_h = m
    for r in range(top_h):
        rows = (m - r + h - 1) // h
        cols = (n - r + h - 1) // h
        block = 0
        while block < rows:
            hi = block + width
            if hi > rows:
                hi = rows
            # ---- forward pass ----
            hlen = 0
            ptr = 0
            for i in range(block, hi):
                if i < cols:
                    v = z[r + i * h]
                    if v > floor:
                        jj = i - block
                        b = b0 + 2 * d * jj
                        a = 2 * v - two_p * jj - d * jj * (jj + 1)
                        drop = False
                        cross = -iinf
                        while hlen > 0:
                            at = ha[hlen - 1]
                            bt = hb[hlen - 1]
                            if b == bt:
                                if a >= at:
                                    hlen -= 1
                                    continue
                                drop = True
                                break
                            num = at - a
                            den = b - bt
                            cross = -((-num) // den)
                            if cross <= hs[hlen - 1]:
                                hlen -= 1
                                continue
                            break
                        if ptr >= hlen:
                            ptr = hlen - 1 if hlen > 0 else 0
                        if not drop:
                            if hlen == 0:
                                cross = -iinf
                            hj[hlen] = i
                            ha[hlen] = a
                            hb[hlen] = b
                            hs[hlen] = cross
                            hlen += 1
                if hlen > 0:
                    qq = i - block
                    while ptr + 1 < hlen and hs[ptr + 1] <= qq:
                        ptr += 1
                    j = hj[ptr]
                    k = i - j
                    out[r + i * h] = (z[r + j * h] + k * p
                                      - d * (k * (k - 1) // 2))
            if block == 0:
                block = hi
                continue
            # ---- backward pass over the previous block ----
            hlen = 0
            ptr = 0
            lo_j = block - c
            if lo_j < 0:
                lo_j = 0
            for j in range(block - 1, lo_j - 1, -1):
                if j < cols:
                    v = z[r + j * h]
                    if v > floor:
                        jj = j - lo_j
                        b = b0 + 2 * d * jj
                        a = 2 * v - two_p * jj - d * jj * (jj + 1)
                        drop = False
                        cross = iinf
                        while hlen > 0:
                            at = ha[hlen - 1]
                            bt = hb[hlen - 1]
                            if b == bt:
                                if a >= at:
                                    hlen -= 1
                                    continue
                                drop = True
                                break
                            num = a - at
                            den = bt - b
                            cross = num // den  # new wins for qq <= cross
                            if cross >= hs[hlen - 1]:
                                hlen -= 1
                                continue
                            break
                        if ptr >= hlen:
                            ptr = hlen - 1 if hlen > 0 else 0
                        if not drop:
                            if hlen == 0:
                                cross = iinf
                            hj[hlen] = j
                            ha[hlen] = a
                            hb[hlen] = b
                            hs[hlen] = cross
                            hlen += 1
                i = j + c
                if i >= rows or i < block or hlen == 0:
                    continue
                qq = i - lo_j
                while ptr + 1 < hlen and hs[ptr + 1] >= qq:
                    ptr += 1
                jj2 = hj[ptr]
                k = i - jj2
                cand = z[r + jj2 * h] + k * p - d * (k * (k - 1) // 2)
                if cand > out[r + i * h]:
                    out[r + i * h] = cand
            block = hi
    return out


def _band_brute_impl(z, h, yv, out_len):  # pragma: no cover - jitted
    """out[q] = max_t z[q - t*h] + yv[t]; direct scan, O(out_len * len(yv))."""
    n = z.shape[0]
    l = yv.shape[0] - 1
    m = n + l * h
    if m > out_len:
        m = out_len
    floor = I64_FLOOR
    sent = I64_SENTINEL
    out = np.full(m, sent, dtype=np.int64)
    lowest = -(np.int64(1) << np.int64(62))
    for q in range(m):
        tmax = q // h
        if tmax > l:
            tmax = l
        tmin = 0
        if q >= n:
            tmin = (q - n) // h + 1
        best = lowest
        base = q - tmin * h
        for t in range(tmin, tmax + 1):
            v = z[base]
            base -= h
            if v > floor:
                cand = v + yv[t]
                if cand > best:
                    best = cand
        if best > floor:
            out[q] = best
    return out


def _band_dc_impl(z, h, yv, out_len):  # pragma: no cover - jitted
    """Divide-and-conquer monotone argmax per residue; O(out_len * log)."""
    n = z.shape[0]
    l = yv.shape[0] - 1
    m = n + l * h
    if m > out_len:
        m = out_len
    floor = I64_FLOOR
    sent = I64_SENTINEL
    out = np.full(m, sent, dtype=np.int64)
    lowest = -(np.int64(1) << np.int64(62))
    stack = np.empty((200, 4), dtype=np.int64)
    top_h = h
    if m < h:
        top_h = m
    for r in range(top_h):
        rows = (m - r + h - 1) // h
        cols = (n - r + h - 1) // h
        if cols <= 0:
            continue
        sp = 0
        stack[0, 0] = 0
        stack[0, 1] = rows - 1
        stack[0, 2] = 0
        stack[0, 3] = cols - 1
        sp = 1
        while sp > 0:
            sp -= 1
            lo = stack[sp, 0]
            hi = stack[sp, 1]
            clo = stack[sp, 2]
            chi = stack[sp, 3]
            if lo > hi:
                continue
            mid = (lo + hi) >> 1
            jlo = mid - l
            if jlo < clo:
                jlo = clo
            jhi = mid
            if jhi > chi:
                jhi = chi
            if jhi >= cols:
                jhi = cols - 1
            best = lowest
            best_j = clo
            for j in range(jlo, jhi + 1):
                if j < 0:
                    continue
                v = z[r + j * h] + yv[mid - j]
                if v > best:
                    best = v
                    best_j = j
            if best > floor:
                out[r + mid * h] = best
            # argmax columns are non-decreasing in the row, so each half
            # recurses on a clipped column range
            if mid + 1 <= hi:
                stack[sp, 0] = mid + 1
                stack[sp, 1] = hi
                stack[sp, 2] = best_j
                stack[sp, 3] = chi
                sp += 1
            if lo <= mid - 1:
                stack[sp, 0] = lo
                stack[sp, 1] = mid - 1
                stack[sp, 2] = clo
                stack[sp, 3] = best_j
                sp += 1
    return out


