"""Compiled numerical kernels (private module).

All heavy loops live here as numba-jitted functions over plain float64
and int64 arrays; the public modules wrap them behind the domain types.

Numerical contract
------------------
The traceback re-derives predecessor candidates of mean-table entries
in plain Python and matches them against stored values at a relative
1e-12 tolerance.  Candidate values follow a fixed canonical summation
order, which the traceback mirrors:

* merge candidate:       t = D[same level, pred row, s]; then t += merge
  cost per series in ascending series order;
* move/split candidate:  mv = 0 plus move costs in ascending series
  order; inner = D[prev level, pred row, s'] plus split costs in
  ascending series order; candidate = mv + inner.

``fill_mean_table`` minimizes the move/split inner term over s' through
a piecewise-linear decomposition (see below) whose region minima are
algebraically equal to the canonical sums but may differ by a few ulp;
the traceback tolerance absorbs that drift.  ``fill_mean_table_reference``
computes the same table with direct loops in strict IEEE order and no
fastmath; differential tests hold the two within 1e-12 of each other.

``fastmath`` on the fast kernel is restricted to value-safe flags
(reassociation for SIMD reductions); the ``ninf`` assumption must stay
off because +inf is the sentinel for infeasible table rows.

Split-cost structure exploited by the fast kernel
-------------------------------------------------
For a fixed split point ``b`` and target value ``a = V[s]``, the split
charge ``C(a, b, d) = c`` if ``d`` lies on the far side of ``a`` from
``b``, ramps as ``c + |a - d|`` while ``d`` sits between ``b`` and
``a``, and saturates at ``c + |a - b|`` once ``d`` passes ``b``.  As a
function of ``d = V[s']`` it is therefore flat / unit-slope / constant
on three index intervals whose breakpoints are the grid positions of
``b`` and ``a``.  Minimizing ``D_prev[s'] + sum of split charges`` over
``s'`` then reduces to a handful of interval minima of ``D_prev``,
``D_prev - V``, ``D_prev + V`` (and ``+-2V`` for two-element split
sets), each maintainable in O(1) amortized per ``s`` by running prefix,
suffix, and sweep minima.  That turns the O(r^2) inner loop into O(r)
per (row, move-set) pair for split sets of size one and two, which is
every case that occurs for k <= 3 under the default nonempty-move-set
rule.  Larger split sets fall back to the direct loop.
"""

from __future__ import annotations

import numpy as np
from numba import njit

_FASTMATH = {"reassoc", "nsz", "contract"}

__all__ = [
    "cost_c_scalar",
    "pairwise_distance",
    "fill_mean_table",
    "fill_mean_table_reference",
    "brute_force_scan",
]


@njit(cache=True, inline="always")
def _cost(xi, xi_prev, yj, c):
    # Split/merge charge: c alone when xi lies between xi_prev and yj,
    # otherwise c plus the smaller detour.
    if (xi_prev <= xi <= yj) or (xi_prev >= xi >= yj):
        return c
    return c + min(abs(xi - xi_prev), abs(xi - yj))


@njit(cache=True)
def cost_c_scalar(xi, xi_prev, yj, c):
    return _cost(xi, xi_prev, yj, c)


@njit(cache=True, inline="always")
def _pairwise_into(x, m, y, n, c, prev, cur):
    """MSM distance of x[:m] and y[:n] using two rolling rows of length n."""
    cur[0] = abs(x[0] - y[0])
    for j in range(1, n):
        cur[j] = cur[j - 1] + _cost(y[j], x[0], y[j - 1], c)
    for i in range(1, m):
        prev, cur = cur, prev
        xi = x[i]
        xim = x[i - 1]
        cur[0] = prev[0] + _cost(xi, xim, y[0], c)
        for j in range(1, n):
            a = prev[j - 1] + abs(xi - y[j])
            b = prev[j] + _cost(xi, xim, y[j], c)
            d = cur[j - 1] + _cost(y[j], xi, y[j - 1], c)
            best = a
            if b < best:
                best = b
            if d < best:
                best = d
            cur[j] = best
    return cur[n - 1]


@njit(cache=True)
def pairwise_distance(x, y, c):
    """D*[m, n] of the pairwise move/split/merge recurrence."""
    m = x.size
    n = y.size
    prev = np.empty(n, np.float64)
    cur = np.empty(n, np.float64)
    return _pairwise_into(x, m, y, n, c, prev, cur)


# ---------------------------------------------------------------------------
# Mean dynamic program
# ---------------------------------------------------------------------------


@njit(cache=True, fastmath=_FASTMATH)
def fill_mean_table(D, R, xs, lengths, V, c, window, allow_empty):
    """Fill the (k+2)-dimensional mean table.

    Parameters
    ----------
    D : float64[L, P, r]
        Table, pre-filled with +inf.  The position axis is the flat
        mixed-radix encoding of (p_1, ..., p_k) with radix (n_i + 1);
        digit 0 is the "p_i < 1" sentinel, so sentinel rows simply stay
        +inf.  Level index 0 holds mean length 1.
    R : float64[L, P]
        Per-row minima over s, pre-filled with +inf; filled alongside D
        and used to skip provably-infeasible predecessors.
    xs : float64[k, n_max + 1]
        Input series, 1-based: xs[i, p] is the p-th point of series i.
    lengths : int64[k]
    V : float64[r]
        Sorted distinct candidate values.  Must contain every point of
        ``xs`` (it is the sorted union of input values); the sweep paths
        locate split-cost breakpoints by exact grid lookup.
    window : int64
        Window size d, or -1 for no window: rows whose positions
        satisfy max_i p_i - min_j p_j > d are skipped (left +inf).
    allow_empty : bool
        Enumerate the empty move set in move/split steps as well.

    Returns
    -------
    (rows_computed, rows_skipped) : int64 row counts (multiply by r for
        entry counts; rows_skipped counts windowed-out rows per level).
    """
    k = lengths.size
    r = V.size
    L = D.shape[0]
    P = D.shape[1]
    nmax = 0
    for i in range(k):
        if lengths[i] > nmax:
            nmax = lengths[i]

    # mixed-radix strides, last series fastest
    stride = np.empty(k, np.int64)
    st = 1
    for i in range(k - 1, -1, -1):
        stride[i] = st
        st *= lengths[i] + 1

    # per-mask stride sums for predecessor rows
    nmask = 1 << k
    msum = np.zeros(nmask, np.int64)
    for mask in range(1, nmask):
        t = 0
        for i in range(k):
            if mask >> i & 1:
                t += stride[i]
        msum[mask] = t

    # position bookkeeping: digits, validity, window, reachability
    digits = np.zeros((P, k), np.int64)
    ok = np.zeros(P, np.uint8)
    shift = np.zeros(P, np.int64)  # sum of (p_i - 1) for valid rows
    rows_skipped = 0
    for f in range(P):
        rem = f
        lo = 1 << 60
        hi = -(1 << 60)
        anyzero = False
        ss = 0
        for i in range(k):
            d = rem // stride[i]
            rem -= d * stride[i]
            digits[f, i] = d
            if d == 0:
                anyzero = True
            else:
                if d < lo:
                    lo = d
                if d > hi:
                    hi = d
                ss += d - 1
        if anyzero:
            continue
        if window >= 0 and hi - lo > window:
            rows_skipped += 1
            continue
        ok[f] = 1
        shift[f] = ss

    # cost slabs: move, merge, and grid index of each input point
    M = np.zeros((k, nmax + 1, r), np.float64)
    ME = np.full((k, nmax + 1, r), np.inf)
    xidx = np.zeros((k, nmax + 1), np.int64)
    for i in range(k):
        for p in range(1, lengths[i] + 1):
            xp = xs[i, p]
            for s in range(r):
                M[i, p, s] = abs(xp - V[s])
            if p >= 2:
                xpm = xs[i, p - 1]
                for s in range(r):
                    ME[i, p, s] = _cost(xp, xpm, V[s], c)
            xidx[i, p] = np.searchsorted(V, xp)

    # split slab, only for the fallback path (split sets of size >= 3)
    need_sp = k >= 4 or (allow_empty and k >= 3)
    if need_sp:
        SP = np.zeros((k, nmax + 1, r, r), np.float64)
        for i in range(k):
            for p in range(1, lengths[i] + 1):
                xp = xs[i, p]
                for s in range(r):
                    vs = V[s]
                    for s2 in range(r):
                        SP[i, p, s, s2] = _cost(vs, xp, V[s2], c)
    else:
        SP = np.zeros((1, 1, 1, 1), np.float64)

    # prefix/suffix minima over s of the previous level's rows
    PM = np.full((P, r), np.inf)
    SM = np.full((P, r), np.inf)

    row = np.empty(r, np.float64)
    tmp = np.empty(r, np.float64)
    mv = np.empty(r, np.float64)
    hbuf = np.empty(r, np.float64)
    spbits = np.empty(k, np.int64)

    base_flat = msum[nmask - 1]  # position (1, ..., 1)
    rows_computed = 0

    # level 0 (mean length 1): base case, then merge-only expansion
    for s in range(r):
        acc = 0.0
        for i in range(k):
            acc += M[i, 1, s]
        row[s] = acc
    rmin = np.inf
    for s in range(r):
        D[0, base_flat, s] = row[s]
        if row[s] < rmin:
            rmin = row[s]
    R[0, base_flat] = rmin
    rows_computed += 1

    for f in range(base_flat + 1, P):
        if ok[f] == 0:
            continue
        rows_computed += 1
        for s in range(r):
            row[s] = np.inf
        for mask in range(1, nmask):
            pred = f - msum[mask]
            if R[0, pred] == np.inf:
                continue
            for s in range(r):
                tmp[s] = D[0, pred, s]
            for i in range(k):
                if mask >> i & 1:
                    p = digits[f, i]
                    for s in range(r):
                        tmp[s] += ME[i, p, s]
            for s in range(r):
                if tmp[s] < row[s]:
                    row[s] = tmp[s]
        rmin = np.inf
        for s in range(r):
            D[0, f, s] = row[s]
            if row[s] < rmin:
                rmin = row[s]
        R[0, f] = rmin

    # levels 1 .. L-1 (mean lengths 2 .. L)
    mo_lo = 0 if allow_empty else 1
    for li in range(1, L):
        # prefix/suffix minima of the level just finished; rows whose R
        # is +inf are never consulted, so stale entries there are fine
        for f in range(P):
            if ok[f] == 0 or R[li - 1, f] == np.inf:
                continue
            dpr = D[li - 1, f]
            m = np.inf
            for s in range(r):
                if dpr[s] < m:
                    m = dpr[s]
                PM[f, s] = m
            m = np.inf
            for s in range(r - 1, -1, -1):
                if dpr[s] < m:
                    m = dpr[s]
                SM[f, s] = m

        for f in range(P):
            if ok[f] == 0:
                continue
            rows_computed += 1
            if not allow_empty and li > shift[f]:
                # unreachable: every step consumes at least one input
                # point, so mean length 1 + shift is the ceiling here
                continue
            for s in range(r):
                row[s] = np.inf

            # merge candidates (same level)
            for mask in range(1, nmask):
                pred = f - msum[mask]
                if R[li, pred] == np.inf:
                    continue
                for s in range(r):
                    tmp[s] = D[li, pred, s]
                for i in range(k):
                    if mask >> i & 1:
                        p = digits[f, i]
                        for s in range(r):
                            tmp[s] += ME[i, p, s]
                for s in range(r):
                    if tmp[s] < row[s]:
                        row[s] = tmp[s]

            # move/split candidates (previous level)
            for mo in range(mo_lo, nmask):
                pred = f - msum[mo]
                rmp = R[li - 1, pred]
                if rmp == np.inf:
                    continue
                for s in range(r):
                    mv[s] = 0.0
                for i in range(k):
                    if mo >> i & 1:
                        p = digits[f, i]
                        for s in range(r):
                            mv[s] += M[i, p, s]
                sp = (nmask - 1) ^ mo
                if sp == 0:
                    for s in range(r):
                        cand = mv[s] + rmp
                        if cand < row[s]:
                            row[s] = cand
                    continue
                nb = 0
                for i in range(k):
                    if sp >> i & 1:
                        spbits[nb] = i
                        nb += 1
                dp = D[li - 1, pred]
                pm = PM[pred]
                sm = SM[pred]
                if nb == 1:
                    i1 = spbits[0]
                    b = xs[i1, digits[f, i1]]
                    ib = xidx[i1, digits[f, i1]]
                    # b above the target value a: flat for d <= a, ramp
                    # on (a, b], saturated past b
                    smB = sm[ib + 1] + (c + b) if ib + 1 < r else np.inf
                    rminB = np.inf
                    for s in range(ib - 1, -1, -1):
                        t = dp[s + 1] + V[s + 1]
                        if t < rminB:
                            rminB = t
                        a = V[s]
                        best = pm[s] + c
                        t2 = rminB + (c - a)
                        if t2 < best:
                            best = t2
                        t3 = smB - a
                        if t3 < best:
                            best = t3
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand
                    # b below a: flat for d >= a, ramp on [b, a),
                    # saturated below b
                    pm0 = pm[ib - 1] + (c - b) if ib >= 1 else np.inf
                    rminA = np.inf
                    for s in range(ib, r):
                        if s > ib:
                            t = dp[s - 1] - V[s - 1]
                            if t < rminA:
                                rminA = t
                        a = V[s]
                        best = sm[s] + c
                        t2 = rminA + (c + a)
                        if t2 < best:
                            best = t2
                        t3 = pm0 + a
                        if t3 < best:
                            best = t3
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand
                elif nb == 2:
                    i1 = spbits[0]
                    i2 = spbits[1]
                    b1 = xs[i1, digits[f, i1]]
                    b2 = xs[i2, digits[f, i2]]
                    ib1 = xidx[i1, digits[f, i1]]
                    ib2 = xidx[i2, digits[f, i2]]
                    if ib1 <= ib2:
                        im, iM, bm, bM = ib1, ib2, b1, b2
                    else:
                        im, iM, bm, bM = ib2, ib1, b2, b1
                    pm0 = pm[im - 1] if im >= 1 else np.inf
                    sm0 = sm[iM + 1] if iM + 1 < r else np.inf
                    # fixed-interval minima between the two breakpoints
                    fAA = np.inf  # min of dp - V over [im, iM)
                    for s2 in range(im, iM):
                        t = dp[s2] - V[s2]
                        if t < fAA:
                            fAA = t
                    fBB = np.inf  # min of dp + V over (im, iM]
                    for s2 in range(im + 1, iM + 1):
                        t = dp[s2] + V[s2]
                        if t < fBB:
                            fBB = t
                    cc = 2.0 * c
                    # segment a < bm: both split points above a
                    rminB2 = np.inf
                    for s in range(im - 1, -1, -1):
                        t = dp[s + 1] + 2.0 * V[s + 1]
                        if t < rminB2:
                            rminB2 = t
                        a = V[s]
                        best = pm[s] + cc
                        t2 = rminB2 + (cc - 2.0 * a)
                        if t2 < best:
                            best = t2
                        t3 = fBB + (cc + (bm - 2.0 * a))
                        if t3 < best:
                            best = t3
                        t4 = sm0 + (cc + (b1 - a) + (b2 - a))
                        if t4 < best:
                            best = t4
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand
                    # segment bm <= a < bM: one split point on each side
                    if im < iM:
                        hb = np.inf
                        for s in range(iM - 1, im - 1, -1):
                            t = dp[s + 1] + V[s + 1]
                            if t < hb:
                                hb = t
                            hbuf[s] = hb
                        rminA1 = np.inf
                        for s in range(im, iM):
                            t = dp[s] - V[s]
                            if t < rminA1:
                                rminA1 = t
                            a = V[s]
                            best = rminA1 + (cc + a)
                            t2 = pm0 + (cc + (a - bm))
                            if t2 < best:
                                best = t2
                            t3 = hbuf[s] + (cc - a)
                            if t3 < best:
                                best = t3
                            t4 = sm0 + (cc + (bM - a))
                            if t4 < best:
                                best = t4
                            cand = mv[s] + best
                            if cand < row[s]:
                                row[s] = cand
                    # segment a >= bM: both split points below a
                    rmin2 = np.inf
                    for s in range(iM, r):
                        if s > iM:
                            t = dp[s - 1] - 2.0 * V[s - 1]
                            if t < rmin2:
                                rmin2 = t
                        a = V[s]
                        best = sm[s] + cc
                        t2 = rmin2 + (cc + 2.0 * a)
                        if t2 < best:
                            best = t2
                        t3 = fAA + (cc + (2.0 * a - bM))
                        if t3 < best:
                            best = t3
                        t4 = pm0 + (cc + (a - b1) + (a - b2))
                        if t4 < best:
                            best = t4
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand
                else:
                    for s in range(r):
                        best = np.inf
                        for s2 in range(r):
                            t = dp[s2]
                            for j in range(nb):
                                i = spbits[j]
                                t += SP[i, digits[f, i], s, s2]
                            if t < best:
                                best = t
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand

            rmin = np.inf
            for s in range(r):
                D[li, f, s] = row[s]
                if row[s] < rmin:
                    rmin = row[s]
            R[li, f] = rmin

    return rows_computed, rows_skipped


@njit(cache=True)
def fill_mean_table_reference(D, R, xs, lengths, V, c, window, allow_empty):
    """Direct-loop twin of ``fill_mean_table`` in strict IEEE order.

    Same table semantics, O(r^2) inner minimization over s' with the
    canonical summation order and no fastmath; kept as the differential
    oracle for the sweep-based fast paths above.
    """
    k = lengths.size
    r = V.size
    L = D.shape[0]
    P = D.shape[1]
    nmax = 0
    for i in range(k):
        if lengths[i] > nmax:
            nmax = lengths[i]

    stride = np.empty(k, np.int64)
    st = 1
    for i in range(k - 1, -1, -1):
        stride[i] = st
        st *= lengths[i] + 1

    nmask = 1 << k
    msum = np.zeros(nmask, np.int64)
    for mask in range(1, nmask):
        t = 0
        for i in range(k):
            if mask >> i & 1:
                t += stride[i]
        msum[mask] = t

    digits = np.zeros((P, k), np.int64)
    ok = np.zeros(P, np.uint8)
    shift = np.zeros(P, np.int64)
    rows_skipped = 0
    for f in range(P):
        rem = f
        lo = 1 << 60
        hi = -(1 << 60)
        anyzero = False
        ss = 0
        for i in range(k):
            d = rem // stride[i]
            rem -= d * stride[i]
            digits[f, i] = d
            if d == 0:
                anyzero = True
            else:
                if d < lo:
                    lo = d
                if d > hi:
                    hi = d
                ss += d - 1
        if anyzero:
            continue
        if window >= 0 and hi - lo > window:
            rows_skipped += 1
            continue
        ok[f] = 1
        shift[f] = ss

    M = np.zeros((k, nmax + 1, r), np.float64)
    ME = np.full((k, nmax + 1, r), np.inf)
    SP = np.zeros((k, nmax + 1, r, r), np.float64)
    for i in range(k):
        for p in range(1, lengths[i] + 1):
            xp = xs[i, p]
            for s in range(r):
                M[i, p, s] = abs(xp - V[s])
            if p >= 2:
                xpm = xs[i, p - 1]
                for s in range(r):
                    ME[i, p, s] = _cost(xp, xpm, V[s], c)
            for s in range(r):
                vs = V[s]
                for s2 in range(r):
                    SP[i, p, s, s2] = _cost(vs, xp, V[s2], c)

    row = np.empty(r, np.float64)
    tmp = np.empty(r, np.float64)
    mv = np.empty(r, np.float64)
    spbits = np.empty(k, np.int64)

    base_flat = msum[nmask - 1]
    rows_computed = 0

    for s in range(r):
        acc = 0.0
        for i in range(k):
            acc += M[i, 1, s]
        row[s] = acc
    rmin = np.inf
    for s in range(r):
        D[0, base_flat, s] = row[s]
        if row[s] < rmin:
            rmin = row[s]
    R[0, base_flat] = rmin
    rows_computed += 1

    for f in range(base_flat + 1, P):
        if ok[f] == 0:
            continue
        rows_computed += 1
        for s in range(r):
            row[s] = np.inf
        for mask in range(1, nmask):
            pred = f - msum[mask]
            if R[0, pred] == np.inf:
                continue
            for s in range(r):
                tmp[s] = D[0, pred, s]
            for i in range(k):
                if mask >> i & 1:
                    p = digits[f, i]
                    for s in range(r):
                        tmp[s] += ME[i, p, s]
            for s in range(r):
                if tmp[s] < row[s]:
                    row[s] = tmp[s]
        rmin = np.inf
        for s in range(r):
            D[0, f, s] = row[s]
            if row[s] < rmin:
                rmin = row[s]
        R[0, f] = rmin

    mo_lo = 0 if allow_empty else 1
    for li in range(1, L):
        for f in range(P):
            if ok[f] == 0:
                continue
            rows_computed += 1
            if not allow_empty and li > shift[f]:
                continue
            for s in range(r):
                row[s] = np.inf

            for mask in range(1, nmask):
                pred = f - msum[mask]
                if R[li, pred] == np.inf:
                    continue
                for s in range(r):
                    tmp[s] = D[li, pred, s]
                for i in range(k):
                    if mask >> i & 1:
                        p = digits[f, i]
                        for s in range(r):
                            tmp[s] += ME[i, p, s]
                for s in range(r):
                    if tmp[s] < row[s]:
                        row[s] = tmp[s]

            for mo in range(mo_lo, nmask):
                pred = f - msum[mo]
                if R[li - 1, pred] == np.inf:
                    continue
                for s in range(r):
                    mv[s] = 0.0
                for i in range(k):
                    if mo >> i & 1:
                        p = digits[f, i]
                        for s in range(r):
                            mv[s] += M[i, p, s]
                sp = (nmask - 1) ^ mo
                dp = D[li - 1, pred]
                if sp == 0:
                    rm = R[li - 1, pred]
                    for s in range(r):
                        cand = mv[s] + rm
                        if cand < row[s]:
                            row[s] = cand
                else:
                    nb = 0
                    for i in range(k):
                        if sp >> i & 1:
                            spbits[nb] = i
                            nb += 1
                    for s in range(r):
                        best = np.inf
                        for s2 in range(r):
                            t = dp[s2]
                            for j in range(nb):
                                i = spbits[j]
                                t += SP[i, digits[f, i], s, s2]
                            if t < best:
                                best = t
                        cand = mv[s] + best
                        if cand < row[s]:
                            row[s] = cand

            rmin = np.inf
            for s in range(r):
                D[li, f, s] = row[s]
                if row[s] < rmin:
                    rmin = row[s]
            R[li, f] = rmin

    return rows_computed, rows_skipped


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


@njit(cache=True)
def brute_force_scan(xs, lengths, c, V, L_max):
    """Score every V-valued sequence of length 1..L_max by its sum of
    pairwise distances to the padded input series ``xs``.

    Enumeration order is length ascending, then lexicographic in the
    value indices; only strictly better candidates replace the
    incumbent, so the returned minimizer is the first in that order.

    Returns (best_cost, best_len, best_digits).
    """
    k = lengths.size
    r = V.size
    nmax = 0
    for i in range(k):
        if lengths[i] > nmax:
            nmax = lengths[i]

    digits = np.zeros(L_max, np.int64)
    best_digits = np.zeros(L_max, np.int64)
    cand = np.empty(L_max, np.float64)
    buf_n = max(L_max, nmax)
    prev = np.empty(buf_n, np.float64)
    cur = np.empty(buf_n, np.float64)
    best_cost = np.inf
    best_len = 0

    for L in range(1, L_max + 1):
        for t in range(L):
            digits[t] = 0
            cand[t] = V[0]
        while True:
            total = 0.0
            abandoned = False
            for i in range(k):
                total += _pairwise_into(xs[i], lengths[i], cand, L, c, prev, cur)
                if total >= best_cost:
                    abandoned = True
                    break
            if not abandoned and total < best_cost:
                best_cost = total
                best_len = L
                for t in range(L):
                    best_digits[t] = digits[t]
            pos = L - 1
            while pos >= 0:
                digits[pos] += 1
                if digits[pos] < r:
                    cand[pos] = V[digits[pos]]
                    break
                digits[pos] = 0
                cand[pos] = V[0]
                pos -= 1
            if pos < 0:
                break

    return best_cost, best_len, best_digits
