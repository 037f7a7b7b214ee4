"""Exact mean (barycenter) of k time series under the MSM metric.

The solver fills a (k+2)-dimensional table D[p, l, s]: the cheapest
cost of transforming the k prefixes ending at positions p = (p_1, ...,
p_k) into a mean prefix of length l whose last point is the candidate
value v_s.  Candidate values are restricted to V(X) — some optimal mean
uses only input values — and the mean length never needs to exceed
(n_max - 1) * k + 1, since every step of the recurrence consumes at
least one input point.

Each entry is the minimum of two families of predecessors:

* move/split (level l-1): a partition of the k series into a move set
  (series whose current point is matched to v_s, consuming the point)
  and a split set (series whose current point stays and is charged the
  split of v_s off the previous mean value v_s');
* merge (same level): a non-empty subset of series merge their current
  point into its predecessor, charged against v_s.

A traceback over the filled table reconstructs one optimal mean,
emitting a point whenever the level decreases.

The optional window heuristic skips all rows whose positions spread
more than d apart, trading exactness for a much smaller table.
"""

from __future__ import annotations

import dataclasses
import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import (
    ProblemInstance,
    SolverOptions,
    TimeSeries,
    ValueSet,
    build_value_set,
    max_mean_length_bound,
)
from .distance import cost_c, sum_distance

__all__ = [
    "MeanTable",
    "MeanResult",
    "MemoryBudgetExceeded",
    "estimate_table_bytes",
    "fill_table",
    "traceback",
    "compute_mean",
]

#: relative tolerance for matching a predecessor candidate against a
#: stored entry during traceback; entries are short sums whose rounding
#: differs from the re-derived candidates by a few ulp at most
TRACEBACK_RTOL = 1e-12


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= TRACEBACK_RTOL * (1.0 + abs(b))


class MemoryBudgetExceeded(RuntimeError):
    """Raised before allocation when the table would exceed the memory cap."""

    def __init__(self, est_bytes: int, cap_bytes: int):
        self.est_bytes = est_bytes
        self.cap_bytes = cap_bytes
        super().__init__(
            f"mean table would need ~{est_bytes / 2**30:.3g} GiB "
            f"({est_bytes} bytes), above the configured cap of "
            f"{cap_bytes / 2**30:.3g} GiB"
        )


def _estimate_bytes(k: int, nmax: int, P: int, L: int, r: int, need_sp: bool) -> int:
    slabs = 2 * k * (nmax + 1) * r  # move + merge cost slabs
    sweep = 2 * P * r  # prefix/suffix minima of the previous level
    sp = k * (nmax + 1) * r * r if need_sp else 0
    return 8 * (L * P * r + L * P + slabs + sweep + sp)


def _needs_split_slab(k: int, allow_empty: bool) -> bool:
    return k >= 4 or (allow_empty and k >= 3)


def estimate_table_bytes(instance: ProblemInstance, options: SolverOptions) -> int:
    """Bytes the solver will allocate for ``instance`` (table + row minima
    + cost slabs), before any allocation happens."""
    r = len(build_value_set(instance))
    L = options.resolved_max_length(instance)
    P = 1
    for n in instance.lengths:
        P *= n + 1
    need_sp = _needs_split_slab(instance.k, options.allow_empty_move_set)
    return _estimate_bytes(instance.k, instance.n_max, P, L, r, need_sp)


@dataclass(frozen=True)
class MeanTable:
    """Filled DP table plus fill statistics.

    ``D`` has shape (L_max, P, r): level index l-1, flat mixed-radix
    position (radix n_i + 1, digit 0 being the p_i < 1 sentinel), and
    value index s.  Infeasible, windowed-out, and sentinel entries hold
    +inf.  ``entries_computed`` counts stored entries (rows the fill
    pass decided, times r); ``entries_skipped`` counts windowed-out
    entries across all levels.
    """

    extents: tuple
    D: np.ndarray
    row_min: np.ndarray
    values: ValueSet
    lengths: tuple
    strides: tuple
    entries_computed: int
    entries_skipped: int
    resolved_max_length: int
    window: int | None
    allow_empty_move_set: bool

    def flat_index(self, p) -> int:
        """Flat row index of a 1-based position tuple ``p``."""
        if len(p) != len(self.lengths):
            raise ValueError("position tuple has wrong arity")
        f = 0
        for pi, ni, st in zip(p, self.lengths, self.strides):
            if not 0 <= pi <= ni:
                raise IndexError(f"position {p} out of range for lengths {self.lengths}")
            f += pi * st
        return f

    def entry(self, p, ell: int, s: int) -> float:
        """Entry D[p, ell, s] with 1-based position/level/value indices."""
        if not 1 <= ell <= self.D.shape[0]:
            raise IndexError(f"level {ell} out of range 1..{self.D.shape[0]}")
        if not 1 <= s <= self.D.shape[2]:
            raise IndexError(f"value index {s} out of range 1..{self.D.shape[2]}")
        return float(self.D[ell - 1, self.flat_index(p), s - 1])


@dataclass(frozen=True)
class MeanResult:
    """A computed mean with its cost and solve diagnostics.

    ``cost`` is the sum of pairwise distances from the returned mean to
    the input series, recomputed after the traceback.  ``table_cost`` is
    the optimal value read off the table's final entry.  Without a
    window the two agree to rounding; with a window the traced sequence
    can genuinely beat the window-restricted table value (its pairwise
    alignments are free to leave the window), so ``cost`` may be
    smaller.
    """

    mean: TimeSeries
    cost: float
    table_cost: float
    mean_length: int
    table_entries_computed: int
    table_entries_skipped: int
    wall_time: float
    options_used: SolverOptions
    value_count: int
    est_bytes: int


def _padded_inputs(instance: ProblemInstance):
    k = instance.k
    nmax = instance.n_max
    xs = np.zeros((k, nmax + 1), np.float64)
    for i, s in enumerate(instance.series):
        xs[i, 1 : len(s) + 1] = s.points
    lengths = np.asarray(instance.lengths, np.int64)
    return xs, lengths


def fill_table(instance: ProblemInstance, options: SolverOptions | None = None) -> MeanTable:
    """Fill the mean DP table for ``instance``.

    Raises
    ------
    ValueError
        If the window is smaller than n_max - n_min (the final entry
        itself would be windowed out).
    MemoryBudgetExceeded
        If the estimated allocation exceeds ``options.mem_cap_gib``.
    """
    options = options or SolverOptions()
    options.validate_for(instance)

    vs = build_value_set(instance)
    V = vs.values
    r = len(vs)
    L = options.resolved_max_length(instance)
    lengths = instance.lengths
    P = 1
    for n in lengths:
        P *= n + 1

    est = estimate_table_bytes(instance, options)
    cap = int(options.mem_cap_gib * 2**30)
    if est > cap:
        raise MemoryBudgetExceeded(est, cap)

    xs, lengths_arr = _padded_inputs(instance)
    D = np.full((L, P, r), np.inf, np.float64)
    R = np.full((L, P), np.inf, np.float64)
    window = -1 if options.window is None else int(options.window)
    rows_computed, rows_skipped = _kernels.fill_mean_table(
        D, R, xs, lengths_arr, V, instance.c, window, options.allow_empty_move_set
    )

    strides = []
    st = 1
    for n in reversed(lengths):
        strides.append(st)
        st *= n + 1
    strides = tuple(reversed(strides))

    return MeanTable(
        extents=(*lengths, L, r),
        D=D,
        row_min=R,
        values=vs,
        lengths=lengths,
        strides=strides,
        entries_computed=int(rows_computed) * r,
        entries_skipped=int(rows_skipped) * L * r,
        resolved_max_length=L,
        window=options.window,
        allow_empty_move_set=options.allow_empty_move_set,
    )


def _start_entry(table: MeanTable):
    """Minimizing (level index, value index) at the final position, scanning
    levels then values in ascending order and keeping the first strict
    minimum (ties prefer shorter means)."""
    f = table.flat_index(table.lengths)
    vals = table.D[:, f, :]
    best = math.inf
    best_li = -1
    best_s = -1
    L, r = vals.shape
    for li in range(L):
        row = vals[li]
        s = int(np.argmin(row))
        v = float(row[s])
        if v < best:
            best = v
            best_li = li
            best_s = s
    if not math.isfinite(best):
        raise RuntimeError(
            "no finite entry at the final position; the table was not "
            "filled for this instance"
        )
    return best_li, best_s, best, f


def traceback(table: MeanTable, instance: ProblemInstance) -> MeanResult:
    """Walk the filled table from the optimal final entry back to the base
    case, re-deriving one achieving predecessor per step.

    Candidates are probed in a fixed order — merge subsets by ascending
    bitmask, then move/split candidates by ascending previous value s'
    and ascending move-set bitmask — and the first one matching the
    stored entry within a relative 1e-12 is taken, so results are
    deterministic.  A mean point is emitted exactly when the level
    decreases.
    """
    t0 = time.perf_counter()
    k = instance.k
    c = instance.c
    V = table.values.values
    r = len(V)
    D = table.D
    strides = table.strides
    xs = [s.points for s in instance.series]
    nmask = 1 << k
    mo_lo = 0 if table.allow_empty_move_set else 1
    masks_bits = [[i for i in range(k) if m >> i & 1] for m in range(nmask)]
    mask_fsum = [sum(strides[i] for i in bits) for bits in masks_bits]

    li, s, start_val, f = _start_entry(table)
    p = list(table.lengths)
    val = start_val
    mean_rev = [float(V[s])]

    max_steps = table.resolved_max_length + sum(table.lengths) + 8
    for _ in range(max_steps):
        if li == 0 and all(pi == 1 for pi in p):
            break
        found = False

        # merge candidates: same level, current value index
        for mask in range(1, nmask):
            bits = masks_bits[mask]
            if any(p[i] == 1 for i in bits):
                continue
            pf = f - mask_fsum[mask]
            dval = D[li, pf, s]
            if not math.isfinite(dval):
                continue
            t = dval
            for i in bits:
                t += cost_c(xs[i][p[i] - 1], xs[i][p[i] - 2], V[s], c)
            if _close(t, val):
                for i in bits:
                    p[i] -= 1
                f = pf
                val = dval
                found = True
                break

        # move/split candidates: previous level
        if not found and li >= 1:
            for s2 in range(r):
                for mo in range(mo_lo, nmask):
                    bits = masks_bits[mo]
                    if any(p[i] == 1 for i in bits):
                        continue
                    pf = f - mask_fsum[mo]
                    dval = D[li - 1, pf, s2]
                    if not math.isfinite(dval):
                        continue
                    mv = 0.0
                    for i in bits:
                        mv += abs(xs[i][p[i] - 1] - V[s])
                    inner = dval
                    for i in range(k):
                        if not mo >> i & 1:
                            inner += cost_c(V[s], xs[i][p[i] - 1], V[s2], c)
                    cand = mv + inner
                    if _close(cand, val):
                        for i in bits:
                            p[i] -= 1
                        f = pf
                        li -= 1
                        s = s2
                        val = dval
                        mean_rev.append(float(V[s2]))
                        found = True
                        break
                if found:
                    break

        if not found:
            raise RuntimeError(
                f"traceback found no achieving predecessor at position "
                f"{tuple(p)}, level {li + 1}, value index {s + 1} "
                f"(stored {val!r}); this indicates a fill bug"
            )
    else:
        raise RuntimeError("traceback did not terminate; this indicates a fill bug")

    mean = TimeSeries(np.array(mean_rev[::-1], np.float64))
    L, P, r = D.shape
    need_sp = _needs_split_slab(k, table.allow_empty_move_set)
    return MeanResult(
        mean=mean,
        cost=sum_distance(instance, mean),
        table_cost=float(start_val),
        mean_length=len(mean),
        table_entries_computed=table.entries_computed,
        table_entries_skipped=table.entries_skipped,
        wall_time=time.perf_counter() - t0,
        options_used=SolverOptions(
            max_mean_length=table.resolved_max_length,
            window=table.window,
            allow_empty_move_set=table.allow_empty_move_set,
        ),
        value_count=len(table.values),
        est_bytes=_estimate_bytes(k, instance.n_max, P, L, r, need_sp),
    )


def compute_mean(instance: ProblemInstance, options: SolverOptions | None = None) -> MeanResult:
    """Compute an optimal (or window-restricted) mean of ``instance``.

    Composition of :func:`fill_table` and :func:`traceback`;
    deterministic for fixed inputs and options.
    """
    options = options or SolverOptions()
    t0 = time.perf_counter()
    table = fill_table(instance, options)
    result = traceback(table, instance)
    wall = time.perf_counter() - t0
    return dataclasses.replace(result, wall_time=wall, options_used=options)
