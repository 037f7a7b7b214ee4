"""Domain types shared by every other module.

Time series are plain sequences of finite 64-bit floats.  A problem
instance bundles k series with the split/merge cost constant c.  The
value set V(X) is the sorted union of all point values of an instance;
it is the candidate alphabet from which mean points are drawn.

All types are immutable after construction and safe to share across
threads.  Indices in documentation are 1-based to match the usual
recurrence notation; storage is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TimeSeries",
    "ProblemInstance",
    "ValueSet",
    "SolverOptions",
    "InfeasibleWindowError",
    "build_value_set",
    "max_mean_length_bound",
]


class InfeasibleWindowError(ValueError):
    """The window is too small for the instance's length spread: the
    final table entry itself would be windowed out."""


def _as_points(points: Iterable[float]) -> np.ndarray:
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim != 1:
        raise ValueError(f"time series points must be one-dimensional, got shape {arr.shape}")
    if arr.size < 1:
        raise ValueError("time series must contain at least one point")
    if not np.all(np.isfinite(arr)):
        raise ValueError("time series points must be finite (no NaN, no infinity)")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """A finite sequence of real-valued points with an optional class label.

    Parameters
    ----------
    points : array-like of float
        The values x_1, ..., x_n.  Must be non-empty and finite.
    label : str, optional
        Opaque class identifier (e.g. a UCR class label).
    """

    points: np.ndarray
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "points", _as_points(self.points))

    def __len__(self) -> int:
        return int(self.points.size)

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            len(self) == len(other)
            and bool(np.all(self.points == other.points))
            and self.label == other.label
        )

    def __hash__(self):
        return hash((self.points.tobytes(), self.label))

    def __repr__(self) -> str:
        vals = ",".join(format(v, "g") for v in self.points[:8])
        if len(self) > 8:
            vals += ",..."
        lab = f", label={self.label!r}" if self.label is not None else ""
        return f"TimeSeries(({vals}), n={len(self)}{lab})"


@dataclass(frozen=True)
class ProblemInstance:
    """A set X of k time series together with the split/merge cost c.

    Invariants: k >= 1, c >= 0, and every member satisfies the
    :class:`TimeSeries` invariants.
    """

    series: tuple[TimeSeries, ...]
    c: float

    def __post_init__(self):
        series = tuple(
            s if isinstance(s, TimeSeries) else TimeSeries(s) for s in self.series
        )
        if len(series) < 1:
            raise ValueError("an instance needs at least one time series")
        c = float(self.c)
        if not np.isfinite(c) or c < 0.0:
            raise ValueError(f"cost constant c must be finite and nonnegative, got {self.c}")
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "c", c)

    @property
    def k(self) -> int:
        return len(self.series)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.series)

    @property
    def n_max(self) -> int:
        return max(self.lengths)

    @property
    def n_min(self) -> int:
        return min(self.lengths)


@dataclass(frozen=True)
class ValueSet:
    """Sorted, deduplicated union V(X) of all point values of an instance.

    Deduplication uses exact floating-point equality; near-equal values
    stay distinct (merging close values is the discretization
    heuristic's job, not the value set's).
    """

    values: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("a value set must be a non-empty 1-d sequence")
        if not np.all(np.diff(arr) > 0):
            raise ValueError("value set must be strictly increasing")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self):
        return iter(self.values)

    def index_of(self, value: float) -> int:
        """Return the 0-based index of ``value``, which must be a member."""
        i = int(np.searchsorted(self.values, value))
        if i >= len(self) or self.values[i] != value:
            raise KeyError(f"{value!r} is not in the value set")
        return i


def build_value_set(instance: ProblemInstance) -> ValueSet:
    """Build V(X), the sorted set union of all point values of ``instance``.

    Every value of every input point appears exactly once; nothing else
    does.  |V(X)| <= sum of the series lengths.
    """
    return ValueSet(np.unique(np.concatenate([s.points for s in instance.series])))


def max_mean_length_bound(instance: ProblemInstance) -> int:
    """Maximum useful mean length: (n_max - 1) * k + 1.

    No mean is ever longer: every step of the mean recurrence consumes
    at least one input point, so a longer mean would contain a point
    produced purely by splits, which is never optimal.
    """
    return (instance.n_max - 1) * instance.k + 1


@dataclass(frozen=True)
class SolverOptions:
    """Configuration for the mean solver.

    Parameters
    ----------
    max_mean_length : int or None
        Upper bound on the length of the computed mean.  ``None`` means
        unbounded, which resolves to the (n_max - 1) * k + 1 bound.
        Explicit values above that bound are clamped to it (extra
        length provably never helps); values below 1 are rejected.
    window : int or None
        Window size d of the position-window heuristic: table entries
        whose positions (p_1, ..., p_k) satisfy max_i p_i - min_j p_j > d
        are skipped.  ``None`` disables the heuristic.  With unequal
        series lengths the window must satisfy d >= n_max - n_min or the
        final entry itself would be skipped.
    allow_empty_move_set : bool
        If False (default), the move/split step of the recurrence only
        enumerates partitions whose move set is non-empty — pure-split
        steps are provably never optimal.  Setting True enumerates the
        empty move set too; the optimum is unchanged and the equivalence
        is property-tested rather than assumed.
    mem_cap_gib : float
        Memory guard: refuse to allocate a DP table estimated above
        this many GiB (before allocation, not after the fact).
    """

    max_mean_length: int | None = None
    window: int | None = None
    allow_empty_move_set: bool = False
    mem_cap_gib: float = 8.0

    def __post_init__(self):
        if self.max_mean_length is not None:
            m = int(self.max_mean_length)
            if m < 1:
                raise ValueError(f"max_mean_length must be >= 1, got {self.max_mean_length}")
            object.__setattr__(self, "max_mean_length", m)
        if self.window is not None:
            w = int(self.window)
            if w < 0:
                raise ValueError(f"window must be >= 0, got {self.window}")
            object.__setattr__(self, "window", w)
        if float(self.mem_cap_gib) <= 0:
            raise ValueError("mem_cap_gib must be positive")
        object.__setattr__(self, "mem_cap_gib", float(self.mem_cap_gib))

    def resolved_max_length(self, instance: ProblemInstance) -> int:
        """The effective mean-length bound for ``instance``."""
        bound = max_mean_length_bound(instance)
        if self.max_mean_length is None:
            return bound
        return min(self.max_mean_length, bound)

    def validate_for(self, instance: ProblemInstance) -> None:
        """Raise InfeasibleWindowError if these options cannot work for
        ``instance``."""
        if self.window is not None:
            spread = instance.n_max - instance.n_min
            if self.window < spread:
                raise InfeasibleWindowError(
                    f"window {self.window} is infeasible: with series lengths "
                    f"{instance.lengths} the final position spread is {spread}, "
                    f"so the window must be at least {spread}"
                )
