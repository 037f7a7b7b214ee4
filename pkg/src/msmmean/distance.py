"""Pairwise Move-Split-Merge distance.

The distance between two series is the minimum total cost of
transforming one into the other with three operations:

* move — change one value by w, cost |w|;
* split — duplicate a point into two adjacent equal points, cost c;
* merge — fuse two adjacent equal points, cost c.

It is computed by a two-dimensional dynamic program over table entries
D*[i, j] (cost of transforming the first i points of x into the first
j points of y), rolled into two rows since only the distance value is
needed.  The recurrence takes the minimum of a move (diagonal), a merge
of x_i into x_{i-1}, and a split producing y_j next to y_{j-1}; the
split/merge charge is ``cost_c``.  For c > 0 the distance is a metric.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .core import ProblemInstance, TimeSeries

__all__ = ["cost_c", "msm_distance", "sum_distance"]


def cost_c(xi: float, xi_prev: float, yj: float, c: float) -> float:
    """Split/merge charge C(x_i, x_{i-1}, y_j).

    Returns ``c`` when ``xi`` lies (weakly) between ``xi_prev`` and
    ``yj``; otherwise ``c`` plus the smaller of the distances from
    ``xi`` to the two reference points.

    Examples
    --------
    >>> cost_c(2, 1, 3, 0.1)
    0.1
    >>> cost_c(5, 1, 3, 0.1)
    2.1
    """
    xi = float(xi)
    xi_prev = float(xi_prev)
    yj = float(yj)
    c = float(c)
    if (xi_prev <= xi <= yj) or (xi_prev >= xi >= yj):
        return c
    return c + min(abs(xi - xi_prev), abs(xi - yj))


def _points(x) -> np.ndarray:
    if isinstance(x, TimeSeries):
        return x.points
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("a series must be a non-empty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series values must be finite")
    return arr


def msm_distance(x, y, c: float) -> float:
    """Move-Split-Merge distance between two series.

    Parameters
    ----------
    x, y : TimeSeries or array-like of float
        The two series; lengths may differ.
    c : float
        Nonnegative split/merge cost constant.

    Returns
    -------
    float
        The minimum total transformation cost.  Symmetric in x and y;
        0 iff x equals y pointwise (for c > 0).
    """
    c = float(c)
    if not np.isfinite(c) or c < 0:
        raise ValueError(f"c must be finite and nonnegative, got {c}")
    return float(_kernels.pairwise_distance(_points(x), _points(y), c))


def sum_distance(instance: ProblemInstance, y) -> float:
    """Sum of pairwise distances from every series of ``instance`` to ``y``.

    This is the objective the mean minimizes: D(X, y) = sum_i d(x^(i), y).
    The sum is accumulated in series order.
    """
    yp = _points(y)
    total = 0.0
    for s in instance.series:
        total += float(_kernels.pairwise_distance(s.points, yp, instance.c))
    return total
