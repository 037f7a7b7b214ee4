"""Pairwise MSM distance: frozen values, reference DP, metric axioms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from msmmean.distance import cost_c, msm_distance, sum_distance
from msmmean.core import ProblemInstance, TimeSeries


def msm_reference(x, y, c):
    """Plain-Python MSM distance, written independently of the kernel.

    Straight two-dimensional table with the standard three-way
    recurrence; no rolling rows, no JIT.  Used as a second route for
    cross-checking the production kernel.
    """

    def split_merge(a, b, d):
        if b <= a <= d or b >= a >= d:
            return c
        return c + min(abs(a - b), abs(a - d))

    m, n = len(x), len(y)
    dp = [[math.inf] * n for _ in range(m)]
    dp[0][0] = abs(x[0] - y[0])
    for i in range(1, m):
        dp[i][0] = dp[i - 1][0] + split_merge(x[i], x[i - 1], y[0])
    for j in range(1, n):
        dp[0][j] = dp[0][j - 1] + split_merge(y[j], x[0], y[j - 1])
    for i in range(1, m):
        for j in range(1, n):
            dp[i][j] = min(
                dp[i - 1][j - 1] + abs(x[i] - y[j]),
                dp[i - 1][j] + split_merge(x[i], x[i - 1], y[j]),
                dp[i][j - 1] + split_merge(y[j], x[i], y[j - 1]),
            )
    return dp[m - 1][n - 1]


class TestCostC:
    def test_between_neighbor_and_target_costs_c_alone(self):
        assert cost_c(2.0, 1.0, 3.0, 0.1) == pytest.approx(0.1)
        assert cost_c(2.0, 3.0, 1.0, 0.1) == pytest.approx(0.1)
        assert cost_c(2.0, 2.0, 2.0, 0.1) == pytest.approx(0.1)  # boundary

    def test_outside_adds_smaller_detour(self):
        # new point 5 vs neighbor 1 and target 2: detour min(4, 3) = 3
        assert cost_c(5.0, 1.0, 2.0, 0.1) == pytest.approx(0.1 + 3.0)
        assert cost_c(0.0, 1.0, 2.0, 0.1) == pytest.approx(0.1 + 1.0)


class TestFrozenValues:
    def test_golden_pair(self):
        assert msm_distance([4, 5, 5, 10], [10, 7, 8], 0.1) == pytest.approx(
            8.3, abs=1e-9
        )

    def test_identical_singletons(self):
        assert msm_distance([5.0], [5.0], 1.0) == 0.0

    def test_merge_beats_move(self):
        # (1,2) -> (1,): move 2 onto 1 (cost 1), then merge (cost 0.5)
        assert msm_distance([1, 2], [1], 0.5) == pytest.approx(1.5, abs=1e-12)

    def test_pure_move(self):
        assert msm_distance([0.0], [10.0], 1.0) == pytest.approx(10.0)

    def test_move_beats_merge_route(self):
        # (0,0) -> (0,2): moving the second point costs 2; merging first
        # (0.1) then splitting back costs more
        assert msm_distance([0, 0], [0, 2], 0.1) == pytest.approx(2.0, abs=1e-12)

    def test_symmetry_of_golden_pair(self):
        assert msm_distance([10, 7, 8], [4, 5, 5, 10], 0.1) == pytest.approx(
            8.3, abs=1e-9
        )


values = st.floats(min_value=-50, max_value=50, allow_nan=False, width=32).map(float)
series = st.lists(values, min_size=1, max_size=8)
costs = st.sampled_from([0.0, 0.01, 0.1, 0.5, 1.0])


@settings(max_examples=150, deadline=None)
@given(series, series, costs)
def test_matches_reference_dp(x, y, c):
    got = msm_distance(x, y, c)
    want = msm_reference(x, y, c)
    assert got == pytest.approx(want, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(series, series, costs)
def test_symmetric_and_nonnegative(x, y, c):
    d = msm_distance(x, y, c)
    assert d >= 0.0
    assert msm_distance(y, x, c) == pytest.approx(d, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(series, costs)
def test_self_distance_zero(x, c):
    assert msm_distance(x, x, c) == 0.0


@settings(max_examples=60, deadline=None)
@given(series, series, series, costs)
def test_triangle_inequality(x, y, z, c):
    dxz = msm_distance(x, y, c) + msm_distance(y, z, c)
    assert msm_distance(x, z, c) <= dxz + 1e-9


def test_sum_distance_accumulates_in_series_order():
    inst = ProblemInstance(
        (TimeSeries([0.0, 0.0]), TimeSeries([0.0, 2.0]), TimeSeries([1.0])), 0.1
    )
    mean = TimeSeries([0.0])
    want = sum(msm_distance(s.points, mean.points, 0.1) for s in inst.series)
    assert sum_distance(inst, mean) == pytest.approx(want, abs=1e-12)
