"""Input model: validation, value sets, length bound, solver options."""

import numpy as np
import pytest

from msmmean.core import (
    InfeasibleWindowError,
    ProblemInstance,
    SolverOptions,
    TimeSeries,
    build_value_set,
    max_mean_length_bound,
)


class TestTimeSeries:
    def test_holds_float64_copy(self):
        src = np.array([1, 2, 3], dtype=np.int32)
        ts = TimeSeries(src)
        assert ts.points.dtype == np.float64
        src[0] = 99
        assert ts.points[0] == 1.0

    def test_points_are_read_only(self):
        ts = TimeSeries([1.0, 2.0])
        with pytest.raises(ValueError):
            ts.points[0] = 5.0

    @pytest.mark.parametrize("bad", [[], [np.nan], [1.0, np.inf], [[1.0, 2.0]]])
    def test_rejects_empty_nonfinite_or_nested(self, bad):
        with pytest.raises(ValueError):
            TimeSeries(bad)

    def test_label_kept(self):
        assert TimeSeries([1.0], label="2").label == "2"

    def test_len(self):
        assert len(TimeSeries([1.0, 2.0, 3.0])) == 3


class TestProblemInstance:
    def test_shape_fields(self):
        inst = ProblemInstance((TimeSeries([1.0, 2.0]), TimeSeries([3.0])), 0.1)
        assert inst.k == 2
        assert inst.lengths == (2, 1)
        assert inst.n_max == 2
        assert inst.n_min == 1

    def test_rejects_negative_c(self):
        with pytest.raises(ValueError):
            ProblemInstance((TimeSeries([1.0]),), -0.5)

    def test_rejects_nonfinite_c(self):
        with pytest.raises(ValueError):
            ProblemInstance((TimeSeries([1.0]),), float("nan"))

    def test_rejects_empty_series_tuple(self):
        with pytest.raises(ValueError):
            ProblemInstance((), 0.1)

    def test_zero_c_allowed(self):
        assert ProblemInstance((TimeSeries([1.0]),), 0.0).c == 0.0


class TestValueSet:
    def test_sorted_exact_dedup(self):
        inst = ProblemInstance(
            (TimeSeries([3.0, 1.0, 3.0]), TimeSeries([2.0, 1.0])), 0.1
        )
        assert build_value_set(inst).values.tolist() == [1.0, 2.0, 3.0]

    def test_near_equal_values_stay_distinct(self):
        inst = ProblemInstance((TimeSeries([1.0, 1.0 + 1e-12]),), 0.1)
        assert len(build_value_set(inst).values) == 2


def test_max_mean_length_bound():
    inst = ProblemInstance(
        (TimeSeries([0.0] * 5), TimeSeries([0.0] * 3), TimeSeries([0.0] * 4)), 0.1
    )
    assert max_mean_length_bound(inst) == (5 - 1) * 3 + 1


class TestSolverOptions:
    def test_defaults(self):
        opts = SolverOptions()
        assert opts.max_mean_length is None
        assert opts.window is None
        assert opts.mem_cap_gib == 8.0

    def test_rejects_negative_window(self):
        with pytest.raises(ValueError):
            SolverOptions(window=-1)

    def test_rejects_nonpositive_max_length(self):
        with pytest.raises(ValueError):
            SolverOptions(max_mean_length=0)

    def test_resolved_max_length_clamps_to_bound(self):
        inst = ProblemInstance((TimeSeries([0.0, 1.0]), TimeSeries([2.0])), 0.1)
        bound = max_mean_length_bound(inst)  # 3
        assert SolverOptions().resolved_max_length(inst) == bound
        assert SolverOptions(max_mean_length=2).resolved_max_length(inst) == 2
        assert SolverOptions(max_mean_length=99).resolved_max_length(inst) == bound

    def test_infeasible_window_raises(self):
        inst = ProblemInstance((TimeSeries([0.0] * 2), TimeSeries([0.0] * 5)), 0.1)
        with pytest.raises(InfeasibleWindowError):
            SolverOptions(window=1).validate_for(inst)
        SolverOptions(window=3).validate_for(inst)  # spread is 3: feasible
