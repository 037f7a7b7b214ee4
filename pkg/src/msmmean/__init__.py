"""Exact and heuristic means of time series under the MSM metric.

The package computes the pairwise move-split-merge distance, the exact
mean of k series by dynamic programming over length profiles, two
heuristics (alignment window, value discretization), a brute-force
oracle for small instances, and UCR-style dataset ingestion.  The
``msm-mean`` console script exposes the same functionality.
"""

from .core import (
    InfeasibleWindowError,
    ProblemInstance,
    SolverOptions,
    TimeSeries,
    ValueSet,
    build_value_set,
    max_mean_length_bound,
)
from .discretize import BucketSpec, discretize_instance, heuristic_mean_discretized
from .distance import cost_c, msm_distance, sum_distance
from .ingest import Dataset, SamplePlan, default_c_for, parse_ucr, sample_instance
from .mean import (
    MeanResult,
    MeanTable,
    MemoryBudgetExceeded,
    compute_mean,
    estimate_table_bytes,
    fill_table,
)
from .oracle import (
    OracleBudget,
    brute_force_mean,
    check_metric_axioms,
    random_small_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BucketSpec",
    "Dataset",
    "InfeasibleWindowError",
    "MeanResult",
    "MeanTable",
    "MemoryBudgetExceeded",
    "OracleBudget",
    "ProblemInstance",
    "SamplePlan",
    "SolverOptions",
    "TimeSeries",
    "ValueSet",
    "brute_force_mean",
    "build_value_set",
    "check_metric_axioms",
    "compute_mean",
    "cost_c",
    "default_c_for",
    "discretize_instance",
    "estimate_table_bytes",
    "fill_table",
    "heuristic_mean_discretized",
    "max_mean_length_bound",
    "msm_distance",
    "parse_ucr",
    "sample_instance",
    "sum_distance",
    "__version__",
]
