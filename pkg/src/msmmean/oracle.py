"""Brute-force references for validating the mean solver at desk scale.

The oracle deliberately shares no code with the mean dynamic program
except the pairwise distance (which is itself pinned by golden values
and metric-axiom sampling): it enumerates every candidate mean outright
and scores each with k independent pairwise distance computations.
Agreement between the two is the central cross-validation property of
the package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import ProblemInstance, TimeSeries, build_value_set, max_mean_length_bound

__all__ = [
    "OracleBudget",
    "brute_force_mean",
    "check_metric_axioms",
    "random_small_instance",
]


@dataclass(frozen=True)
class OracleBudget:
    """Enumeration guard-rails for the brute-force oracle.

    The candidate space for an instance is every V(X)-valued sequence of
    length 1..L_max, i.e. sum_{l=1..L_max} r^l sequences; the budget
    refuses instances whose candidate count exceeds ``max_candidates``.
    """

    max_k: int = 3
    max_len: int = 4
    max_values: int = 4
    max_candidates: int = 2_000_000

    def enumeration_size(self, r: int, L_max: int) -> int:
        total = 0
        term = 1
        for _ in range(L_max):
            term *= r
            total += term
            if total > self.max_candidates:
                break
        return total

    def check(self, instance: ProblemInstance, L_max: int) -> None:
        r = len(build_value_set(instance))
        size = self.enumeration_size(r, L_max)
        problems = []
        if instance.k > self.max_k:
            problems.append(f"k={instance.k} > max_k={self.max_k}")
        if instance.n_max > self.max_len:
            problems.append(f"n_max={instance.n_max} > max_len={self.max_len}")
        if r > self.max_values:
            problems.append(f"|V(X)|={r} > max_values={self.max_values}")
        if size > self.max_candidates:
            problems.append(
                f"enumeration size {size} > max_candidates={self.max_candidates}"
            )
        if problems:
            raise ValueError("instance exceeds the oracle budget: " + "; ".join(problems))


def brute_force_mean(
    instance: ProblemInstance,
    L_max: int | None = None,
    budget: OracleBudget | None = None,
) -> tuple[TimeSeries, float]:
    """Enumerate every V(X)-valued sequence of length 1..L_max and return
    a minimizer of the sum of pairwise distances, with its cost.

    Ties are broken by shorter length, then lexicographic order of the
    value indices (the enumeration order), so the result is unique.
    """
    budget = budget or OracleBudget()
    if L_max is None:
        L_max = max_mean_length_bound(instance)
    L_max = int(L_max)
    if L_max < 1:
        raise ValueError("L_max must be >= 1")
    budget.check(instance, L_max)

    vs = build_value_set(instance)
    k = instance.k
    nmax = instance.n_max
    xs = np.zeros((k, nmax), np.float64)
    for i, s in enumerate(instance.series):
        xs[i, : len(s)] = s.points
    lengths = np.asarray(instance.lengths, np.int64)

    cost, best_len, digits = _kernels.brute_force_scan(
        xs, lengths, instance.c, vs.values, L_max
    )
    mean = TimeSeries(vs.values[digits[:best_len]])
    return mean, float(cost)


def random_small_instance(
    rng: np.random.Generator,
    k_choices=(2, 3),
    max_len: int = 4,
    value_grid=(0.0, 0.5, 1.25, 3.0),
    c_choices=(0.01, 0.1, 0.5, 1.0),
) -> ProblemInstance:
    """Draw a small random instance for oracle cross-validation.

    Lengths are uniform on 1..max_len per series and values are drawn
    from a fixed small grid, so |V(X)| stays within the oracle budget.
    """
    k = int(rng.choice(np.asarray(k_choices)))
    grid = np.asarray(value_grid, np.float64)
    series = []
    for _ in range(k):
        n = int(rng.integers(1, max_len + 1))
        series.append(TimeSeries(rng.choice(grid, size=n)))
    c = float(rng.choice(np.asarray(c_choices)))
    return ProblemInstance(tuple(series), c)


def check_metric_axioms(
    sample_count: int,
    max_len: int,
    value_grid,
    c: float,
    seed: int,
) -> dict:
    """Sample random series triples and check the metric axioms.

    For each triple (x, y, z) the check asserts nonnegativity, symmetry
    d(x,y) = d(y,x), identity of indiscernibles (d = 0 iff pointwise
    equal, for c > 0), and the triangle inequality
    d(x,z) <= d(x,y) + d(y,z) + 1e-9.

    Violations are counted and reported, not raised.

    Returns
    -------
    dict with keys ``triples``, ``violations`` (total), per-axiom
    counts, ``counterexamples`` (first few offending triples), ``seed``
    and ``c`` echoes.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    tol = 1e-9
    rng = np.random.default_rng(seed)
    grid = np.asarray(value_grid, np.float64)
    pair = _kernels.pairwise_distance

    counts = {
        "nonnegativity": 0,
        "symmetry": 0,
        "identity": 0,
        "triangle": 0,
    }
    counterexamples = []

    def note(kind, *series):
        counts[kind] += 1
        if len(counterexamples) < 5:
            counterexamples.append((kind, tuple(tuple(s) for s in series)))

    for _ in range(sample_count):
        x, y, z = (
            rng.choice(grid, size=int(rng.integers(1, max_len + 1)))
            for _ in range(3)
        )
        dxy = pair(x, y, c)
        dyx = pair(y, x, c)
        dxz = pair(x, z, c)
        dyz = pair(y, z, c)
        if min(dxy, dxz, dyz) < 0:
            note("nonnegativity", x, y, z)
        if abs(dxy - dyx) > tol:
            note("symmetry", x, y)
        equal = x.size == y.size and bool(np.all(x == y))
        if equal and dxy != 0:
            note("identity", x, y)
        if not equal and c > 0 and dxy <= 0:
            note("identity", x, y)
        if dxz > dxy + dyz + tol:
            note("triangle", x, y, z)

    return {
        "triples": int(sample_count),
        "violations": int(sum(counts.values())),
        "per_axiom": counts,
        "counterexamples": counterexamples,
        "seed": int(seed),
        "c": float(c),
    }
