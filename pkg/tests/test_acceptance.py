"""Acceptance suite: one test and one report line per criterion.

The two structural criteria (values-from-V(X)/length bound, cost
consistency) are enforced on every single mean computed anywhere in the
suite by the wrapper in conftest; their tests run last in this module
and report over the accumulated run log.  Report lines are printed in
the terminal summary.
"""

import csv
import math
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from conftest import CRITERION_LINES, RUN_LOG, VIOLATIONS
from msmmean.core import ProblemInstance, SolverOptions, TimeSeries, max_mean_length_bound
from msmmean.discretize import heuristic_mean_discretized
from msmmean.distance import msm_distance
from msmmean.ingest import SamplePlan, parse_ucr, sample_instance
from msmmean.mean import compute_mean
from msmmean.oracle import brute_force_mean, check_metric_axioms, random_small_instance
from msmmean import cli

DATA = Path(__file__).resolve().parent.parent / "data" / "ItalyPowerDemand_TRAIN.tsv"


def record(line):
    CRITERION_LINES.append(line)
    print(line)


@pytest.fixture(scope="module")
def italy():
    return parse_ucr(DATA)


@pytest.fixture(scope="module")
def small_solved():
    """50 seeded small instances with their exact DP results (shared by
    the oracle-equivalence and move-set-equivalence criteria)."""
    rng = np.random.default_rng(20260814)
    out = []
    for _ in range(50):
        inst = random_small_instance(rng)
        out.append((inst, compute_mean(inst)))
    return out


@pytest.fixture(scope="module")
def window_solved(italy):
    """20 sampled instances (k=3, n=10) with their exact results (shared
    by the window and discretization criteria)."""
    out = []
    for i in range(20):
        inst = sample_instance(italy, SamplePlan(k=3, n=10, seed=100 + i), c=0.1)
        out.append((inst, compute_mean(inst)))
    return out


def mixed_class_instance(dataset, seed, k, n, c):
    """A mixed draw conditioned on actually containing two classes.

    Uniform sampling over the whole pool returns a single-class triple
    for roughly a quarter of seeds; those draws are rerolled
    deterministically so every pair compares one-class against genuinely
    mixed.
    """
    for attempt in range(64):
        plan = SamplePlan(
            k=k, n=n, seed=seed + 10007 * attempt, class_mode="mixed"
        )
        inst = sample_instance(dataset, plan, c)
        if len({s.label for s in inst.series}) >= 2:
            return inst
    raise RuntimeError(f"no mixed draw found for seed {seed}")


def test_criterion_01_golden_distance():
    elapsed = math.inf
    for _ in range(5):
        t0 = time.perf_counter()
        d = msm_distance([4.0, 5.0, 5.0, 10.0], [10.0, 7.0, 8.0], 0.1)
        elapsed = min(elapsed, time.perf_counter() - t0)
    assert abs(d - 8.3) <= 1e-9
    assert elapsed < 1e-3
    record(
        f"[criterion 1] PASS golden distance: d=8.3 within 1e-9, "
        f"{elapsed * 1e6:.0f} us"
    )


def test_criterion_02_metric_axioms():
    t0 = time.perf_counter()
    total = 0
    violations = 0
    for i, c in enumerate((0.01, 0.1, 1.0)):
        res = check_metric_axioms(
            sample_count=334 if i == 0 else 333,
            max_len=10,
            value_grid=(0.0, 1.0, 2.0, 3.0),
            c=c,
            seed=42 + i,
        )
        total += res["triples"]
        violations += res["violations"]
    elapsed = time.perf_counter() - t0
    assert total == 1000
    assert violations == 0
    assert elapsed < 10.0
    record(
        f"[criterion 2] PASS metric axioms: {total} triples, 0 violations, "
        f"{elapsed:.2f} s"
    )


def test_criterion_03_oracle_equivalence(small_solved):
    t0 = time.perf_counter()
    worst = 0.0
    for inst, res in small_solved:
        _, oracle_cost = brute_force_mean(inst)
        gap = abs(res.cost - oracle_cost)
        worst = max(worst, gap)
        assert gap <= 1e-9, f"DP {res.cost} vs oracle {oracle_cost} on {inst}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    record(
        f"[criterion 3] PASS oracle equivalence: {len(small_solved)} instances, "
        f"worst gap {worst:.2e}, {elapsed:.1f} s"
    )


def test_criterion_06_move_set_equivalence(small_solved):
    for inst, res in small_solved:
        free = compute_mean(inst, SolverOptions(allow_empty_move_set=True))
        assert free.table_cost == res.table_cost, (
            f"optimum changed when the empty move set was allowed: "
            f"{res.table_cost!r} vs {free.table_cost!r} on {inst}"
        )
    record(
        f"[criterion 6] PASS move-set equivalence: restricted == unrestricted "
        f"optimum, exactly, on {len(small_solved)} instances"
    )


def test_criterion_07_window_dominance(window_solved):
    rel = {1: [], 2: [], 3: []}
    for inst, exact in window_solved:
        by_d = {
            d: compute_mean(inst, SolverOptions(window=d)) for d in (1, 2, 3, 9)
        }
        assert by_d[1].table_cost >= by_d[2].table_cost - 1e-12
        assert by_d[2].table_cost >= by_d[3].table_cost - 1e-12
        assert by_d[3].table_cost >= exact.table_cost - 1e-12
        assert by_d[9].table_cost == pytest.approx(exact.table_cost, abs=1e-9)
        for d in (1, 2, 3):
            rel[d].append((by_d[d].table_cost - exact.table_cost) / exact.table_cost)
    avg = {d: float(np.mean(rel[d])) for d in rel}
    assert avg[3] <= avg[1]
    record(
        "[criterion 7] PASS window dominance on 20 instances: avg rel err "
        f"d=1 {avg[1]:.2%}, d=2 {avg[2]:.2%}, d=3 {avg[3]:.2%}; d=n-1 exact"
    )


def test_criterion_08_discretization(window_solved):
    rel_by_v = {}
    slow, fast = [], []
    for inst, exact in window_solved:
        value_count = len(set().union(*(s.points.tolist() for s in inst.series)))
        assert value_count >= 16
        for v in (4, 8, 16, value_count):
            best_wall = math.inf
            for _ in range(3):
                result, cost = heuristic_mean_discretized(inst, v)
                best_wall = min(best_wall, result.wall_time)
            assert cost >= exact.cost - 1e-9
            rel_by_v.setdefault(v if v in (4, 8, 16) else "full", []).append(
                (cost - exact.cost) / exact.cost
            )
            if v == 4:
                fast.append(best_wall)
            elif v == value_count:
                slow.append(best_wall)
    decreases = sum(f < s for f, s in zip(fast, slow))
    assert decreases == len(window_solved), (
        f"v=4 was faster than v=|V(X)| on only {decreases}/{len(window_solved)} runs"
    )
    stats = {
        k: (float(np.mean(vals)), float(np.max(vals))) for k, vals in rel_by_v.items()
    }
    record(
        "[criterion 8] PASS discretization on 20 instances: rel err avg/max "
        + ", ".join(f"v={k}: {a:.2%}/{m:.2%}" for k, (a, m) in stats.items())
        + "; v=4 faster than v=|V(X)| on every instance"
    )


def test_criterion_09_class_quality(italy):
    opts = SolverOptions(max_mean_length=24)
    lines = []
    for c in (0.01, 0.1, 0.2, 0.5):
        wins = 0
        one_costs, mixed_costs = [], []
        for seed in range(1, 21):
            one = sample_instance(
                italy, SamplePlan(k=3, n=24, seed=seed), c=c
            )
            mixed = mixed_class_instance(italy, seed, 3, 24, c)
            cost_one = compute_mean(one, opts).cost
            cost_mixed = compute_mean(mixed, opts).cost
            one_costs.append(cost_one)
            mixed_costs.append(cost_mixed)
            wins += cost_one < cost_mixed
        assert wins >= 16, f"one-class won only {wins}/20 pairs at c={c}"
        lines.append(
            f"c={c}: {wins}/20, avg {np.mean(one_costs):.2f} vs "
            f"{np.mean(mixed_costs):.2f}"
        )
    record("[criterion 9] PASS class quality (one-class vs mixed): " + "; ".join(lines))


def test_criterion_10_runtime_envelope(tmp_path):
    out = tmp_path / "bench.csv"
    t0 = time.perf_counter()
    code = cli.main(
        [
            "bench", "--ucr", str(DATA), "--k", "3", "--n", "20",
            "--c", "0.1", "--seed", "11", "--out", str(out),
        ]
    )
    harness_wall = time.perf_counter() - t0
    assert code == 0
    rows = list(
        csv.DictReader(
            l for l in out.read_text().splitlines() if not l.startswith("#")
        )
    )
    assert rows
    for row in rows:
        assert row["status"] == "ok"
        assert float(row["wall_time_s"]) < 600.0
        assert int(row["est_bytes"]) < 8 * 2**30
        assert int(row["value_count"]) <= 60
    assert harness_wall < 600.0
    worst = max(float(r["wall_time_s"]) for r in rows)
    mem = max(int(r["est_bytes"]) for r in rows) / 2**30
    record(
        f"[criterion 10] PASS runtime envelope: {len(rows)} exact k=3 n=20 runs, "
        f"slowest {worst:.2f} s (< 600 s), table memory {mem:.3f} GiB (< 8 GiB)"
    )


def test_criterion_11_length_observation(italy):
    opts = SolverOptions(max_mean_length=None)
    lengths = []
    for i in range(20):
        n = 10 + (i % 6)
        inst = sample_instance(italy, SamplePlan(k=3, n=n, seed=200 + i), c=0.1)
        res = compute_mean(inst, opts)
        assert res.mean_length <= max_mean_length_bound(inst)
        lengths.append((n, res.mean_length))
    dist = Counter(ml - n for n, ml in lengths)
    exact_n = sum(ml == n for n, ml in lengths)
    record(
        f"[criterion 11] PASS length observation: 20 unconstrained runs, "
        f"mean length == n on {exact_n}/20, distribution of (length - n): "
        f"{dict(sorted(dist.items()))} (only the (n_max-1)k+1 bound is asserted)"
    )


def test_criterion_04_structural_log(small_solved):
    assert len(RUN_LOG) >= 50
    assert all(rec["ok"] for rec in RUN_LOG)
    assert not VIOLATIONS
    over = [r for r in RUN_LOG if r["mean_length"] > r["bound"]]
    assert not over
    record(
        f"[criterion 4] PASS structural checks: {len(RUN_LOG)} means computed in "
        f"this suite, all values from V(X), all lengths within (n_max-1)k+1"
    )


def test_criterion_05_cost_consistency(small_solved):
    assert len(RUN_LOG) >= 50
    assert not VIOLATIONS
    record(
        f"[criterion 5] PASS cost consistency: |cost - sum of pairwise distances| "
        f"<= 1e-9 on all {len(RUN_LOG)} runs"
    )
