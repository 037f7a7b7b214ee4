"""Command-line front end and benchmark harness.

Subcommands
-----------
distance
    Pairwise MSM distance of two series.
mean
    Mean of a sampled or explicitly given instance, with optional
    window/discretization heuristics, as JSON or a CSV row.
bench
    Sweep the solver over (dataset, k, n, class) cells with per-run
    timeouts and optional heuristic columns; emits versioned CSV.
verify
    Self-check: oracle equivalence, metric axioms, window dominance,
    and the nonempty-move-set equivalence.
sample
    Emit a sampled instance in re-ingestable form.

Exit codes: 0 success, 1 failed verification, 2 usage/input error,
3 memory-guard refusal, 4 infeasible window.  Every number printed is
reproducible from the flags echoed in the output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import re
import shlex
import statistics
import sys
import time
from multiprocessing import get_context
from pathlib import Path

import numpy as np

from .core import (
    InfeasibleWindowError,
    ProblemInstance,
    SolverOptions,
    TimeSeries,
    build_value_set,
)
from .discretize import heuristic_mean_discretized
from .distance import msm_distance, sum_distance
from .ingest import SamplePlan, parse_ucr, sample_instance
from .mean import MemoryBudgetExceeded, compute_mean
from .oracle import brute_force_mean, check_metric_axioms, random_small_instance

__all__ = ["main"]

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_MEMORY = 3
EXIT_WINDOW = 4

BENCH_CSV_VERSION = "msm-mean bench csv v1"
MEAN_CSV_VERSION = "msm-mean mean csv v1"

BENCH_COLUMNS = [
    "run_id",
    "status",
    "dataset",
    "label",
    "k",
    "n",
    "seed",
    "c",
    "mode",
    "window",
    "buckets",
    "max_length",
    "cost",
    "table_cost",
    "mean_length",
    "value_count",
    "entries_computed",
    "entries_skipped",
    "est_bytes",
    "wall_time_s",
    "rel_err_vs_exact",
    "command",
]

MEAN_COLUMNS = [
    "dataset",
    "label",
    "k",
    "n",
    "seed",
    "c",
    "mode",
    "window",
    "buckets",
    "max_length",
    "cost",
    "table_cost",
    "snapped_cost",
    "mean_length",
    "value_count",
    "entries_computed",
    "entries_skipped",
    "est_bytes",
    "wall_time_s",
    "command",
    "mean",
]


class CliError(Exception):
    """Usage or input error; maps to exit code 2."""


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _parse_values(text: str, what: str) -> np.ndarray:
    try:
        return np.array([float(t) for t in text.split(",") if t.strip() != ""], np.float64)
    except ValueError:
        raise CliError(f"could not parse {what} as comma-separated numbers: {text!r}") from None


def _read_series_file(path: str) -> TimeSeries:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read series file {path}: {exc}") from None
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise CliError(f"series file {path} is empty")
    try:
        pts = np.array([float(t) for t in tokens], np.float64)
    except ValueError as exc:
        raise CliError(f"series file {path}: {exc}") from None
    return TimeSeries(pts)


def _resolve_ucr(spec: str) -> Path:
    base = Path(spec)
    candidates = [base]
    if base.suffix == "":
        candidates += [base.with_suffix(ext) for ext in (".tsv", ".txt", ".csv")]
    if not base.is_absolute():
        candidates += [Path("data") / c.name for c in list(candidates)]
    for cand in candidates:
        if cand.is_file():
            return cand
    raise CliError(
        f"UCR file {spec!r} not found (tried {', '.join(str(c) for c in candidates)})"
    )


def _parse_int_list(text: str, what: str) -> list[int]:
    """Accept '12', '10,11,12', and '10..12' range syntax."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\.\.(\d+)", part)
        try:
            if m:
                lo, hi = int(m.group(1)), int(m.group(2))
                if hi < lo:
                    raise CliError(f"empty range {part!r} in {what}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise CliError(f"could not parse {what}: {part!r}") from None
    if not out:
        raise CliError(f"no values given for {what}")
    return out


def _parse_max_length(text: str | None, default_n: int):
    if text is None:
        return default_n
    if text.strip().lower() == "unbounded":
        return None
    try:
        return int(text)
    except ValueError:
        raise CliError(f"--max-length must be an integer or 'unbounded', got {text!r}") from None


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", encoding="utf-8", newline="")
    return sys.stdout


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _echo(argv) -> str:
    return shlex.join(["msm-mean", *argv])


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------


def cmd_distance(args, argv) -> int:
    if (args.x is None) == (args.x_file is None):
        raise CliError("give the first series with exactly one of --x or --x-file")
    if (args.y is None) == (args.y_file is None):
        raise CliError("give the second series with exactly one of --y or --y-file")
    x = _parse_values(args.x, "--x") if args.x is not None else _read_series_file(args.x_file).points
    y = _parse_values(args.y, "--y") if args.y is not None else _read_series_file(args.y_file).points
    if x.size == 0 or y.size == 0:
        raise CliError("series must contain at least one value")
    d = msm_distance(x, y, args.c)
    if args.json:
        print(
            json.dumps(
                {
                    "command": _echo(argv),
                    "c": args.c,
                    "x_length": int(x.size),
                    "y_length": int(y.size),
                    "distance": d,
                }
            )
        )
    else:
        print(f"{d:.12g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# mean
# ---------------------------------------------------------------------------


def _build_instance(args):
    """Instance plus describing fields from --ucr/--series flags."""
    if (args.ucr is None) == (args.series is None):
        raise CliError("give the input with exactly one of --ucr or --series")
    if args.ucr is not None:
        if args.k is None or args.n is None:
            raise CliError("--ucr sampling requires --k and --n")
        path = _resolve_ucr(args.ucr)
        dataset = parse_ucr(path)
        plan = SamplePlan(
            k=args.k, n=args.n, seed=args.seed, class_mode=args.class_mode, label=args.label
        )
        try:
            instance = sample_instance(dataset, plan, args.c)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        return instance, dataset.name, args.n
    files = [f for f in args.series.split(",") if f]
    if not files:
        raise CliError("--series needs at least one file")
    series = tuple(_read_series_file(f) for f in files)
    if args.c is None:
        raise CliError("--series input requires --c")
    instance = ProblemInstance(series, args.c)
    return instance, "", instance.n_max


def cmd_mean(args, argv) -> int:
    instance, dataset_name, default_n = _build_instance(args)
    max_length = _parse_max_length(args.max_length, default_n)
    try:
        options = SolverOptions(
            max_mean_length=max_length,
            window=args.window,
            allow_empty_move_set=args.allow_empty_move_set,
            mem_cap_gib=args.mem_cap_gib,
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None

    snapped_cost = None
    if args.buckets is not None:
        result, cost = heuristic_mean_discretized(instance, args.buckets, options)
        snapped_cost = result.cost
    else:
        result = compute_mean(instance, options)
        cost = result.cost

    labels = sorted({s.label for s in instance.series if s.label})
    record = {
        "dataset": dataset_name,
        "label": "+".join(labels),
        "k": instance.k,
        "n": default_n,
        "seed": args.seed if args.ucr is not None else None,
        "c": instance.c,
        "mode": "buckets" if args.buckets is not None else ("window" if args.window is not None else "exact"),
        "window": args.window,
        "buckets": args.buckets,
        "max_length": "unbounded" if max_length is None else max_length,
        "cost": cost,
        "table_cost": result.table_cost,
        "snapped_cost": snapped_cost,
        "mean_length": result.mean_length,
        "value_count": result.value_count,
        "entries_computed": result.table_entries_computed,
        "entries_skipped": result.table_entries_skipped,
        "est_bytes": result.est_bytes,
        "wall_time_s": result.wall_time,
        "command": _echo(argv),
        "mean": result.mean.points.tolist(),
    }

    out = _open_out(args)
    try:
        if args.csv:
            out.write(f"# {MEAN_CSV_VERSION}\n")
            w = csv.writer(out, lineterminator="\n")
            w.writerow(MEAN_COLUMNS)
            row = dict(record)
            row["mean"] = ";".join(f"{v:.12g}" for v in record["mean"])
            w.writerow([_fmt(row[col]) for col in MEAN_COLUMNS])
        else:
            record["lengths"] = list(instance.lengths)
            print(json.dumps(record, indent=2), file=out)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------


def _bench_worker(conn, task):
    """Child-process body for one bench run (fork start method)."""
    try:
        dataset = parse_ucr(task["path"])
        plan = SamplePlan(
            k=task["k"],
            n=task["n"],
            seed=task["seed"],
            class_mode="one-class",
            label=task["label"],
        )
        instance = sample_instance(dataset, plan, task["c"])
        options = SolverOptions(
            max_mean_length=task["n"],
            window=task["window"],
            mem_cap_gib=task["mem_cap_gib"],
        )
        if task["buckets"] is not None:
            result, cost = heuristic_mean_discretized(instance, task["buckets"], options)
        else:
            result = compute_mean(instance, options)
            cost = result.cost
        conn.send(
            {
                "status": "ok",
                "c": instance.c,
                "cost": cost,
                "table_cost": result.table_cost,
                "mean_length": result.mean_length,
                "value_count": result.value_count,
                "entries_computed": result.table_entries_computed,
                "entries_skipped": result.table_entries_skipped,
                "est_bytes": result.est_bytes,
                "wall_time_s": result.wall_time,
            }
        )
    except MemoryBudgetExceeded as exc:
        conn.send({"status": "memory", "error": str(exc)})
    except Exception as exc:  # recorded per-run, never fatal to the sweep
        conn.send({"status": "error", "error": str(exc)})
    finally:
        conn.close()


def _task_command(task) -> str:
    parts = [
        "msm-mean",
        "mean",
        "--ucr",
        str(task["path"]),
        "--k",
        str(task["k"]),
        "--n",
        str(task["n"]),
        "--seed",
        str(task["seed"]),
        "--class-mode",
        "one-class",
        "--label",
        str(task["label"]),
        "--max-length",
        str(task["n"]),
    ]
    if task["c"] is not None:
        parts += ["--c", f"{task['c']:.12g}"]
    if task["window"] is not None:
        parts += ["--window", str(task["window"])]
    if task["buckets"] is not None:
        parts += ["--buckets", str(task["buckets"])]
    return shlex.join(parts)


def cmd_bench(args, argv) -> int:
    if args.ucr is None:
        raise CliError("bench requires --ucr (comma-separated dataset files)")
    paths = [_resolve_ucr(s) for s in args.ucr.split(",") if s]
    ks = _parse_int_list(args.k, "--k")
    ns = _parse_int_list(args.n, "--n")
    windows = _parse_int_list(args.window, "--window") if args.window else []
    buckets = _parse_int_list(args.buckets, "--buckets") if args.buckets else []
    jobs = max(1, args.jobs)

    # one cell per (dataset, k, n, class); the exact run leads the cell
    # so heuristic rows can report error relative to it
    tasks = []
    cell_index = 0
    for path in paths:
        dataset = parse_ucr(path)
        c = args.c if args.c is not None else dataset.default_c
        if c is None:
            raise CliError(
                f"dataset {dataset.name!r} has no built-in cost constant; pass --c"
            )
        for k in ks:
            for n in ns:
                for label in dataset.labels:
                    cell = (str(path), k, n, label)
                    seed = args.seed + cell_index
                    cell_index += 1
                    base = {
                        "path": str(path),
                        "dataset": dataset.name,
                        "k": k,
                        "n": n,
                        "label": label,
                        "seed": seed,
                        "c": c,
                        "mem_cap_gib": args.mem_cap_gib,
                        "cell": cell,
                    }
                    tasks.append({**base, "window": None, "buckets": None, "mode": "exact"})
                    for w in windows:
                        tasks.append({**base, "window": w, "buckets": None, "mode": "window"})
                    for v in buckets:
                        tasks.append({**base, "window": None, "buckets": v, "mode": "buckets"})
    for run_id, t in enumerate(tasks):
        t["run_id"] = run_id

    out = _open_out(args)
    writer = csv.writer(out, lineterminator="\n")
    out.write(f"# {BENCH_CSV_VERSION}\n")
    writer.writerow(BENCH_COLUMNS)
    out.flush()

    # warm the JIT cache once in the parent so forked children inherit it
    compute_mean(ProblemInstance((TimeSeries([0.0, 1.0]), TimeSeries([1.0])), 0.1))

    ctx = get_context("fork")
    exact_cost: dict[tuple, float] = {}
    cell_done: dict[tuple, bool] = {}
    per_kn: dict[tuple, list[float]] = {}
    pending = list(tasks)
    live = []  # (proc, conn, task, deadline)
    emitted = 0

    def launchable(task):
        if task["mode"] == "exact":
            return True
        return cell_done.get(task["cell"], False)

    def emit(task, payload):
        nonlocal emitted
        status = payload["status"]
        rel = None
        if status == "ok" and task["mode"] != "exact":
            ex = exact_cost.get(task["cell"])
            if ex is not None and ex > 0:
                rel = (payload["cost"] - ex) / ex
        if task["mode"] == "exact":
            cell_done[task["cell"]] = True
            if status == "ok":
                exact_cost[task["cell"]] = payload["cost"]
                per_kn.setdefault((task["k"], task["n"]), []).append(payload["wall_time_s"])
        row = {
            "run_id": task["run_id"],
            "status": status,
            "dataset": task["dataset"],
            "label": task["label"],
            "k": task["k"],
            "n": task["n"],
            "seed": task["seed"],
            "c": task["c"],
            "mode": task["mode"],
            "window": task["window"],
            "buckets": task["buckets"],
            "max_length": task["n"],
            "cost": payload.get("cost"),
            "table_cost": payload.get("table_cost"),
            "mean_length": payload.get("mean_length"),
            "value_count": payload.get("value_count"),
            "entries_computed": payload.get("entries_computed"),
            "entries_skipped": payload.get("entries_skipped"),
            "est_bytes": payload.get("est_bytes"),
            "wall_time_s": payload.get("wall_time_s"),
            "rel_err_vs_exact": rel,
            "command": _task_command(task),
        }
        writer.writerow([_fmt(row[col]) for col in BENCH_COLUMNS])
        out.flush()
        if payload.get("error"):
            print(f"run {task['run_id']} {status}: {payload['error']}", file=sys.stderr)
        emitted += 1

    try:
        while pending or live:
            i = 0
            while i < len(pending) and len(live) < jobs:
                task = pending[i]
                if launchable(task):
                    pending.pop(i)
                    parent_conn, child_conn = ctx.Pipe(duplex=False)
                    proc = ctx.Process(target=_bench_worker, args=(child_conn, task))
                    proc.start()
                    child_conn.close()
                    live.append((proc, parent_conn, task, time.monotonic() + args.timeout_s))
                else:
                    i += 1
            if not live:
                if pending:
                    # only non-launchable tasks remain: their exact runs
                    # failed; emit them as skipped-error rows
                    for task in pending:
                        emit(task, {"status": "error", "error": "exact run of this cell did not complete"})
                    pending = []
                continue
            time.sleep(0.01)
            still = []
            for proc, conn, task, deadline in live:
                if conn.poll():
                    payload = conn.recv()
                    proc.join()
                    conn.close()
                    emit(task, payload)
                elif not proc.is_alive():
                    proc.join()
                    conn.close()
                    emit(task, {"status": "error", "error": "worker died"})
                elif time.monotonic() > deadline:
                    proc.terminate()
                    proc.join()
                    conn.close()
                    emit(task, {"status": "timeout", "wall_time_s": args.timeout_s})
                else:
                    still.append((proc, conn, task, deadline))
            live = still

        for (k, n), times in sorted(per_kn.items()):
            out.write(
                f"# summary k={k} n={n}: ok={len(times)} "
                f"mean={statistics.mean(times):.3f}s median={statistics.median(times):.3f}s\n"
            )
        out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args, argv) -> int:
    failures = 0

    def report(name, passed, detail):
        nonlocal failures
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        if not passed:
            failures += 1

    # metric axioms over the criterion's three cost constants
    triples_per_c = max(1, args.triples // 3)
    total_viol = 0
    total_triples = 0
    for c in (0.01, 0.1, 1.0):
        res = check_metric_axioms(
            sample_count=triples_per_c,
            max_len=10,
            value_grid=(0.0, 1.0, 2.0, 3.0),
            c=c,
            seed=args.seed + int(c * 1000),
        )
        total_viol += res["violations"]
        total_triples += res["triples"]
        if res["violations"]:
            for ex in res["counterexamples"]:
                print(f"  counterexample (c={c}): {ex}", file=sys.stderr)
    report(
        "metric axioms",
        total_viol == 0,
        f"{total_triples} triples, {total_viol} violations",
    )

    # oracle equivalence + nonempty-move-set equivalence
    rng = np.random.default_rng(args.seed)
    mismatches = []
    move_set_mismatches = []
    for _ in range(args.instances):
        inst = random_small_instance(rng)
        res = compute_mean(inst)
        _, oracle_cost = brute_force_mean(inst)
        if abs(res.cost - oracle_cost) > 1e-9:
            mismatches.append((inst, res.cost, oracle_cost))
        res_e = compute_mean(inst, SolverOptions(allow_empty_move_set=True))
        if abs(res_e.table_cost - res.table_cost) > 1e-9:
            move_set_mismatches.append((inst, res.table_cost, res_e.table_cost))
    report(
        "oracle equivalence",
        not mismatches,
        f"{args.instances} instances within 1e-9"
        if not mismatches
        else f"{len(mismatches)} mismatches, first: {mismatches[0]}",
    )
    report(
        "nonempty-move-set equivalence",
        not move_set_mismatches,
        f"{args.instances} instances, restricted == unrestricted optimum"
        if not move_set_mismatches
        else f"{len(move_set_mismatches)} mismatches, first: {move_set_mismatches[0]}",
    )

    # window dominance chain on small dense instances
    bad_chain = []
    for t in range(20):
        series = tuple(TimeSeries(rng.normal(size=5)) for _ in range(3))
        inst = ProblemInstance(series, float(rng.choice(np.array([0.01, 0.1, 1.0]))))
        costs = []
        for d in (1, 2, 3, 4, None):
            costs.append(compute_mean(inst, SolverOptions(window=d)).table_cost)
        ok_chain = all(b <= a + 1e-9 for a, b in zip(costs, costs[1:]))
        ok_tail = abs(costs[-2] - costs[-1]) <= 1e-9
        if not (ok_chain and ok_tail):
            bad_chain.append((inst, costs))
    report(
        "window dominance",
        not bad_chain,
        "20 instances, non-increasing in d with d=n-1 equal to exact"
        if not bad_chain
        else f"{len(bad_chain)} violations, first: {bad_chain[0]}",
    )

    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------


def cmd_sample(args, argv) -> int:
    path = _resolve_ucr(args.ucr)
    dataset = parse_ucr(path)
    plan = SamplePlan(
        k=args.k, n=args.n, seed=args.seed, class_mode=args.class_mode, label=args.label
    )
    try:
        instance = sample_instance(dataset, plan, args.c)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = _open_out(args)
    try:
        if args.csv:
            for s in instance.series:
                out.write(s.label + "," + ",".join(f"{v:.12g}" for v in s.points) + "\n")
        else:
            print(
                json.dumps(
                    {
                        "command": _echo(argv),
                        "dataset": dataset.name,
                        "k": plan.k,
                        "n": plan.n,
                        "seed": plan.seed,
                        "class_mode": plan.class_mode,
                        "label": plan.label,
                        "c": instance.c,
                        "value_count": len(build_value_set(instance)),
                        "series": [
                            {"label": s.label, "points": s.points.tolist()}
                            for s in instance.series
                        ],
                    },
                    indent=2,
                ),
                file=out,
            )
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v) or v < 0:
        raise argparse.ArgumentTypeError(f"must be finite and nonnegative: {text!r}")
    return v


def _add_sampling_flags(p, k_required: bool):
    p.add_argument("--ucr", help="UCR-style dataset file (name resolves via ./ and ./data/)")
    p.add_argument("--k", type=int, required=k_required, help="series per instance")
    p.add_argument("--n", type=int, required=k_required, help="subsequence length")
    p.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    p.add_argument(
        "--class-mode",
        choices=["one-class", "mixed"],
        default="one-class",
        help="draw all series from one class, or from the whole pool",
    )
    p.add_argument("--label", help="pin the one-class draw to this class label")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="msm-mean",
        description="Exact and heuristic means of time series under the MSM metric.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("distance", help="pairwise MSM distance")
    p.add_argument("--c", type=_nonneg_float, required=True, help="split/merge cost")
    p.add_argument("--x", help="first series, comma-separated values")
    p.add_argument("--y", help="second series, comma-separated values")
    p.add_argument("--x-file", help="first series from a file")
    p.add_argument("--y-file", help="second series from a file")
    p.add_argument("--json", action="store_true", help="emit a JSON record")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("mean", help="mean of a sampled or explicit instance")
    _add_sampling_flags(p, k_required=False)
    p.add_argument("--series", help="comma-separated list of one-series-per-file inputs")
    p.add_argument("--c", type=_nonneg_float, help="split/merge cost (default: dataset's)")
    p.add_argument(
        "--max-length",
        help="mean length cap: integer or 'unbounded' (default: n)",
    )
    p.add_argument("--window", type=int, help="window heuristic size d")
    p.add_argument("--buckets", type=int, help="discretization heuristic bucket count v")
    p.add_argument(
        "--allow-empty-move-set",
        action="store_true",
        help="also enumerate the provably-redundant empty move set",
    )
    p.add_argument("--mem-cap-gib", type=float, default=8.0, help="memory guard (GiB)")
    p.add_argument("--json", action="store_true", help="emit JSON (default)")
    p.add_argument("--csv", action="store_true", help="emit a CSV row instead of JSON")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("bench", help="benchmark sweep, one CSV row per run")
    p.add_argument("--ucr", help="comma-separated dataset files")
    p.add_argument("--k", default="3", help="k values, e.g. 3 or 3,4,5")
    p.add_argument("--n", required=True, help="n values, e.g. 20 or 10..12 or 10,12")
    p.add_argument("--c", type=_nonneg_float, help="cost constant (default: per-dataset)")
    p.add_argument("--seed", type=int, default=0, help="base seed; each cell adds its index")
    p.add_argument("--window", help="window sizes to sweep, e.g. 1,2,3")
    p.add_argument("--buckets", help="bucket counts to sweep, e.g. 4,8,16")
    p.add_argument("--jobs", type=int, default=1, help="concurrent runs")
    p.add_argument("--timeout-s", type=float, default=600.0, help="per-run timeout (default 600)")
    p.add_argument("--mem-cap-gib", type=float, default=8.0, help="memory guard per run (GiB)")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="self-check against oracles and properties")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--instances", type=int, default=60, help="oracle-equivalence instances")
    p.add_argument("--triples", type=int, default=999, help="metric-axiom triples (split over c)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", help="emit a sampled instance")
    _add_sampling_flags(p, k_required=True)
    p.add_argument("--c", type=_nonneg_float, help="cost constant (default: dataset's)")
    p.add_argument("--json", action="store_true", help="emit JSON (default)")
    p.add_argument("--csv", action="store_true", help="emit re-ingestable CSV lines")
    p.add_argument("--out", help="write output here instead of stdout")
    p.set_defaults(func=cmd_sample)

    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, argv)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MemoryBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MEMORY
    except InfeasibleWindowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
