"""Mean cost as a homogeneity measure: one class vs mixed draws.

Series sampled from a single class share shape, so their mean sits close
to all of them; draws that straddle classes force the mean to average
incompatible shapes and the optimal cost jumps.  (The bundled file is a
synthetic stand-in with the ItalyPowerDemand format; see data/README.md.)
"""

from pathlib import Path

import numpy as np

from msmmean import SamplePlan, SolverOptions, compute_mean, parse_ucr, sample_instance

data = Path(__file__).resolve().parent.parent / "data" / "ItalyPowerDemand_TRAIN.tsv"
dataset = parse_ucr(data)
print(f"dataset: {dataset.name}, {len(dataset)} series, classes {dataset.labels}")

k, n, c = 3, 16, 0.1
opts = SolverOptions(max_mean_length=n)
print(f"drawing k={k} subsequences of length n={n}, c={c}")
print()
print(f"{'seed':>5} {'one-class':>10} {'mixed':>10}")

one_all, mixed_all = [], []
for seed in range(1, 7):
    one = sample_instance(dataset, SamplePlan(k=k, n=n, seed=seed), c=c)
    # reroll mixed draws until they actually span two classes
    for attempt in range(64):
        plan = SamplePlan(k=k, n=n, seed=seed + 10007 * attempt, class_mode="mixed")
        mixed = sample_instance(dataset, plan, c=c)
        if len({s.label for s in mixed.series}) >= 2:
            break
    cost_one = compute_mean(one, opts).cost
    cost_mixed = compute_mean(mixed, opts).cost
    one_all.append(cost_one)
    mixed_all.append(cost_mixed)
    print(f"{seed:>5} {cost_one:>10.3f} {cost_mixed:>10.3f}")

print()
print(f"averages: one-class {np.mean(one_all):.3f}, mixed {np.mean(mixed_all):.3f}")
