"""Regenerate data/ItalyPowerDemand_TRAIN.tsv, a synthetic stand-in for
the UCR ItalyPowerDemand training split.

The build environment has no network access, so the real UCR file
cannot be downloaded; this script fabricates a dataset with the same
shape and format instead: 67 z-normalized series of 24 hourly points in
two classes (34 + 33).  Class 1 mimics a cold-season demand curve with
morning and evening peaks; class 2 a warm-season curve with one broad
midday peak.  Everything is drawn from a fixed PCG64 seed, so the file
is bit-reproducible; see data/README.md for the full disclosure.

Run from the repository root:

    python3 demos/make_italy_surrogate.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

SEED = 20260301
N_WINTER = 34
N_SUMMER = 33
LENGTH = 24

HOURS = np.arange(LENGTH, dtype=np.float64)


def _bump(mu: float, sigma: float) -> np.ndarray:
    return np.exp(-0.5 * ((HOURS - mu) / sigma) ** 2)


def winter_day(rng: np.random.Generator) -> np.ndarray:
    morning = (1.0 + rng.normal(0, 0.12)) * _bump(8.3 + rng.normal(0, 0.5), 2.0 + rng.normal(0, 0.2))
    evening = (0.85 + rng.normal(0, 0.12)) * _bump(19.2 + rng.normal(0, 0.5), 2.3 + rng.normal(0, 0.2))
    midday_fill = 0.25 * _bump(13.0, 6.0)
    return morning + evening + midday_fill + rng.normal(0, 0.06, LENGTH)


def summer_day(rng: np.random.Generator) -> np.ndarray:
    midday = (1.0 + rng.normal(0, 0.10)) * _bump(13.0 + rng.normal(0, 0.6), 3.6 + rng.normal(0, 0.3))
    evening_shoulder = 0.15 * _bump(20.5, 2.0)
    return midday + evening_shoulder + rng.normal(0, 0.06, LENGTH)


def znorm(y: np.ndarray) -> np.ndarray:
    return (y - y.mean()) / y.std()


def main() -> None:
    rng = np.random.default_rng(SEED)
    rows = [("1", znorm(winter_day(rng))) for _ in range(N_WINTER)]
    rows += [("2", znorm(summer_day(rng))) for _ in range(N_SUMMER)]
    order = rng.permutation(len(rows))

    out = Path(__file__).resolve().parent.parent / "data" / "ItalyPowerDemand_TRAIN.tsv"
    out.parent.mkdir(exist_ok=True)
    with out.open("w", encoding="utf-8", newline="\n") as fh:
        for idx in order:
            label, y = rows[idx]
            fh.write(label + "\t" + "\t".join(f"{v:.6f}" for v in y) + "\n")
    print(f"wrote {out} ({len(rows)} series of length {LENGTH})")


if __name__ == "__main__":
    main()
