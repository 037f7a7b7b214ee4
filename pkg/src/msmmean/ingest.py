"""Loading UCR-archive-style text files and sampling problem instances.

A dataset file holds one labeled series per line: the first field is
the class label, the remaining fields are the points; fields are
separated by tabs or commas (detected per file from the first data
line).  Sampling follows the benchmark protocol: pick k series (from a
single uniformly chosen class, or from the whole pool), then cut a
contiguous subsequence of length n at a uniform start offset from each.
All randomness comes from a seeded PCG64 generator, so identical inputs
reproduce bit-identical instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import ProblemInstance, TimeSeries

__all__ = [
    "Dataset",
    "SamplePlan",
    "TABLE1_C",
    "default_c_for",
    "parse_ucr",
    "sample_instance",
]

#: Built-in split/merge cost constants for the bundled benchmark
#: datasets, keyed by normalized dataset name.  ``None`` marks a
#: dataset used with several cost constants, so callers must pass one
#: explicitly.
TABLE1_C: dict[str, float | None] = {
    "50words": 1.0,
    "adiac": 1.0,
    "beef": 0.1,
    "cbf": 0.1,
    "coffee": 0.01,
    "ecg": 1.0,
    "faceall": 1.0,
    "facefour": 1.0,
    "fish": 0.1,
    "gunpoint": 0.01,
    "italypowerdemand": None,
    "lighting2": 0.01,
    "lighting7": 1.0,
    "lightning2": 0.01,
    "lightning7": 1.0,
    "oliveoil": 0.01,
    "osuleaf": 0.1,
    "swedishleaf": 1.0,
    "syntheticcontrol": 0.1,
    "trace": 0.01,
    "twopatterns": 1.0,
    "wafer": 1.0,
    "yoga": 0.1,
}


def _normalize_name(name: str) -> str:
    base = "".join(ch for ch in name if ch.isalnum()).lower()
    for suffix in ("train", "test"):
        if base.endswith(suffix):
            base = base[: -len(suffix)]
    return base


def default_c_for(name: str) -> float | None:
    """Built-in cost constant for a dataset name, or None if unknown or
    deliberately unset (name matching ignores case, punctuation, and a
    TRAIN/TEST suffix)."""
    return TABLE1_C.get(_normalize_name(name))


@dataclass(frozen=True)
class Dataset:
    """A named collection of labeled series.

    Attributes
    ----------
    name : str
    series : tuple[TimeSeries, ...]
        Each carries a nonempty class label, in file order.
    default_c : float or None
        Built-in cost constant, when the name is a known benchmark
        dataset with a single published value.
    """

    name: str
    series: tuple
    default_c: float | None = None

    def __post_init__(self):
        if not self.series:
            raise ValueError(f"dataset {self.name!r}: no series")
        for i, s in enumerate(self.series):
            if not isinstance(s, TimeSeries):
                raise TypeError(f"dataset {self.name!r}: series {i} is not a TimeSeries")
            if not s.label:
                raise ValueError(f"dataset {self.name!r}: series {i} has no class label")
        if self.default_c is not None and not (
            math.isfinite(self.default_c) and self.default_c >= 0
        ):
            raise ValueError(f"default_c must be finite and nonnegative, got {self.default_c}")

    def __len__(self) -> int:
        return len(self.series)

    @property
    def labels(self) -> tuple:
        """Distinct class labels in sorted order."""
        return tuple(sorted({s.label for s in self.series}))


@dataclass(frozen=True)
class SamplePlan:
    """How to draw one problem instance from a dataset.

    ``class_mode`` is ``"one-class"`` (all k series share one uniformly
    chosen label) or ``"mixed"`` (uniform over the whole pool).  The
    optional ``label`` pins the one-class draw to a specific class
    instead of choosing one at random.
    """

    k: int
    n: int
    seed: int
    class_mode: str = "one-class"
    label: str | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if self.class_mode not in ("one-class", "mixed"):
            raise ValueError(
                f"class_mode must be 'one-class' or 'mixed', got {self.class_mode!r}"
            )
        if self.label is not None and self.class_mode != "one-class":
            raise ValueError("a pinned label requires class_mode 'one-class'")


def parse_ucr(path) -> Dataset:
    """Parse a UCR-style text file into a :class:`Dataset`.

    Parameters
    ----------
    path : str or Path
        UTF-8 text, one series per line (LF or CRLF), first field the
        class label, remaining fields decimal point values.  The field
        separator — tab or comma — is detected from the first data
        line and applied to the whole file.

    Raises
    ------
    ValueError
        Empty file, malformed line (reported with its line number), or
        non-finite value.
    OSError
        Unreadable file.
    """
    path = Path(path)
    sep = None
    series = []
    with path.open("r", encoding="utf-8", newline=None) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if sep is None:
                sep = "\t" if "\t" in line else ","
            fields = [f.strip() for f in line.split(sep)]
            while fields and fields[-1] == "":
                fields.pop()
            if len(fields) < 2:
                raise ValueError(
                    f"{path}:{lineno}: expected a label and at least one value, "
                    f"got {len(fields)} field(s)"
                )
            label = fields[0]
            if not label:
                raise ValueError(f"{path}:{lineno}: empty class label")
            try:
                points = np.array([float(f) for f in fields[1:]], np.float64)
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if not np.all(np.isfinite(points)):
                raise ValueError(f"{path}:{lineno}: non-finite value")
            series.append(TimeSeries(points, label=label))
    if not series:
        raise ValueError(f"{path}: no series")
    name = path.stem
    return Dataset(name=name, series=tuple(series), default_c=default_c_for(name))


def sample_instance(dataset: Dataset, plan: SamplePlan, c: float | None = None) -> ProblemInstance:
    """Draw one problem instance from ``dataset`` per ``plan``.

    Series are drawn without replacement from the pool of eligible
    series (length >= plan.n, matching the class mode), then each
    contributes the contiguous subsequence of length ``plan.n`` at an
    independent uniform start offset.  All draws come from
    ``numpy.random.default_rng(plan.seed)`` (PCG64), so the result is a
    pure function of (dataset, plan, c).

    Parameters
    ----------
    c : float, optional
        Cost constant; defaults to ``dataset.default_c``.

    Raises
    ------
    ValueError
        No cost constant available, or not enough eligible series.
    """
    if c is None:
        c = dataset.default_c
    if c is None:
        raise ValueError(
            f"dataset {dataset.name!r} has no built-in cost constant; pass c explicitly"
        )
    rng = np.random.default_rng(plan.seed)
    eligible = [s for s in dataset.series if len(s) >= plan.n]
    if not eligible:
        raise ValueError(
            f"dataset {dataset.name!r}: no series of length >= {plan.n}"
        )

    if plan.class_mode == "one-class":
        by_label: dict[str, list] = {}
        for s in eligible:
            by_label.setdefault(s.label, []).append(s)
        rich = sorted(lbl for lbl, group in by_label.items() if len(group) >= plan.k)
        if plan.label is not None:
            if plan.label not in by_label:
                raise ValueError(
                    f"dataset {dataset.name!r}: no eligible series with label {plan.label!r}"
                )
            if plan.label not in rich:
                raise ValueError(
                    f"dataset {dataset.name!r}: class {plan.label!r} has fewer than "
                    f"{plan.k} eligible series"
                )
            label = plan.label
        else:
            if not rich:
                raise ValueError(
                    f"dataset {dataset.name!r}: no class has {plan.k} series of "
                    f"length >= {plan.n}"
                )
            label = rich[int(rng.integers(len(rich)))]
        pool = by_label[label]
    else:
        pool = eligible

    if len(pool) < plan.k:
        raise ValueError(
            f"dataset {dataset.name!r}: only {len(pool)} eligible series, need {plan.k}"
        )
    chosen = rng.choice(len(pool), size=plan.k, replace=False)
    out = []
    for idx in chosen:
        src = pool[int(idx)]
        start = int(rng.integers(0, len(src) - plan.n + 1))
        out.append(TimeSeries(src.points[start : start + plan.n], label=src.label))
    return ProblemInstance(tuple(out), float(c))
