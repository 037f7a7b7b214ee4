"""UCR-style parsing, per-dataset cost constants, instance sampling."""

import numpy as np
import pytest

from msmmean.core import TimeSeries
from msmmean.ingest import (
    Dataset,
    SamplePlan,
    default_c_for,
    parse_ucr,
    sample_instance,
)


def write_dataset(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


class TestParseUcr:
    def test_tab_separated(self, tmp_path):
        path = write_dataset(tmp_path, "Toy_TRAIN.tsv", ["1\t0.5\t1.5", "2\t2.0\t3.0"])
        ds = parse_ucr(path)
        assert len(ds) == 2
        assert ds.series[0].label == "1"
        assert ds.series[0].points.tolist() == [0.5, 1.5]
        assert ds.labels == ("1", "2")

    def test_comma_separated(self, tmp_path):
        path = write_dataset(tmp_path, "toy.csv", ["a,1,2,3", "a,4,5,6"])
        ds = parse_ucr(path)
        assert ds.series[1].points.tolist() == [4.0, 5.0, 6.0]

    def test_trailing_whitespace_and_blank_lines(self, tmp_path):
        path = write_dataset(tmp_path, "toy.tsv", ["1\t2.0\t3.0\t", "", "1\t4.0\t5.0"])
        ds = parse_ucr(path)
        assert len(ds) == 2

    def test_bad_token_reports_path_and_line(self, tmp_path):
        path = write_dataset(tmp_path, "bad.tsv", ["1\t2.0", "1\toops"])
        with pytest.raises(ValueError, match=r"bad\.tsv:2"):
            parse_ucr(path)

    def test_nonfinite_rejected(self, tmp_path):
        path = write_dataset(tmp_path, "bad.tsv", ["1\tnan\t2.0"])
        with pytest.raises(ValueError):
            parse_ucr(path)

    def test_empty_file_rejected(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(ValueError):
            parse_ucr(path)

    def test_known_dataset_name_picks_up_default_c(self, tmp_path):
        path = write_dataset(tmp_path, "Coffee_TRAIN.tsv", ["1\t0.0\t1.0"])
        assert parse_ucr(path).default_c == 0.01


class TestDefaultC:
    @pytest.mark.parametrize(
        "name,c",
        [
            ("Coffee", 0.01),
            ("coffee_TEST", 0.01),
            ("SyntheticControl", 0.1),
            ("Adiac_TRAIN", 1.0),
            ("ItalyPowerDemand", None),
            ("NoSuchDataset", None),
        ],
    )
    def test_lookup(self, name, c):
        assert default_c_for(name) == c


def toy_dataset():
    rng = np.random.default_rng(0)
    series = []
    for label in ("1", "2"):
        for _ in range(6):
            series.append(TimeSeries(rng.normal(size=12), label=label))
    return Dataset(name="Toy", series=tuple(series), default_c=0.5)


class TestSamplePlan:
    def test_rejects_label_pin_in_mixed_mode(self):
        with pytest.raises(ValueError):
            SamplePlan(k=2, n=3, seed=0, class_mode="mixed", label="1")

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            SamplePlan(k=2, n=3, seed=0, class_mode="stratified")


class TestSampleInstance:
    def test_one_class_draw_is_pure(self):
        ds = toy_dataset()
        inst = sample_instance(ds, SamplePlan(k=3, n=5, seed=4))
        assert len({s.label for s in inst.series}) == 1
        assert all(len(s) == 5 for s in inst.series)
        assert inst.c == 0.5

    def test_pinned_label(self):
        ds = toy_dataset()
        inst = sample_instance(ds, SamplePlan(k=2, n=4, seed=9, label="2"))
        assert {s.label for s in inst.series} == {"2"}

    def test_explicit_c_overrides_default(self):
        ds = toy_dataset()
        inst = sample_instance(ds, SamplePlan(k=2, n=4, seed=1), c=0.07)
        assert inst.c == 0.07

    def test_missing_c_rejected(self):
        ds = Dataset(name="X", series=toy_dataset().series, default_c=None)
        with pytest.raises(ValueError):
            sample_instance(ds, SamplePlan(k=2, n=4, seed=1))

    def test_same_seed_same_draw(self):
        ds = toy_dataset()
        a = sample_instance(ds, SamplePlan(k=3, n=6, seed=21))
        b = sample_instance(ds, SamplePlan(k=3, n=6, seed=21))
        assert [s.points.tolist() for s in a.series] == [
            s.points.tolist() for s in b.series
        ]

    def test_different_seeds_differ(self):
        ds = toy_dataset()
        draws = {
            tuple(map(tuple, (s.points.tolist() for s in sample_instance(
                ds, SamplePlan(k=3, n=6, seed=seed)).series)))
            for seed in range(8)
        }
        assert len(draws) > 1

    def test_subsequences_come_from_members(self):
        ds = toy_dataset()
        inst = sample_instance(ds, SamplePlan(k=2, n=4, seed=3, class_mode="mixed"))
        pool = [s.points.tolist() for s in ds.series]
        for s in inst.series:
            window = s.points.tolist()
            assert any(
                window == member[i : i + 4]
                for member in pool
                for i in range(len(member) - 3)
            )

    def test_n_longer_than_members_rejected(self):
        ds = toy_dataset()
        with pytest.raises(ValueError):
            sample_instance(ds, SamplePlan(k=2, n=13, seed=0))

    def test_k_larger_than_class_rejected(self):
        ds = toy_dataset()
        with pytest.raises(ValueError):
            sample_instance(ds, SamplePlan(k=7, n=4, seed=0, label="1"))
