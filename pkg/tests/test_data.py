from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irt_explain import (
    DegenerateClassError,
    LabeledDataset,
    LabelError,
    ValidationError,
    majority_class,
    read_dataset,
    stratified_split,
    write_dataset,
)


def _dataset(labels, name="d"):
    labels = np.asarray(labels)
    rng = np.random.default_rng(0)
    return LabeledDataset(
        name=name,
        features=rng.normal(size=(labels.size, 3)),
        labels=labels,
        feature_names=("a", "b", "c"),
    )


class TestLabeledDataset:
    def test_rejects_non_binary_labels(self):
        with pytest.raises(LabelError):
            _dataset([0, 1, 2, 0, 1, 2])

    def test_rejects_single_class(self):
        with pytest.raises(LabelError):
            _dataset([1, 1, 1, 1])

    def test_rejects_non_finite_features(self):
        X = np.ones((4, 2))
        X[2, 1] = np.nan
        with pytest.raises(ValidationError, match="row 2"):
            LabeledDataset("d", X, np.array([0, 1, 0, 1]), ("u", "v"))

    def test_rejects_row_count_mismatch(self):
        with pytest.raises(ValidationError):
            LabeledDataset("d", np.ones((3, 2)), np.array([0, 1]), ("u", "v"))

    def test_features_are_read_only(self):
        ds = _dataset([0, 1, 0, 1])
        with pytest.raises(ValueError):
            ds.features[0, 0] = 9.0


class TestStratifiedSplit:
    def test_worked_example_counts(self):
        # 10 instances, classes {0: 6, 1: 4}, fraction 0.7.
        # oracle: enumerate per-class floors then hand out the remainder by
        # largest fractional part: floor(4.2)=4 (frac .2), floor(2.8)=2
        # (frac .8); round(7.0)=7 total -> the extra goes to class 1.
        ds = _dataset([0, 0, 0, 0, 0, 0, 1, 1, 1, 1])
        split = stratified_split(ds, 0.7, seed=3)
        assert split.train.class_counts() == {0: 4, 1: 3}
        assert split.test.class_counts() == {0: 2, 1: 1}

    def test_partition_property(self):
        ds = _dataset([0] * 13 + [1] * 9)
        split = stratified_split(ds, 0.6, seed=11)
        combined = np.sort(np.concatenate([split.train_indices, split.test_indices]))
        assert np.array_equal(combined, np.arange(22))
        assert not set(split.train_indices.tolist()) & set(split.test_indices.tolist())

    def test_deterministic_for_fixed_seed(self):
        ds = _dataset([0] * 10 + [1] * 8)
        s1 = stratified_split(ds, 0.7, seed=5)
        s2 = stratified_split(ds, 0.7, seed=5)
        assert np.array_equal(s1.train_indices, s2.train_indices)
        assert np.array_equal(s1.test_indices, s2.test_indices)

    def test_different_seed_changes_partition(self):
        ds = _dataset([0] * 10 + [1] * 8)
        s1 = stratified_split(ds, 0.7, seed=5)
        s2 = stratified_split(ds, 0.7, seed=6)
        assert not np.array_equal(s1.train_indices, s2.train_indices)

    def test_degenerate_class_error(self):
        ds = _dataset([0] * 9 + [1])
        with pytest.raises(DegenerateClassError):
            stratified_split(ds, 0.7, seed=0)

    def test_empty_side_error(self):
        # class 0 has 2 instances; with 0.7 the remainder lands on class 0
        # (frac part .4 vs .1), emptying its test side
        ds = _dataset([0, 0, 1, 1, 1])
        with pytest.raises(DegenerateClassError):
            stratified_split(ds, 0.7, seed=0)

    def test_bad_fraction(self):
        ds = _dataset([0, 0, 1, 1])
        with pytest.raises(ValidationError):
            stratified_split(ds, 1.0, seed=0)

    @settings(max_examples=40, deadline=None)
    @given(
        n0=st.integers(min_value=3, max_value=40),
        n1=st.integers(min_value=3, max_value=40),
        frac=st.sampled_from([0.5, 0.6, 0.7, 0.8]),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    def test_split_is_partition_and_near_stratified(self, n0, n1, frac, seed):
        ds = _dataset([0] * n0 + [1] * n1)
        try:
            split = stratified_split(ds, frac, seed=seed)
        except DegenerateClassError:
            return
        combined = np.sort(np.concatenate([split.train_indices, split.test_indices]))
        assert np.array_equal(combined, np.arange(n0 + n1))
        for cls, n in ((0, n0), (1, n1)):
            got = split.train.class_counts()[cls]
            assert abs(got - frac * n) <= 1.0


class TestMajorityClass:
    def test_majority(self):
        assert majority_class(np.array([0, 1, 1])) == 1

    def test_tie_breaks_to_zero(self):
        assert majority_class(np.array([0, 1, 0, 1])) == 0


class TestDatasetCsv:
    def test_round_trip(self, tmp_path):
        ds = _dataset([0, 1, 0, 1, 1, 0])
        path = tmp_path / "d.csv"
        write_dataset(ds, path)
        back = read_dataset(path, name="d")
        assert np.array_equal(back.labels, ds.labels)
        assert np.allclose(back.features, ds.features)
        assert back.feature_names == ds.feature_names
        # second write is byte-identical
        path2 = tmp_path / "d2.csv"
        write_dataset(back, path2)
        assert path.read_bytes() == path2.read_bytes()

    def test_missing_label_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(ValidationError, match="label"):
            read_dataset(path)

    def test_non_numeric_cell_names_row_and_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,label\n1,0\nx,1\n1,0\n2,1\n", encoding="utf-8")
        with pytest.raises(ValidationError, match=r"line 3.*'a'"):
            read_dataset(path)

    def test_non_binary_label_cell(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,label\n1,0\n2,2\n", encoding="utf-8")
        with pytest.raises(LabelError):
            read_dataset(path)
