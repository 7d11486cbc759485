from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irt_explain import (
    ARTIFICIAL_IDS,
    ResponseMatrix,
    ValidationError,
    artificial_rows,
    assemble_matrix,
    read_matrix,
    responses_from_predictions,
    write_matrix,
)
from irt_explain.errors import AlignmentError


class TestResponsesFromPredictions:
    def test_definition(self):
        row = responses_from_predictions([1, 0, 1], [1, 1, 1])
        assert row.tolist() == [1, 0, 1]

    def test_identity_case(self):
        truth = np.array([0, 1, 1, 0])
        assert responses_from_predictions(truth, truth).tolist() == [1, 1, 1, 1]

    def test_complement_case(self):
        truth = np.array([0, 1, 1, 0])
        assert responses_from_predictions(1 - truth, truth).tolist() == [0, 0, 0, 0]

    def test_length_mismatch(self):
        with pytest.raises(AlignmentError):
            responses_from_predictions([1, 0], [1, 0, 1])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=60))
    def test_row_sum_equals_accuracy_count(self, pairs):
        pred = np.array([p for p, _ in pairs])
        truth = np.array([t for _, t in pairs])
        row = responses_from_predictions(pred, truth)
        assert row.sum() == int(np.sum(pred == truth))


class TestArtificialRows:
    def test_majority_minority(self):
        rows = dict(artificial_rows([0, 0, 1], 0, (1, 2, 3)))
        assert rows["majority"].tolist() == [1, 1, 0]
        assert rows["minority"].tolist() == [0, 0, 1]

    def test_optimal_pessimal(self):
        rows = dict(artificial_rows([1, 0, 1, 1], 1, (1, 2, 3)))
        assert rows["optimal"].tolist() == [1, 1, 1, 1]
        assert rows["pessimal"].tolist() == [0, 0, 0, 0]

    def test_names_and_order(self):
        rows = artificial_rows([0, 1], 0, (1, 2, 3))
        assert tuple(name for name, _ in rows) == ARTIFICIAL_IDS

    def test_random_rows_deterministic(self):
        r1 = dict(artificial_rows([0, 1] * 10, 0, (7, 8, 9)))
        r2 = dict(artificial_rows([0, 1] * 10, 0, (7, 8, 9)))
        for name in ("rand1", "rand2", "rand3"):
            assert r1[name].tolist() == r2[name].tolist()
        assert r1["rand1"].tolist() != r1["rand2"].tolist()

    def test_empty_truth_rejected(self):
        with pytest.raises(ValidationError):
            artificial_rows([], 0, (1, 2, 3))

    def test_majority_row_mean_matches_test_frequency(self):
        truth = np.array([0, 0, 0, 1, 1])
        rows = dict(artificial_rows(truth, 0, (1, 2, 3)))
        assert rows["majority"].mean() == np.mean(truth == 0)


class TestAssembleMatrix:
    def test_shape_and_order(self):
        m = assemble_matrix([("a", [1, 0, 1]), ("b", [0, 0, 1])])
        assert m.n_respondents == 2 and m.n_items == 3
        assert m.respondent_ids == ("a", "b")
        assert m.cells.tolist() == [[1, 0, 1], [0, 0, 1]]

    def test_duplicate_id_rejected(self):
        with pytest.raises(ValidationError, match="duplicate"):
            assemble_matrix([("a", [1]), ("a", [0])])

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            assemble_matrix([])

    def test_ragged_rejected(self):
        with pytest.raises(ValidationError, match="ragged"):
            assemble_matrix([("a", [1, 0]), ("b", [1])])

    def test_non_binary_cell_rejected(self):
        with pytest.raises(ValidationError):
            assemble_matrix([("a", [0, 2])])


class TestMatrixCsv:
    def test_round_trip_bit_identical(self, tmp_path):
        rng = np.random.default_rng(5)
        m = ResponseMatrix(
            respondent_ids=("m1", "m2", "optimal"),
            item_ids=("i1", "i2", "i3", "i4"),
            cells=rng.integers(0, 2, size=(3, 4)),
        )
        p1 = tmp_path / "m.csv"
        p2 = tmp_path / "m2.csv"
        write_matrix(m, p1)
        back = read_matrix(p1)
        assert back == m
        write_matrix(back, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_cell_names_row_and_column(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("respondent,i1,i2\nm1,0,2\n", encoding="utf-8")
        with pytest.raises(ValidationError, match=r"line 2.*'i2'"):
            read_matrix(path)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("model,i1\nm1,0\n", encoding="utf-8")
        with pytest.raises(ValidationError, match="respondent"):
            read_matrix(path)

    def test_duplicate_item_header(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("respondent,i1,i1\nm1,0,1\n", encoding="utf-8")
        with pytest.raises(ValidationError, match="duplicated item"):
            read_matrix(path)

    def test_inconsistent_column_count(self, tmp_path):
        path = tmp_path / "m.csv"
        path.write_text("respondent,i1,i2\nm1,0\n", encoding="utf-8")
        with pytest.raises(ValidationError, match="line 2"):
            read_matrix(path)

    def test_lf_line_endings(self, tmp_path):
        m = assemble_matrix([("a", [1, 0])])
        path = tmp_path / "m.csv"
        write_matrix(m, path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")
