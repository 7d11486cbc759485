from __future__ import annotations

import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from irt_explain import load_schema, read_matrix
from irt_explain.cli import main

TOY = str(resources.files("irt_explain").joinpath("data/toy.csv"))

SMALL = ["--rf-counts", "1-8", "--knn-ks", "2,3"]  # 8 forests + 2 kNN + 4 = 14 members


@pytest.fixture(autouse=True)
def _fixed_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")


@pytest.fixture(scope="module")
def default_pool_dir(tmp_path_factory):
    """One default-pool run on the bundled toy dataset, shared across tests."""
    out = tmp_path_factory.mktemp("toy_default")
    assert main(["pool", TOY, "--seed", "7", "--out-dir", str(out)]) == 0
    return out


def _tree(path: Path) -> dict[str, bytes]:
    return {
        str(p.relative_to(path)): p.read_bytes()
        for p in sorted(path.rglob("*"))
        if p.is_file()
    }


class TestPool:
    def test_default_pool_writes_138_rows(self, default_pool_dir):
        matrix = read_matrix(default_pool_dir / "matrix.csv")
        assert matrix.n_respondents == 131 + 7
        assert matrix.respondent_ids[-7:] == (
            "optimal",
            "pessimal",
            "majority",
            "minority",
            "rand1",
            "rand2",
            "rand3",
        )
        # toy has 40 rows, 30% test side = 12 items
        assert matrix.n_items == 12

    def test_split_indices_file(self, default_pool_dir):
        split = json.loads((default_pool_dir / "split.json").read_text())
        train, test = set(split["train_indices"]), set(split["test_indices"])
        assert not train & test
        assert train | test == set(range(40))

    def test_deterministic_across_runs(self, tmp_path):
        d1, d2 = tmp_path / "a", tmp_path / "b"
        for d in (d1, d2):
            assert main(["pool", TOY, "--seed", "3", "--out-dir", str(d), *SMALL]) == 0
        assert _tree(d1) == _tree(d2)

    def test_missing_label_column_exit_2(self, tmp_path, capsys):
        code = main(
            ["pool", TOY, "--label-col", "klass", "--out-dir", str(tmp_path), *SMALL]
        )
        assert code == 2
        assert "klass" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["pool", str(tmp_path / "nope.csv"), "--out-dir", str(tmp_path)]) == 2


class TestFit:
    def test_fit_on_pool_matrix(self, default_pool_dir, tmp_path):
        out = tmp_path / "fit"
        code = main(
            ["fit", str(default_pool_dir / "matrix.csv"), "--seed", "7", "--out-dir", str(out)]
        )
        assert code == 0
        log = json.loads((out / "fit_log.json").read_text())
        assert log["converged"] is True
        assert (out / "items.csv").exists() and (out / "abilities.csv").exists()

    def test_recovery_invoked_with_truth(self, tmp_path):
        sim = tmp_path / "sim"
        assert main(
            [
                "simulate", "--respondents", "60", "--items", "30",
                "--a-range", "0.3", "2.5", "--seed", "5", "--out-dir", str(sim),
            ]
        ) == 0
        out = tmp_path / "fit"
        code = main(
            [
                "fit", str(sim / "matrix.csv"), "--seed", "5",
                "--truth-items", str(sim / "true_items.csv"),
                "--truth-theta", str(sim / "true_theta.csv"),
                "--out-dir", str(out),
            ]
        )
        assert code == 0
        recovery = json.loads((out / "recovery.json").read_text())
        assert recovery["corr_theta"] > 0.7

    def test_malformed_cell_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("respondent,i1,i2\nm1,0,2\nm2,1,0\n", encoding="utf-8")
        assert main(["fit", str(bad), "--out-dir", str(tmp_path)]) == 2
        assert "i2" in capsys.readouterr().err

    def test_max_iter_1_records_non_convergence(self, default_pool_dir, tmp_path):
        out = tmp_path / "fit1"
        code = main(
            [
                "fit", str(default_pool_dir / "matrix.csv"), "--seed", "7",
                "--max-iter", "1", "--out-dir", str(out),
            ]
        )
        assert code == 0  # warning, not an error, without --strict
        log = json.loads((out / "fit_log.json").read_text())
        assert log["converged"] is False

    def test_max_iter_1_strict_exit_3(self, default_pool_dir, tmp_path):
        code = main(
            [
                "fit", str(default_pool_dir / "matrix.csv"), "--seed", "7",
                "--max-iter", "1", "--strict", "--out-dir", str(tmp_path / "x"),
            ]
        )
        assert code == 3


@pytest.fixture(scope="module")
def fitted(default_pool_dir, tmp_path_factory):
    out = tmp_path_factory.mktemp("fitted")
    assert main(
        ["fit", str(default_pool_dir / "matrix.csv"), "--seed", "7", "--out-dir", str(out)]
    ) == 0
    return out


class TestExplain:
    def _explain_args(self, default_pool_dir, fitted, respondent, out):
        return [
            "explain",
            "--items", str(fitted / "items.csv"),
            "--abilities", str(fitted / "abilities.csv"),
            "--respondent", respondent,
            "--test", str(default_pool_dir / "test.csv"),
            "--predictions", str(default_pool_dir / "predictions.csv"),
            "--out-dir", str(out),
        ]

    def test_unknown_respondent_lists_available(self, default_pool_dir, fitted, tmp_path, capsys):
        code = main(self._explain_args(default_pool_dir, fitted, "nope", tmp_path))
        assert code == 2
        err = capsys.readouterr().err
        assert "rf_t100" in err and "optimal" in err

    def test_report_passes_schema(self, default_pool_dir, fitted, tmp_path):
        out = tmp_path / "rep"
        assert main(self._explain_args(default_pool_dir, fitted, "rf_t100", out)) == 0
        report = json.loads((out / "report.json").read_text())
        jsonschema.validate(report, load_schema())
        assert (out / "verdicts.csv").exists()
        for name in (
            "hist_discrimination.png",
            "hist_difficulty.png",
            "hist_guessing.png",
            "param_scatter.png",
            "probability_by_instance.png",
            "icc_pair.png",
        ):
            assert (out / "figures" / name).exists()

    def test_optimal_respondent_never_unreliable_and_wrong(
        self, default_pool_dir, fitted, tmp_path
    ):
        out = tmp_path / "opt"
        assert main(self._explain_args(default_pool_dir, fitted, "optimal", out)) == 0
        report = json.loads((out / "report.json").read_text())
        assert report["model_diagnostics"]["no_errors"] is True
        assert report["model_diagnostics"]["accuracy_total"] == 1.0

    def test_verdict_probabilities_recomputable(self, default_pool_dir, fitted, tmp_path):
        from irt_explain import ItemParams, icc

        out = tmp_path / "rv"
        assert main(self._explain_args(default_pool_dir, fitted, "rf_t100", out)) == 0
        report = json.loads((out / "report.json").read_text())
        theta = report["model_diagnostics"]["ability"]
        for v in report["verdicts"]:
            item = ItemParams(
                v["item"]["discrimination"], v["item"]["difficulty"], v["item"]["guessing"]
            )
            assert v["success_probability"] == pytest.approx(icc(theta, item), abs=1e-12)
            assert v["reliable"] == (v["success_probability"] >= 0.5)


class TestSimulateCmd:
    def test_deterministic(self, tmp_path):
        d1, d2 = tmp_path / "s1", tmp_path / "s2"
        args = ["simulate", "--respondents", "40", "--items", "20", "--seed", "9"]
        assert main([*args, "--out-dir", str(d1)]) == 0
        assert main([*args, "--out-dir", str(d2)]) == 0
        assert _tree(d1) == _tree(d2)

    def test_calibration_flag(self, tmp_path):
        out = tmp_path / "cal"
        code = main(
            [
                "simulate", "--respondents", "80", "--items", "40", "--seed", "4",
                "--check-calibration", "--out-dir", str(out),
            ]
        )
        assert code == 0
        calibration = json.loads((out / "calibration.json").read_text())
        assert calibration["within_bounds"] is True

    def test_invalid_range_exit_2(self, tmp_path):
        code = main(
            ["simulate", "--c-range", "0", "1", "--out-dir", str(tmp_path / "x")]
        )
        assert code == 2


class TestRunAllAndRerun:
    def test_composed_equals_run_all(self, tmp_path):
        composed, oneshot = tmp_path / "composed", tmp_path / "oneshot"
        seed = ["--seed", "11"]
        assert main(["pool", TOY, *seed, *SMALL, "--out-dir", str(composed)]) == 0
        assert main(["fit", str(composed / "matrix.csv"), *seed, "--out-dir", str(composed)]) == 0
        assert main(
            [
                "explain",
                "--items", str(composed / "items.csv"),
                "--abilities", str(composed / "abilities.csv"),
                "--respondent", "rf_t5",
                "--test", str(composed / "test.csv"),
                "--predictions", str(composed / "predictions.csv"),
                "--pool-manifest", str(composed / "run_manifest_pool.json"),
                "--fit-log", str(composed / "fit_log.json"),
                "--out-dir", str(composed),
            ]
        ) == 0
        assert main(
            [
                "run-all", TOY, *seed, *SMALL,
                "--respondent", "rf_t5", "--out-dir", str(oneshot),
            ]
        ) == 0
        composed_tree = _tree(composed)
        oneshot_tree = _tree(oneshot)
        extra = set(oneshot_tree) - set(composed_tree)
        assert extra == {"run_manifest_run_all.json"}
        for name, blob in composed_tree.items():
            assert oneshot_tree[name] == blob, f"{name} differs"

    def test_rerun_reproduces_outputs(self, tmp_path):
        first, second = tmp_path / "first", tmp_path / "second"
        assert main(
            ["run-all", TOY, "--seed", "2", *SMALL, "--respondent", "rf_t3",
             "--out-dir", str(first)]
        ) == 0
        assert main(
            ["rerun", str(first / "run_manifest_run_all.json"), "--out-dir", str(second)]
        ) == 0
        assert _tree(first) == _tree(second)


def test_out_dir_env_variable(tmp_path, monkeypatch):
    target = tmp_path / "from_env"
    monkeypatch.setenv("IRT_EXPLAIN_OUT", str(target))
    assert main(["simulate", "--respondents", "20", "--items", "8", "--seed", "1"]) == 0
    assert (target / "matrix.csv").exists()


def test_entry_point_help_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "irt_explain.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "irt-explain" in proc.stdout


def test_artificial_predictions_consistent(default_pool_dir):
    # the derived predictions of artificial respondents reproduce their
    # response rows exactly
    matrix = read_matrix(default_pool_dir / "matrix.csv")
    predictions = read_matrix(default_pool_dir / "predictions.csv")
    import csv as _csv

    with open(default_pool_dir / "test.csv", encoding="utf-8") as fh:
        rows = list(_csv.DictReader(fh))
    truth = np.array([int(r["label"]) for r in rows])
    for rid in ("optimal", "pessimal", "majority", "minority", "rand1"):
        resp = matrix.row(rid)
        pred = predictions.row(rid)
        assert np.array_equal((pred == truth).astype(int), resp)
