import json
import math

import numpy as np
import pytest

import Main
from Backend.MatrixCore import fourier_matrix
from Backend.MatrixIO import load_matrix, save_matrix
from Backend.Verification import CheckResult, SuiteResult


def _parse(text):
    return dict(line.split(": ", 1) for line in text.strip().splitlines())


@pytest.fixture
def files(tmp_path, rotation):
    paths = {
        "rotation": tmp_path / "rotation.json",
        "state": tmp_path / "state.json",
        "half_state": tmp_path / "half.json",
        "identity": tmp_path / "identity.json",
        "fourier": tmp_path / "f3.json",
        "skew": tmp_path / "skew.json",
    }
    save_matrix(paths["rotation"], rotation)
    save_matrix(paths["state"], np.diag([0.7, 0.3]))
    save_matrix(paths["half_state"], np.diag([0.3, 0.2]))
    save_matrix(paths["identity"], np.eye(3))
    save_matrix(paths["fourier"], fourier_matrix(3))
    save_matrix(paths["skew"], np.array([[1, 1], [0, 1]]))
    return {name: str(path) for name, path in paths.items()}


def test_entropy_of_fourier(files, capsys):
    assert Main.main(["entropy", files["fourier"]]) == 0
    report = _parse(capsys.readouterr().out)
    assert report["n"] == "3"
    assert float(report["h"]) == pytest.approx(math.log(3), abs=1e-8)
    assert report["h"] == report["log_n"]
    assert report["orthogonal"] == "true"


def test_hphi_by_hand(files, capsys):
    assert Main.main(["hphi", files["state"], files["rotation"]]) == 0
    report = _parse(capsys.readouterr().out)
    assert float(report["h_phi"]) == pytest.approx(0.294911798, abs=1e-8)
    assert float(report["weighted_entropy"]) == pytest.approx(0.325082974, abs=1e-8)
    assert "search.value" not in report


def test_hphi_with_search(files, capsys):
    assert Main.main(["hphi", files["state"], files["rotation"], "--restarts", "2", "--seed", "4"]) == 0
    report = _parse(capsys.readouterr().out)
    assert float(report["search.gap"]) <= 1e-9
    assert report["search.seed"] == "4"


def test_output_is_byte_identical_across_runs(files, capsys):
    args = ["hphi", files["state"], files["rotation"], "--restarts", "2", "--seed", "11"]
    Main.main(args)
    first = capsys.readouterr().out
    Main.main(args)
    assert capsys.readouterr().out == first


def test_json_output(files, capsys):
    assert Main.main(["hclosed", files["identity"], files["fourier"], "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["n"] == 3
    assert report["h"] == pytest.approx(math.log(3), abs=1e-8)
    assert report["maximal"] is True


def test_orthogonal_verb(files, capsys):
    assert Main.main(["orthogonal", files["identity"], files["fourier"]]) == 0
    report = _parse(capsys.readouterr().out)
    assert report["orthogonal"] == "true"
    assert report["commuting_square"] == "true"
    assert report["entropy_maximal"] == "true"


def test_gen_permutation_is_one_based(capsys):
    assert Main.main(["gen", "permutation", "--perm", "2,3,1"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["n"] == 3
    # column 1 holds e_2
    assert document["entries"][3] == [1.0, 0.0]
    assert document["entries"][0] == [0.0, 0.0]


def test_gen_writes_file(tmp_path):
    out = tmp_path / "u.json"
    assert Main.main(["gen", "random", "--n", "4", "--seed", "3", "--out", str(out)]) == 0
    assert load_matrix(out).shape == (4, 4)


def test_report_to_file(files, tmp_path, capsys):
    out = tmp_path / "report.txt"
    assert Main.main(["entropy", files["rotation"], "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert _parse(out.read_text())["n"] == "2"


def test_verify_passes(capsys):
    assert Main.main(["verify", "gauge", "--n", "2", "--trials", "3"]) == 0
    report = _parse(capsys.readouterr().out)
    assert report["suite"] == "gauge"
    assert report["result"] == "pass"
    assert report["same_algebras.status"] == "pass"


def test_verify_failure_exit_code(monkeypatch, capsys):
    failing = SuiteResult("gauge", 2, 0, 1, (CheckResult("h_closed_invariant", 1.0, 1e-10),))
    monkeypatch.setattr(Main, "run_suite", lambda *args, **kwargs: failing)
    assert Main.main(["verify", "gauge", "--n", "2", "--trials", "1"]) == 1
    assert _parse(capsys.readouterr().out)["result"] == "fail"


@pytest.mark.parametrize("argv", [
    ["verify", "theorem9"],
    ["entropy", "does-not-exist.json"],
    ["gen", "permutation", "--perm", "1,1"],
    ["gen", "permutation", "--perm", "a,b"],
    ["gen", "permutation"],
    ["verify", "gauge", "--tol", "-1"],
    ["verify", "gauge", "--restarts", "-2"],
    ["nonsense"],
])
def test_input_errors_exit_with_2(argv):
    assert Main.main(argv) == 2


def test_invalid_matrices_exit_with_3(files):
    assert Main.main(["entropy", files["skew"]]) == 3
    assert Main.main(["hphi", files["half_state"], files["rotation"]]) == 3
    assert Main.main(["hclosed", files["rotation"], files["fourier"]]) == 3
