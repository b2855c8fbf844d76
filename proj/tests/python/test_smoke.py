import json
import os
import subprocess

import _hk


def test_version_and_suites():
    assert _hk.__version__
    suites = _hk.list_suites()
    assert "so5" in suites
    assert "structure-algebra" in suites


def test_build_and_validate():
    model = _hk.build_model(5, 2, [1, 1, 1, -1, -1])
    assert model.dims == [1, 0, 5, 0, 15, 0, 5, 0, 1]
    assert model.validate()
    text = model.save()
    back = _hk.load_model(text)
    assert back.dims == model.dims


def test_structure_and_so5_dimensions():
    model = _hk.build_model(4, 1, [1, 1, 1, -1])
    assert _hk.structure_dim(model, 7) == 15
    assert _hk.so5_dim(model, 7) == 10


def test_bb_matrix_recovers_reference_form():
    model = _hk.build_model(4, 1, [1, 1, 1, -1])
    bb = _hk.bb_matrix(model, 1)
    assert bb[0][0] == "1"
    assert bb[3][3] == "-1"
    assert bb[0][1] == "0"


def test_run_suite():
    model = _hk.build_model(4, 1, [1, 1, 1, -1])
    result = _hk.run_suite(model, "so5", seed=7)
    assert result["pass"]
    data = json.loads(result["data"])
    assert all(entry["dim"] == 10 for entry in data["triples"])


def test_twistor_checks():
    connect = _hk.twistor_connect([1, 1, 1, -1, -1], 3, 5)
    assert connect["pass"]
    adm = _hk.twistor_admissible([1, 1, 1, -1, -1], [[0, 0, 0, 0, 1]], 5, 2)
    assert adm["pass"]


def test_cli_build_and_verify(tmp_path):
    hkctl = os.environ.get("HKCTL_BIN")
    if not hkctl:
        import pytest

        pytest.skip("HKCTL_BIN not set")
    model = tmp_path / "m41.json"
    subprocess.run(
        [hkctl, "build", "--b", "4", "--m", "1", "--q", "diag:1,1,1,-1", "-o", str(model)],
        check=True,
    )
    report = tmp_path / "report.json"
    subprocess.run(
        [hkctl, "verify", str(model), "--suite", "graded-dims", "--report", str(report)],
        check=True,
    )
    payload = json.loads(report.read_text())
    assert payload["summary"]["fail"] == 0
