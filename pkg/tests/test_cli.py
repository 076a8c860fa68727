import json

import pytest

from resurgence.cli import run
from resurgence.points import dumps_config, fermat_config
from resurgence.fields import GF


def _run(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_fermat(capsys):
    code, out, _ = _run(["verify", "--theorem", "fermat", "--n", "3", "--field", "fp:13", "--no-timings"], capsys)
    assert code == 0
    led = json.loads(out)
    assert led["passed"] and led["version"]
    assert all(c["verdict"] == "pass" for c in led["checks"])


def test_containment_chmn_fails_with_line_product(capsys):
    code, out, _ = _run(["containment", "--config", "chmn", "--t", "5637", "--field", "fp:31991", "--m", "3", "--r", "2"], capsys)
    assert code == 1
    rep = json.loads(out)["report"]
    assert rep["verdict"] == "Fails"
    assert rep["witness_name"] == "line product" and rep["witness_degree"] == 12


def test_degenerate_parameter_exit_2(capsys):
    code, _, err = _run(["construct", "--config", "chmn", "--t", "-1", "--field", "qq"], capsys)
    assert code == 2
    assert "DegenerateParameter" in err


def test_rational_parameter_over_qq(capsys):
    code, out, _ = _run(["construct", "--config", "chmn", "--t", "3/2", "--field", "qq"], capsys)
    assert code == 0
    assert json.loads(out)["num_points"] == 19


@pytest.mark.parametrize(
    "argv",
    [
        ["frobnicate"],
        ["construct", "--bogus"],
        ["containment", "--config", "fermat", "--n", "3", "--field", "fp:13", "--m", "0", "--r", "2"],
        ["construct", "--config", "fermat", "--field", "fp:13"],
        ["construct", "--config", "fermat", "--n", "3", "--field", "fp:12"],
        ["construct", "--config", "file:/nonexistent/cfg.txt"],
    ],
)
def test_bad_invocations_exit_2(argv, capsys):
    code, _, _ = _run(argv, capsys)
    assert code == 2


def test_reports_are_deterministic(capsys):
    argv = ["resurgence", "--config", "all-but-one", "--s", "3", "--N", "2", "--r-max", "3", "--no-timings"]
    _, a, _ = _run(argv, capsys)
    _, b, _ = _run(argv + ["--jobs", "2"], capsys)
    da, db = json.loads(a), json.loads(b)
    da["params"].pop("jobs", None)
    db["params"].pop("jobs", None)
    assert da == db
    _, c, _ = _run(argv, capsys)
    assert a == c
    assert '"timing"' not in a


def test_output_file(tmp_path, capsys):
    path = tmp_path / "inv.json"
    code, out, _ = _run(["invariants", "--config", "fermat", "--n", "3", "--field", "fp:13", "--output", str(path)], capsys)
    assert code == 0 and out == ""
    inv = json.loads(path.read_text())
    assert (inv["alpha"], inv["omega"], inv["reg"]) == (4, 4, 5)


def test_config_file_input(tmp_path, capsys):
    path = tmp_path / "fermat.cfg"
    path.write_text(dumps_config(fermat_config(3, GF(13))))
    code, out, _ = _run(["invariants", "--config-file", str(path)], capsys)
    assert code == 0 and json.loads(out)["alpha"] == 4
    code, out, _ = _run(["invariants", "--config", f"file:{path}"], capsys)
    assert code == 0 and json.loads(out)["reg"] == 5


def test_resource_cap_exit_3(capsys):
    code, out, _ = _run(
        ["containment", "--config", "fermat", "--n", "3", "--field", "fp:13", "--m", "5", "--r", "3", "--max-degree", "4"], capsys
    )
    assert code == 3
    assert json.loads(out)["partial"] is True


def test_audit_and_waldschmidt(capsys):
    code, out, _ = _run(["audit", "--config", "chmn", "--t", "5637", "--field", "fp:31991"], capsys)
    assert code == 0 and json.loads(out)["audit"]["passed"]
    code, out, _ = _run(["waldschmidt", "--config", "chmn", "--t", "5637", "--field", "fp:31991"], capsys)
    w = json.loads(out)
    assert code == 0 and (w["waldschmidt"]["lower"], w["waldschmidt"]["upper"]) == ("4", "4")
    assert w["asymptotic_bracket"] == ["5/4", "5/4"]
