import csv
import io
import json

import pytest

from eulerorient.cli import main
from eulerorient.exactalg import OMEGA, V, from_json


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_coeffs_onecat_json(capsys):
    code, out = run(capsys, "coeffs", "-N", "3")
    assert code == 0
    Q = from_json(json.dumps(json.loads(out)["Q"]))
    assert Q[1] == V * (OMEGA * V + OMEGA + 2)


def test_coeffs_oracle_agrees(capsys):
    _, a = run(capsys, "coeffs", "-N", "2", "--method", "oracle", "--format", "csv")
    _, b = run(capsys, "coeffs", "-N", "2", "--method", "onecat", "--format", "csv")
    assert a == b
    assert a.splitlines()[0] == "n,Q"


def test_coeffs_sixvertex_table(capsys):
    code, out = run(capsys, "coeffs", "-N", "4", "--method", "sixvertex", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "Q", "Rtilde"] and len(rows) == 6


def test_coeffs_specialised(capsys):
    _, out = run(capsys, "coeffs", "-N", "2", "--omega", "1", "--v", "1/2", "--format", "csv")
    assert out.splitlines()[1:] == ["0,0", "1,7/4", "2,13"]


def test_incompatible_method(capsys):
    assert main(["coeffs", "--method", "closedform0", "--omega", "1"]) == 2
    assert main(["coeffs", "--method", "sixvertex", "--v", "2"]) == 2
    assert main(["coeffs", "--method", "oracle", "-N", "7"]) == 2
    assert main(["coeffs", "--omega", "abc"]) == 2


@pytest.mark.parametrize("suite", ["involution", "odes", "omega_minus1"])
def test_verify_suites_pass(capsys, suite):
    code, out = run(capsys, "verify", suite, "-N", "8")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize("suite", ["involution", "symmetry", "odes", "omega_minus1"])
def test_verify_negative_control(capsys, suite):
    code, out = run(capsys, "verify", suite, "-N", "6", "--perturb")
    assert code == 1 and not json.loads(out)["ok"]


def test_critical_t1(capsys):
    code, out = run(capsys, "critical", "--t1", "--omega", "0")
    assert code == 0 and out.startswith("0.0795774")


def test_critical_yc_csv(capsys):
    _, out = run(capsys, "critical", "--omega", "0", "--v", "2,1/2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 2 and all(r["label"] == "PREDICTION" for r in rows)


def test_sample_outputs(capsys, tmp_path):
    maps = tmp_path / "maps.json"
    code, out = run(capsys, "sample", "--ell", "1", "--count", "50", "--seed", "42", "--maps", str(maps),
                    "--n-max", "40")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert sum(int(r["count"]) for r in rows) == 50
    assert len(json.loads(maps.read_text())["maps"]) == 50
    _, again = run(capsys, "sample", "--ell", "1", "--count", "50", "--seed", "42", "--n-max", "40")
    assert again == out


def test_ratio_from_coeffs_file(capsys, tmp_path):
    f = tmp_path / "q0.json"
    assert main(["coeffs", "--method", "closedform0", "-N", "12", "--v", "1", "--out", str(f)]) == 0
    code, out = run(capsys, "ratio", "--input", str(f))
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and rows[0].keys() >= {"n", "radius", "radius_linear", "exponent"}


def test_ratio_from_list(capsys, tmp_path):
    f = tmp_path / "g.json"
    f.write_text(json.dumps([1, 2, 4, 8, 16, 32, 64]))
    _, out = run(capsys, "ratio", "--input", str(f), "--format", "json")
    assert json.loads(out)["radius"] == [0.5] * 6
