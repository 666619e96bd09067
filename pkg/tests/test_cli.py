import csv
import json
import shutil
import subprocess
from importlib.resources import files

import jsonschema
import pytest

from liouville import errata
from liouville.cli import run

COMMANDS = {
    "construct": ["construct", "--nu", "1/2", "--depth", "3"],
    "cf": ["cf", "--nu", "1/2", "--depth", "2", "--locate", "1/10000"],
    "measure": ["measure", "--nu", "1/2", "--depth", "3", "--audit", "1/10000:100"],
    "admissible": ["admissible", "-P", "2", "-Q", "3", "-R", "0"],
    "heights": ["heights", "--poly", "X^2+1", "--at", "1/2"],
    "bounds": ["bounds", "--kind", "baker", "--n", "2", "--alpha", "4,4", "--beta", "4", "--D", "1"],
    "tower": ["tower", "--x", "sqrt(2)", "--infinite", "--tol", "1e-30"],
    "replay": ["replay", "--nu", "7", "-P", "X", "-Q", "X", "-R", "X", "--gamma", "2", "--kmax", "3"],
    "classify": ["classify", "--expr", "xi^(xi^xi)", "--fact", "xi:ultra"],
}


def schema(name):
    return json.loads((files("liouville") / "schemas" / f"{name}.schema.json").read_text())


def invoke(argv, capsys):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_output_validates_against_schema(name, capsys):
    code, out, _ = invoke(COMMANDS[name], capsys)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


@pytest.mark.parametrize("argv", [
    ["heights", "--qval", "3/2", "--rval", "1/2", "--q", "2", "--r", "1", "--n", "1", "--c1", "3"],
    ["heights", "-P", "X", "-Q", "X", "-R", "X", "--xi", "0.10:0.11", "--gamma", "2", "--q", "10000"],
    ["bounds", "--kind", "mw", "--D", "1", "--A1", "e^e", "--A2", "e^e", "--B", "e^e"],
    ["bounds", "--kind", "upper", "--c6", "10", "--q", "10000", "--omega", "100"],
    ["tower", "--x", "3/2", "--k", "2", "--functional", "2"],
    ["construct", "--kind", "ultra", "--depth", "3"],
    ["cf", "--x", "936/343"],
])
def test_other_modes_validate(argv, capsys):
    code, out, _ = invoke(argv, capsys)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(argv[0]))


@pytest.mark.parametrize("name", sorted(COMMANDS))
def test_byte_identical_reruns(name, capsys):
    _, a, _ = invoke(COMMANDS[name], capsys)
    _, b, _ = invoke(COMMANDS[name], capsys)
    assert a == b


def test_construct_example(tmp_path, capsys):
    out = tmp_path / "xi.json"
    assert invoke(["construct", "--nu", "1/2", "--depth", "3", "--json", str(out)], capsys)[0] == 0
    doc = json.loads(out.read_text())
    assert doc["result"]["s"][:2] == [4, 401]
    assert errata.FLOOR_PLACEMENT in doc["notes"]
    assert doc["provenance"] == {"tool": "liouville", "version": "0.1.0", "precision": 256}


def test_cf_reads_construct_output(tmp_path, capsys):
    xi = tmp_path / "xi.json"
    invoke(["construct", "--nu", "1/2", "--depth", "3", "--json", str(xi)], capsys)
    table = tmp_path / "cf.csv"
    code, out, _ = invoke(["cf", "--input", str(xi), "--depth", "2", "--csv", str(table),
                           "--locate", "1/10000"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["located"][0]["status"] == "LOCATED"
    rows = list(csv.DictReader(table.open()))
    assert list(rows[0]) == ["m", "b_m", "p_m", "q_m", "err_lower", "err_upper"]
    # [0; 9999, 1, ...] puts 1/10000 at index 2
    assert rows[2]["q_m"] == "10000"


def test_admissible_example(capsys):
    code, out, _ = invoke(COMMANDS["admissible"], capsys)
    res = json.loads(out)
    assert code == 0
    assert "(iii)" in res["result"]["violated"]
    assert errata.CLAUSE_III in res["notes"]


def test_replay_needs_flag_below_threshold(capsys):
    code, _, err = invoke(["replay", "--nu", "1", "-P", "X", "-Q", "X", "-R", "X", "--gamma", "2"], capsys)
    assert code == 2
    assert json.loads(err)["error"]["type"] == "PreconditionError"
    code, out, _ = invoke(["replay", "--nu", "1", "-P", "X", "-Q", "X", "-R", "X", "--gamma", "2",
                           "--non-theorem"], capsys)
    assert code == 0 and json.loads(out)["result"]["crossing_index"] is None


@pytest.mark.parametrize("argv, code", [
    (["bogus"], 2),
    (["construct", "--depth", "2"], 2),
    (["construct", "--nu", "1", "--depth", "2", "--precision", "32"], 2),
    (["classify", "--expr", "xi^^3"], 2),
    (["classify", "--expr", "xi", "--fact", "xi:wat"], 2),
    (["construct", "--nu", "-1", "--depth", "2"], 1),
    (["construct", "--kind", "ultra", "--depth", "4"], 1),
    (["heights", "--qval", "2", "--rval", "1/3", "--q", "2", "--r", "1"], 1),
    (["bounds", "--kind", "baker", "--n", "1", "--alpha", "4", "--D", "1"], 1),
])
def test_exit_codes(argv, code, capsys):
    got, _, err = invoke(argv, capsys)
    assert got == code
    jsonschema.validate(json.loads(err), schema("error"))


def test_output_path_checked_before_work(tmp_path, capsys):
    code, out, err = invoke(["construct", "--nu", "1", "--depth", "2", "--json",
                             str(tmp_path / "missing" / "x.json")], capsys)
    assert code == 2 and out == ""


def test_precision_env(monkeypatch, capsys):
    monkeypatch.setenv("LIOUVILLE_PRECISION", "128")
    _, out, _ = invoke(COMMANDS["tower"], capsys)
    assert json.loads(out)["provenance"]["precision"] == 128
    _, out, _ = invoke(COMMANDS["tower"] + ["--precision", "512"], capsys)
    assert json.loads(out)["provenance"]["precision"] == 512
    monkeypatch.setenv("LIOUVILLE_PRECISION", "99999")
    assert invoke(COMMANDS["tower"], capsys)[0] == 2


def test_tower_sweep_csv(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    assert invoke(["tower", "--sweep", "0.1:1.5:4", "--csv", str(path)], capsys)[0] == 0
    rows = list(csv.DictReader(path.open()))
    assert list(rows[0]) == ["x", "h_inf", "residual", "iterations", "status"]
    assert rows[-1]["status"] == "DIVERGED"


def test_text_format(capsys):
    code, out, _ = invoke(COMMANDS["classify"] + ["--format", "text"], capsys)
    assert code == 0 and "status: TRANSCENDENTAL" in out


@pytest.mark.skipif(shutil.which("liouville") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["liouville", "admissible", "-P", "X", "-Q", "X", "-R", "X"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["result"]["label"] == "ADMISSIBLE"
