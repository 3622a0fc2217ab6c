import json
import subprocess
import sys

import pytest

from conftest import DATA
from succmin import cli


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_ineq4_on_cube(capsys):
    code, out, _ = run(capsys, "verify", "ineq4", DATA / "cube3.json")
    assert code == cli.EXIT_OK
    rep = json.loads(out)
    assert rep["lhs"] == "27" and rep["rhs"] == "27" and rep["verdict"] == "holds"


def test_output_is_canonical(capsys):
    _, out, _ = run(capsys, "minima", DATA / "unitcube.json")
    data = json.loads(out)
    assert out == json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"
    assert data["lambda"] == ["2", "2", "2"] and data["q"] == [2, 2, 2]


def test_chain(capsys):
    code, out, _ = run(capsys, "chain", "3,2")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == [4, 2] and data["product"] == 8


def test_chain_rejects_garbage(capsys):
    code, _, err = run(capsys, "chain", "3,x")
    assert code == cli.EXIT_INPUT and "q" in err


def test_count_with_points(capsys):
    _, out, _ = run(capsys, "count", DATA / "unitcube.json", "--points")
    data = json.loads(out)
    assert data["G"] == 8 and len(data["points"]) == 8


def test_slice(capsys):
    _, out, _ = run(capsys, "slice", DATA / "unitcube.json", "--level", "1/2", "--axis", "3")
    data = json.loads(out)
    assert data["slice"]["dim"] == 2 and len(data["slice"]["vertices"]) == 4
    _, out, _ = run(capsys, "slice", DATA / "unitcube.json", "--level", "2", "--axis", "1")
    assert json.loads(out)["slice"] is None
    code, _, _ = run(capsys, "slice", DATA / "unitcube.json", "--level", "0", "--axis", "4")
    assert code == cli.EXIT_INPUT


@pytest.mark.parametrize("construction,fixture,key", [
    ("lemma24", "lemma24.json", "S_prime"),
    ("lemma321", "lemma321.json", "x"),
    ("translation-problem", "translation1d.json", "certificate"),
])
def test_construct(capsys, construction, fixture, key):
    code, out, _ = run(capsys, "construct", construction, DATA / fixture)
    assert code == 0
    assert key in json.loads(out)["details"]


def test_translation_certificate(capsys):
    _, out, _ = run(capsys, "construct", "translation-problem", DATA / "translation1d.json")
    assert json.loads(out)["details"]["certificate"] == {"vectors": [[0], [2]], "verified": True}


def test_budget_exit_code(capsys):
    code, out, _ = run(capsys, "construct", "translation-problem", DATA / "translation1d.json",
                       "--budget", "0")
    assert code == cli.EXIT_BUDGET
    assert json.loads(out)["verdict"] == "budget_exhausted"


def test_conjecture_and_monotonicity(capsys):
    code, out, _ = run(capsys, "verify", "conjecture321", DATA / "conjecture2d.json")
    assert code == 0 and json.loads(out)["details"]["counts"] == [0, 0]
    code, out, _ = run(capsys, "verify", "monotonicity", DATA / "triangle.json")
    assert code == 0
    assert json.loads(out)["details"]["sequence"][:2] == ["2", "3/2"]


def test_precondition_exit_code(capsys):
    code, _, err = run(capsys, "verify", "lemma22", DATA / "triangle.json")
    assert code == cli.EXIT_INPUT and "precondition" in err


def test_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "bodies": [}')
    code, _, err = run(capsys, "minima", bad)
    assert code == cli.EXIT_INPUT and "line 2" in err


def test_bad_field(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "bodies": [{"vertices": [[0, "1/0"]]}]}')
    code, _, err = run(capsys, "count", bad)
    assert code == cli.EXIT_INPUT and "bodies[0].vertices[0][1]" in err


def test_missing_file_and_bad_command(capsys):
    assert run(capsys, "minima", "/nonexistent.json")[0] == cli.EXIT_INPUT
    assert run(capsys, "frobnicate")[0] == cli.EXIT_INPUT


def test_campaign_writes_jsonl(tmp_path, capsys):
    out = tmp_path / "c.jsonl"
    code, stdout, _ = run(capsys, "campaign", "ineq4", "--config", DATA / "campaign_ineq4.json",
                          "--trials", "3", "--out", out)
    assert code == 0
    summary = json.loads(stdout)
    assert summary["trials"] == 3 and summary["counts"]["violated"] == 0
    assert len(out.read_text().splitlines()) == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "succmin", "chain", "2,2"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["product"] == 4
