import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from schubert_lab.cli import main, run

SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


def validate(doc, name):
    schema = json.loads((SCHEMAS / f"{name}.v1.schema.json").read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    jsonschema.validate(doc, schema)
    assert doc["schema"] == f"schubert-lab/{name}/v1"


def run_json(argv, code=0, name=None):
    got, out = run(argv)
    assert got == code, out
    doc = json.loads(out)
    if name:
        validate(doc, name)
    return doc


def test_enumerate():
    doc = run_json(["enumerate", "-n", "2", "--lambda", "1,0"], name="enumerate")
    assert doc["count"] == 3
    assert doc["alcoves"] == [[[0, 1], [1, 1]], [[1, 0], [1, 1]], [[1, 0], [2, 0]]]
    doc = run_json(["enumerate", "-n", "2", "--lambda", "0,0"], name="enumerate")
    assert doc["alcoves"] == [[[0, 0], [1, 0]]]


def test_enumerate_csv_and_shards():
    code, out = run(["enumerate", "--lambda", "1,0", "--format", "csv"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "x1_1,x1_2,x2_1,x2_2"
    assert lines[-1] == "count,3"
    counts = [run_json(["enumerate", "--lambda", "2,1,0", "--shard", f"{i}/3"])["count"] for i in range(3)]
    assert sum(counts) == run_json(["enumerate", "--lambda", "2,1,0"])["count"]


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "-n", "2", "--lambda", "1,0"],
        ["verify", "minuscule", "-n", "3"],
        ["degenerate", "--alcove", "[[0,1,0],[1,1,0],[1,1,1]]", "--t", "1"],
        ["chain", "--lambda", "2,0"],
    ],
)
def test_reruns_are_byte_identical(argv):
    assert run(argv) == run(argv)


def test_verify_reports():
    doc = run_json(["verify", "main", "-n", "2", "--max-entry", "2"], name="verification-report")
    assert doc["passed"] and doc["failures"] == []
    doc = run_json(["verify", "minuscule", "-n", "3"], name="verification-report")
    assert doc["instances"] == 14
    assert all(entry["N"] >= 1 for entry in doc["extras"]["N"])
    doc = run_json(["verify", "dominance", "-n", "3", "--timing"], name="verification-report")
    assert "wall_time" in doc


def test_verify_csv():
    code, out = run(["verify", "lattice", "-n", "2", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "suite,n,instances,failures,passed"
    assert out.splitlines()[1].endswith(",0,True")


def test_descend():
    doc = run_json(
        ["descend", "--alcove", "[[1,0],[2,0]]", "--lambda", "1,0", "--t", "1"], name="descend"
    )
    assert doc["y"] == [[0, 0], [1, 0]]
    assert doc["passed"]


def test_witness(tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"alcove": [[1, 0], [1, 1]], "lambda": [1, 0], "k": 1}))
    doc = run_json(["witness", "--input", str(path)], name="witness")
    assert doc["y"] == [[0, 0], [1, 0]]
    assert doc["z"] == [[1, 0], [1, 1]]
    assert all(doc["checks"].values())


def test_degenerate():
    doc = run_json(["degenerate", "--alcove", "[[0,1,0],[1,1,0],[1,1,1]]", "--t", "1"], name="degenerate")
    assert doc["N"] == 19
    assert doc["passed"]
    assert doc["evaluation_at_zero"][2] == [["1", "0"], ["0", "1"], ["0", "0"]]
    assert len(doc["samples"]) == 3


def test_degenerate_latex():
    code, out = run(["degenerate", "--alcove", "[[0,1],[1,1]]", "--t", "1", "--emit-latex"])
    assert code == 0
    assert out.startswith("N = 1\n")
    assert r"\begin{bmatrix}" in out


def test_chain():
    doc = run_json(["chain", "--lambda", "2,0"], name="chain")
    assert doc["decomposition"] == [1, 1]
    assert doc["count"] == 5
    assert doc["passed"]
    doc = run_json(["chain", "-n", "3", "--lambda", "1,1,1"], name="chain")
    assert doc["count"] == 1 and doc["decomposition"] == []


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--lambda", "0,1"],
        ["enumerate", "-n", "3", "--lambda", "1,0"],
        ["enumerate"],
        ["enumerate", "--lambda", "1,x"],
        ["enumerate", "--lambda", "1,0", "--shard", "3/2"],
        ["verify", "bogus", "-n", "2"],
        ["verify", "main"],
        ["descend", "--alcove", "[[0,1],[0,2]]", "--lambda", "1,0", "--t", "1"],
        ["descend", "--alcove", "[[1,0],[2,0]]", "--lambda", "1,0"],
        ["descend", "--alcove", "[[0,0],[2,0]]", "--lambda", "1,0", "--t", "1"],
        ["witness", "--alcove", "[[1,0],[1,1]]", "--lambda", "1,1", "--k", "1"],
        ["degenerate", "--alcove", "[[2,0],[2,1]]", "--t", "1"],
        ["degenerate", "--alcove", "not json", "--t", "1"],
        ["degenerate", "--input", "/nonexistent.json"],
        [],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_stdin_and_entry_point():
    payload = json.dumps({"alcove": [[1, 0], [2, 0]], "lambda": [1, 0], "t": 1})
    proc = subprocess.run(
        [sys.executable, "-m", "schubert_lab", "descend", "--input", "-"],
        input=payload, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    validate(json.loads(proc.stdout), "descend")


def test_failed_verification_exits_1(monkeypatch):
    from schubert_lab import cli
    from schubert_lab.suites import VerificationReport

    def failing(suite, n, *args, **kwargs):
        params = {"max_entry": 2, "seed": 0, "shard": "0/1"}
        return VerificationReport(suite, n, params, 1, [{"input": {}, "check": "forced", "detail": ""}])

    monkeypatch.setattr(cli, "run_suite", failing)
    doc = run_json(["verify", "dominance", "-n", "2"], code=1, name="verification-report")
    assert doc["passed"] is False
