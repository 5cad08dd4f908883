import csv
import json
import subprocess
import sys

import pytest

from k3salem.cli import main
from k3salem.pipeline import PipelineReport, StageFailure, batch, run_pipeline


def test_pipeline_is_deterministic():
    a = json.dumps(run_pipeline(3).to_json(), sort_keys=True)
    b = json.dumps(run_pipeline(3).to_json(), sort_keys=True)
    assert a == b
    rep = json.loads(a)
    assert rep["detValue"] == "-9"
    assert rep["verdict"]["isSalem22"] is True
    assert rep["sectionChecks"]["heightPP"] == "3/2"


def test_batch_order_and_failures():
    out = batch([7, 13, 3, 15], jobs=2)
    assert [r.p for r in out] == [7, 13, 3, 15]
    assert isinstance(out[0], PipelineReport) and isinstance(out[2], PipelineReport)
    assert isinstance(out[1], StageFailure) and out[1].kind == "PreconditionError"
    assert out[1].stage == "build"
    assert isinstance(out[3], StageFailure) and out[3].kind == "InputError"
    assert out[0].section_checks["weierstrass"]["pullbackConsistent"] is True


@pytest.mark.parametrize("argv,code", [
    (["ns", "build", "--p", "7"], 0),
    (["ns", "build", "--p", "13"], 1),
    (["ns", "build", "--p", "9"], 1),
    (["verify", "sections", "--p", "11"], 0),
    (["verify", "sections", "--p", "3"], 1),
    (["salem", "run", "--p", "3", "--word", "P"], 3),
    (["salem", "run", "--p", "3", "--word", "X"], 1),
    (["fibration", "height", "--p", "7", "--sections", "P,P"], 0),
    (["fibration", "height", "--p", "7", "--sections", "P,P'"], 1),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_height_output(capsys):
    main(["fibration", "height", "--p", "7", "--sections", "P,P"])
    assert capsys.readouterr().out.strip() == "7/2"


def test_salem_run_json(capsys):
    assert main(["salem", "run", "--p", "3", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["isSalem22"] is True and out["cyclotomicFactors"] == []
    lo, hi = (float(x) for x in out["salemNumber"])
    assert 1 < lo <= hi


def test_pipeline_writes_report(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("K3SALEM_OUTPUT_DIR", str(tmp_path))
    assert main(["pipeline", "--primes", "3,7"]) == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert {"report.json", "summary.tsv", "spectrum_p3.png", "spectrum_p7.png", "entropy.png"} <= names
    rows = list(csv.DictReader((tmp_path / "summary.tsv").open(), delimiter="\t"))
    assert [r["p"] for r in rows] == ["3", "7"]
    assert all(r["is_salem22"] == "True" for r in rows)
    assert json.loads((tmp_path / "report.json").read_text())[1]["n"] == 1


def test_pipeline_failure_exit_code(tmp_path, capsys):
    assert main(["pipeline", "--primes", "3,13", "--out", str(tmp_path)]) == 1
    assert (tmp_path / "summary.tsv").read_text().count("PreconditionError") == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "k3salem", "ns", "build", "--p", "3", "--json"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["det"] == "-9"
