import json
import subprocess
import sys

import pytest

from regsurf.cli import main
from regsurf.sections import data_text


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_certify_json(capsys):
    code, out, _ = run(["certify", "--m", "6", "--format", "json"], capsys)
    r = json.loads(out)
    assert code == 0 and r["degree"] == 33 and r["maxdeg_lower_bound"] == 34 and r["eg_violated"] is True
    assert r["timings"] == {}


def test_certify_usage_errors(capsys):
    code, out, err = run(["certify", "--m", "5"], capsys)
    assert code == 2 and out == "" and json.loads(err)["error"] == "usage"
    code, _, err = run(["certify", "--m", "6", "--bogus"], capsys)
    assert code == 2 and "bogus" in json.loads(err)["message"]
    code, _, _ = run(["nosuchcommand"], capsys)
    assert code == 2


def test_certify_budget_exit(capsys):
    code, out, err = run(["certify", "--m", "12", "--max-dim", "50"], capsys)
    assert code == 3 and json.loads(err)["error"] == "budget_exceeded"


def test_matrices_csv_equals_fixture(capsys):
    for which in ("L", "W"):
        code, out, _ = run(["matrices", "--k", "1", "--which", which, "--mod", "3", "--format", "csv"], capsys)
        assert code == 0 and out == data_text(f"{which}1_mod3.csv")


def test_fixtures_command(capsys):
    code, out, _ = run(["fixtures"], capsys)
    r = json.loads(out)["result"]
    assert code == 0 and r["L"]["fixture_diff"] == [] and r["W"]["certificates_ok"]


def test_kernel_command(capsys):
    code, out, _ = run(["kernel", "--builtin", "twisted_cubic"], capsys)
    r = json.loads(out)["result"]
    assert code == 0 and r["minimal_generator_degrees"] == {"2": 3} and r["maxdeg"] == 2


def test_kernel_needs_one_source(capsys):
    code, _, err = run(["kernel"], capsys)
    assert code == 2
    code, _, err = run(["kernel", "--family", "X"], capsys)
    assert code == 2


def test_kernel_budget(capsys, monkeypatch):
    monkeypatch.setenv("REGSURF_BUDGET", "5")
    code, out, err = run(["kernel", "--builtin", "reg11_surface"], capsys)
    assert code == 3 and out == ""
    e = json.loads(err)
    assert e["exit_code"] == 3 and e["stats"]["pairs"] > 5
    code, _, _ = run(["kernel", "--builtin", "reg11_surface", "--budget", "x:y"], capsys)
    assert code == 2


def test_kernel_from_file(tmp_path, capsys):
    f = tmp_path / "conic.map"
    f.write_text("ring u v;\nmap a = u^2; b = u*v; c = v^2;\n")
    code, out, _ = run(["kernel", "--map", str(f)], capsys)
    assert code == 0 and json.loads(out)["result"]["groebner_basis"] == ["b^2 - a*c"]
    code, _, err = run(["kernel", "--map", str(tmp_path / "missing.map")], capsys)
    assert code == 2


def test_pei_command(capsys):
    code, out, _ = run(["pei", "--family", "Y", "--m", "6", "--var", "x2"], capsys)
    r = json.loads(out)["result"]
    assert code == 0 and r["stabilization_number"] >= 0
    code, _, _ = run(["pei", "--family", "Y", "--m", "6", "--var", "z"], capsys)
    assert code == 2


def test_degree_and_bound(capsys):
    code, out, _ = run(["degree", "--m", "6", "25", "--format", "csv"], capsys)
    assert out.splitlines() == ["m,normalized_volume,lattice_index,degree,formula", "6,33,1,33,33", "25,603,1,603,603"]
    code, out, _ = run(["bound", "--n", "2", "--r", "4", "--m", "6"], capsys)
    assert json.loads(out)["result"]["bound"] == 6**19


def test_hilbert_command(capsys):
    code, out, _ = run(["hilbert", "--builtin", "twisted_cubic", "--degree", "1", "2", "--fit-start", "1", "--h1", "0"], capsys)
    r = json.loads(out)["result"]
    assert [v["value"] for v in r["values"]] == [4, 7]
    assert r["fit"]["degree"] == 3 and r["fit"]["h1"] == {"0": 0}
    code, _, _ = run(["hilbert", "--builtin", "twisted_cubic", "--h1", "3"], capsys)
    assert code == 2


def test_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["certify", "--m", "6", "--out", str(target)], capsys)
    assert code == 0 and out == "" and json.loads(target.read_text())["m"] == 6


def test_byte_identical_across_workers(capsys):
    _, a, _ = run(["certify", "--m", "6", "12", "7"], capsys)
    _, b, _ = run(["certify", "--m", "6", "12", "7", "--workers", "3"], capsys)
    assert a == b
    _, c, _ = run(["hilbert", "--family", "X", "--m", "6", "--degree", "3", "4", "5", "--workers", "2"], capsys)
    _, d, _ = run(["hilbert", "--family", "X", "--m", "6", "--degree", "3", "4", "5"], capsys)
    assert c == d


def test_console_entry_point():
    p = subprocess.run([sys.executable, "-m", "regsurf.cli", "bound", "--n", "1", "--r", "1", "--m", "2"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and json.loads(p.stdout)["result"]["bound"] == 8
