import json
import subprocess
import sys
from pathlib import Path

from qmcount.cli import main, validate_report
from qmcount.fixtures import fixture_names

FIX = str(Path(__file__).resolve().parents[1] / "src" / "qmcount" / "fixtures") + "/"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    report = json.loads(out)
    assert validate_report(report)
    return code, report


def test_dim(capsys):
    assert run(capsys, "dim", "--k", "1", "--n", "2", "--d", "1")[1].strip() == "5"
    code, rep = run_json(capsys, "dim", "--k", "2,1", "--n", "2", "--d", "1,1")
    assert rep["results"]["space_dim"] == 17
    code, rep = run_json(capsys, "dim", "--problem", FIX + "lines_p2_three_freckles.json")
    assert rep["results"] == {"space_dim": 5, "virtual_dimension": 0}


def test_qm(capsys):
    code, rep = run_json(capsys, "qm", FIX + "lines_p2_three_freckles.json")
    assert code == 0 and rep["results"] == {"qm": 4}
    assert rep["inputs"]["target_dim"] == 2


def test_qm_unbalanced(tmp_path, capsys):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"source_dim": 1, "target_dim": 2, "degree": 1,
                             "cycles": [{"source_dim": 0, "target_codim": 2}]}))
    code, out, err = run(capsys, "qm", str(f))
    assert code == 2 and "virtual dimension is 3" in err
    code, rep = run_json(capsys, "qm", str(f), "--force")
    assert code == 0 and rep["results"]["qm"] == 0
    assert any(d.startswith("FORCED") for d in rep["diagnostics"])


def test_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"source_dim": 1, "target_dim": 2, "degree": 1, "cycles": [{"source_dim": "x", "target_codim": 1}]}')
    code, out, err = run(capsys, "qm", str(f))
    assert code == 2 and "cycles[0].source_dim" in err
    f.write_text('{"source_dim": 1,\n "target_dim": }')
    code, out, err = run(capsys, "qm", str(f))
    assert code == 2 and "bad.json:2:" in err
    code, out, err = run(capsys, "qm", str(tmp_path / "missing.json"))
    assert code == 2


def test_km_easy(capsys):
    assert run(capsys, "km-easy", "--k", "2", "--n", "2", "--d", "1", "--codims", "2,2,2,2")[1].strip() == "1"
    assert run(capsys, "km-easy", "--k", "1", "--n", "2", "--d", "1", "--codims", "2,2")[1].strip() == "0"


def test_pqm(capsys):
    code, rep = run_json(capsys, "pqm", FIX + "lines_p3_colliding_running_points.json")
    r = rep["results"]
    assert (r["naive_sum"], r["residual"], r["status"]) == (14, 8, "NON-QUASISTABLE")
    assert any("NON-QUASISTABLE" in d for d in rep["diagnostics"])
    code, rep = run_json(capsys, "pqm", FIX + "conics_p2_quasi_stable.json")
    assert rep["results"]["pqm"] == 15 and rep["results"]["residual"] == 0
    code, rep = run_json(capsys, "pqm", FIX + "conics_p2_quasi_stable.json", "--km", "2")
    assert rep["results"]["residual"] == -1
    code, out, _ = run(capsys, "pqm", FIX + "planes_p3_points_on_lines_c.json")
    assert "KM recovered = 1" in out


def test_strata(capsys):
    code, rep = run_json(capsys, "strata", "--k", "2", "--n", "2", "--d", "2")
    assert [r["codim"] for r in rep["results"]["rows"]] == [0, 1, 2, 3, 4, 7, 10]
    code, out, err = run(capsys, "strata", "--k", "4", "--n", "2", "--d", "1")
    assert code == 2


def test_eta_and_cqp(capsys):
    code, rep = run_json(capsys, "eta", "--k", "2", "--n", "2", "8", "9")
    assert rep["results"]["eta"]["8"]["terms"] == {"x^0 q^1": 1}
    assert rep["results"]["eta"]["9"]["terms"] == {}
    code, out, _ = run(capsys, "cqp", "--k", "1", "--n", "2", "2", "2", "1")
    assert out.strip() == "q"
    code, out, err = run(capsys, "cqp", "--k", "1", "--n", "2", "3")
    assert code == 2
    code, rep = run_json(capsys, "eta", "--k", "2", "--n", "2", "--pairing", "2")
    assert rep["results"]["pairing"][1][1]["terms"] == {"x^0 q^0": 1}


def test_smooth(capsys):
    code, out, _ = run(capsys, "smooth", "--integrand", "one-or-two", "--samples", "20000", "--seed", "3",
                       "--threads", "1", "--report", "json")
    rep = json.loads(out)
    assert validate_report(rep)
    assert rep["results"]["samples"] == 20000 and rep["results"]["seed"] == 3
    code, out, _ = run(capsys, "smooth", "--integrand", "one-or-two", "--samples", "20000", "--threads", "1")
    assert " ± " in out


def test_fixtures_command(capsys):
    code, rep = run_json(capsys, "fixtures")
    assert code == 0
    assert rep["results"]["passed"] == rep["results"]["total"] == len(fixture_names()) >= 15
    code, out, _ = run(capsys, "fixtures", "--name", "conics")
    assert out.count("PASS") == 2


def test_quiet(capsys):
    code, out, err = run(capsys, "--quiet", "fixtures")
    assert code == 0 and out == "" and err == ""


def test_console_script_module():
    out = subprocess.run([sys.executable, "-m", "qmcount.cli", "dim", "--k", "2", "--n", "3", "--d", "1"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "11"


def test_report_round_trip(capsys):
    for argv in (["dim", "--k", "1", "--n", "2", "--d", "1"], ["strata", "--k", "1", "--n", "2", "--d", "2"],
                 ["pqm", FIX + "planes_p3_points_on_lines_b.json"]):
        _, rep = run_json(capsys, *argv)
        assert validate_report(json.loads(json.dumps(rep)))
