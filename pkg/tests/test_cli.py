import csv
import io
import json
import subprocess
import sys

import pytest

from halfmod.cli import main
from halfmod.moduli import h_series


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_series_eta(capsys):
    code, out, _ = run(capsys, "series", "--form", "eta", "--eta", "2:1,1:-2", "--N", "6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["coeff"]) for r in rows] == [1, 2, 4, 8, 14, 24]


def test_series_mod_p_json(capsys):
    code, out, _ = run(capsys, "series", "--form", "eisenstein", "--k", "4", "--N", "5", "--p", "5", "--output", "json")
    d = json.loads(out)
    assert d["ring"] == "GF(5)" and [r["coeff"] for r in d["rows"]] == ["1", "0", "0", "0", "0"]


def test_traces_csv_matches_series(capsys):
    code, out, _ = run(capsys, "traces", "--m", "1", "--max-d", "100", "--output", "csv")
    assert code == 0
    h = h_series(101)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["d"] == "3" and rows[0]["t_1"] == "-248"
    assert all(int(r["t_1"]) == -h[int(r["d"])] for r in rows)


def test_csv_and_json_same_payload(capsys):
    _, a, _ = run(capsys, "hurwitz", "--X", "60", "--output", "csv")
    _, b, _ = run(capsys, "hurwitz", "--X", "60", "--output", "json")
    rows_csv = list(csv.DictReader(io.StringIO(a)))
    rows_json = json.loads(b)["rows"]
    assert [(r["n"], r["six_H"], r["H"]) for r in rows_csv] == [(str(r["n"]), str(r["six_H"]), r["H"]) for r in rows_json]


def test_hurwitz_r3_marks_unreachable(capsys):
    _, out, _ = run(capsys, "hurwitz", "--X", "30", "--method", "r3")
    rows = {r["n"]: r for r in csv.DictReader(io.StringIO(out))}
    assert rows["23"]["H"] == "unreachable"
    assert rows["3"]["H"] == "1/3"


def test_tally_json(capsys):
    code, out, err = run(capsys, "tally", "--seq", "overpartitions", "--p", "7", "--X", "1000")
    assert code == 0
    d = json.loads(out)
    assert d["p"] == 7 and sum(d["counts"].values()) == 1000
    assert "warning" in err


def test_tally_enforced_hypothesis(capsys):
    code, _, err = run(capsys, "tally", "--seq", "traces", "--p", "7", "--X", "100", "--enforce-hypothesis")
    assert code == 3 and "dist" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["tally", "--seq", "traces", "--p", "8"])
    assert e.value.code == 2
    code, _, err = run(capsys, "series", "--form", "h1p", "--N", "5")
    assert code == 3 and "--p" in err


def test_scan_primes(capsys):
    code, out, _ = run(capsys, "scan-primes", "--p", "5", "--Q-bound", "100")
    d = json.loads(out)
    assert {(r["mode"], r["Q"]) for r in d["rows"]} == {("annihilate", 19), ("annihilate", 59), ("annihilate", 79),
                                                       ("double", 41), ("double", 61)}


def test_deterministic_output(capsys):
    argv = ["tally", "--seq", "hurwitz", "--p", "5", "--X", "500", "--output", "csv"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_verify_quick_exit_zero():
    proc = subprocess.run([sys.executable, "-m", "halfmod", "verify", "--p", "5", "--quick"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    assert "10/10 checks passed" in proc.stdout


def test_verify_strict_fails_on_unreachable(capsys):
    code, out, _ = run(capsys, "verify", "--p", "11", "--quick", "--strict")
    assert code == 1
    assert "[FAIL] hurwitz" in out
