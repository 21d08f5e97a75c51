import csv
import io
import json

import pytest

from griddom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve(capsys):
    assert run(capsys, "solve", "roman", "2", "5") == (0, "6\n", "")
    assert run(capsys, "solve", "2dom", "1", "1")[1] == "1\n"


def test_solve_large_uses_recurrence(capsys):
    code, out, _ = run(capsys, "solve", "2dom", "5", "100", "--json")
    data = json.loads(out)
    assert code == 0 and data["method"] == "recurrence"
    code, out, _ = run(capsys, "solve", "2dom", "5", "100", "--method", "dp")
    assert int(out) == data["value"]


def test_recurrence(capsys):
    code, out, _ = run(capsys, "recurrence", "2dom", "6", "--json")
    data = json.loads(out)
    assert code == 0 and (data["m0"], data["r"], data["p"]) == (20, 11, 28)


def test_loss(capsys):
    code, out, _ = run(capsys, "loss", "2dom", "13", "13", "--json")
    data = json.loads(out)
    assert code == 0 and (data["loss"], data["lower_bound"]) == (76, 69)


def test_witness_file(capsys, tmp_path):
    path = tmp_path / "w.txt"
    code, _, _ = run(capsys, "witness", "18", "30", "--out", str(path))
    assert code == 0
    assert path.read_text().count("#") == 207


def test_formula(capsys):
    code, out, _ = run(capsys, "formula", "roman", "9", "14", "--json")
    assert code == 0 and json.loads(out)["ambiguous"] is True


def test_verify_oracle(capsys):
    code, out, _ = run(capsys, "verify", "2dom", "--suite", "oracle")
    assert code == 0 and out.rstrip().endswith("PASS")


def test_verify_loss_window(capsys):
    code, out, _ = run(capsys, "verify", "2dom", "--suite", "loss", "--window", "13", "18")
    assert code == 0


def test_verify_roman_formulas_reports(capsys):
    code, out, _ = run(capsys, "verify", "roman", "--suite", "formulas", "--csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    bad = [(r["n"], r["m"]) for r in rows if r["match"] == "False" and r["ambiguous"] == "False"]
    # The one unambiguous disagreement is the 4 x 6 table row.
    assert bad == [("4", "6")] and code == 1


def test_errors(capsys):
    assert run(capsys, "solve", "2dom", "99", "99")[0] == 2
    assert run(capsys, "oracle", "2dom", "5", "5")[0] == 2
    assert run(capsys, "solve", "2dom", "3", "3", "--witness", "x.txt")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "total", "3", "3"])
    assert exc.value.code == 2
