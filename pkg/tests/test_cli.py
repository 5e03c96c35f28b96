import csv
import io
import json
import subprocess
import sys

import pytest

from hypercat import cli, closed_form


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, want",
    [
        (["compute", "-k", "2", "-n", "3", "--method", "walks"], "57"),
        (["compute", "-k", "1", "-n", "6"], "132"),
        (["compute", "-k", "3", "-n", "2"], "20"),
    ],
)
def test_compute_examples(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == want


@pytest.mark.parametrize("method", ["closed", "series", "lagrange", "trees", "walks", "auto"])
def test_compute_methods_agree(capsys, method):
    code, out, _ = run(capsys, "compute", "-k", "2", "-n", "4", "--method", method)
    assert code == 0 and out.strip() == "678"


def test_compute_walks_guard(capsys):
    code, _, err = run(capsys, "compute", "-k", "3", "-n", "3", "--method", "walks")
    assert code == 2 and "max-walk-steps" in err
    code, out, err = run(capsys, "compute", "-k", "3", "-n", "3", "--method", "walks", "--max-walk-steps", "18")
    assert code == 0 and "warning" in err
    assert int(out) == closed_form.hypergraph_catalan_closed(3, 3)


def test_compute_huge_value_prints_in_full(capsys):
    # beyond the interpreter's default 4300-digit str() limit
    code, out, _ = run(capsys, "compute", "-k", "10", "-n", "230")
    assert code == 0 and len(out.strip()) > 4300


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "-k", "2", "-n", "3", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "k,n,c"
    assert lines[-1] == "2,3,57"
    assert "\r" not in out


def test_table_catalan_prefix(capsys):
    _, out, _ = run(capsys, "table", "-k", "1", "-n", "4")
    assert [row["c"] for row in csv.DictReader(io.StringIO(out))] == ["1", "1", "2", "5", "14"]


def test_table_empty_k_is_usage_error(capsys):
    code, _, _ = run(capsys, "table", "-k", "", "-n", "3")
    assert code == 2


def test_missing_arguments_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["table", "-n", "3"])
    assert exc.value.code == 2


def test_table_round_trip_csv_and_json(capsys, tmp_path):
    out_file = tmp_path / "t.json"
    run(capsys, "table", "-k", "1,2,3", "-n", "12", "--format", "json", "--out", str(out_file))
    rows = json.loads(out_file.read_text(encoding="utf-8"))
    _, csv_text, _ = run(capsys, "table", "-k", "1,2,3", "-n", "12")
    csv_rows = list(csv.DictReader(io.StringIO(csv_text)))
    assert len(rows) == len(csv_rows) == 39
    for j, c in zip(rows, csv_rows):
        assert isinstance(j["c"], str)
        assert (str(j["k"]), str(j["n"]), j["c"]) == (c["k"], c["n"], c["c"])
        assert str(closed_form.hypergraph_catalan_closed(j["n"], j["k"])) == j["c"]


def test_table_out_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "table", "-k", "1", "-n", "2", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1 and "I/O" in err


def test_ratio_rows(capsys):
    code, out, _ = run(capsys, "ratio", "-k", "2", "--ns", "50,100,200")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["n"] for r in rows] == ["50", "100", "200"]
    deltas = [float(r["abs_delta"]) for r in rows]
    assert deltas == sorted(deltas, reverse=True)
    assert len(rows[0]["ratio"].replace(".", "")) <= 12


def test_ratio_single_row_json(capsys):
    code, out, _ = run(capsys, "ratio", "-k", "1", "--ns", "10", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["n"] == 10 and 0 < row["ratio"] < 1


def test_star_commands(capsys):
    code, out, _ = run(capsys, "star", "-k", "2", "-n", "4", "-m", "1")
    assert code == 0 and out.strip() == "360"
    code, _, err = run(capsys, "star", "-k", "2", "-n", "3", "-m", "1")
    assert code == 2 and "domain" in err
    code, out, _ = run(capsys, "star", "-n", "20", "--k2-sum")
    assert code == 0 and out.startswith("n,star_sum_ratio,exp_3_2")


def test_verify_quick_passes(capsys):
    code, out, _ = run(capsys, "verify", "--level", "quick")
    assert code == 0
    assert out.count("[PASS]") == 4


def test_verify_reports_injected_fault(capsys, monkeypatch):
    real = closed_form.block_multinomial
    monkeypatch.setattr(closed_form, "block_multinomial", lambda i, k: real(i, k) * (2 if i == 3 else 1))
    code, out, _ = run(capsys, "verify", "--level", "quick")
    assert code == 1
    assert "[FAIL] triple agreement" in out
    assert "walks=" in out and "closed=" in out


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hypercat.cli", "compute", "-k", "2", "-n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "6"
