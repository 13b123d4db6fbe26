import csv
import subprocess
import sys

import pytest

from ordnom.bench import COLUMNS, BenchRow, histogram_rows, run_bench
from ordnom.cli import main
from ordnom.fileformat import load


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_and_minimise(tmp_path, capsys):
    f = tmp_path / "f2.nom"
    code, _, _ = run(capsys, "generate", "fifo", "--n", "2", "--out", str(f))
    assert code == 0 and len(load(f).states) == 13
    m = tmp_path / "f2m.nom"
    code, out, _ = run(capsys, "minimise", str(f), "--out", str(m))
    fields = out.split()
    assert code == 0 and fields[:4] == ["13", "6", "2", "2"]
    float(fields[4])
    code, out, _ = run(capsys, "equiv", str(f), str(m))
    assert (code, out.strip()) == (0, "EQUIVALENT")


def test_equiv_counterexample(tmp_path, capsys):
    a, b = tmp_path / "a.nom", tmp_path / "b.nom"
    run(capsys, "generate", "lmax", "--out", str(a))
    run(capsys, "generate", "lint", "--out", str(b))
    code, out, _ = run(capsys, "equiv", str(a), str(a))
    assert out.strip() == "EQUIVALENT"
    code, out, _ = run(capsys, "equiv", str(a), str(b))
    assert code == 0 and out.startswith("COUNTEREXAMPLE ")
    assert len(out.split()) == 3


def test_learn(tmp_path, capsys):
    a, h = tmp_path / "a.nom", tmp_path / "h.nom"
    run(capsys, "generate", "lmax", "--out", str(a))
    code, out, _ = run(capsys, "learn", str(a), "--out", str(h), "--check-oracle")
    assert code == 0
    assert out.startswith("MQ=") and "EQ=" in out and "orbits=3 dim=1" in out
    assert len(load(h).states) == 3


def test_generate_random_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "random", "--orbits", "4", "--dim", "2",
                       "--seed", "5")
    assert code == 0 and out.startswith("nomdfa 1\n")
    code, out2, _ = run(capsys, "generate", "random", "--orbits", "4", "--dim", "2",
                        "--seed", "5")
    assert out == out2
    code, out, _ = run(capsys, "generate", "formula", "--locations", "3", "--max-ops", "1")
    assert code == 0 and out.count("\nstate ") >= 3


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.nom"
    bad.write_text("nomdfa 1\nnonsense\n")
    code, _, err = run(capsys, "minimise", str(bad))
    assert code == 2 and "line 2" in err
    a = tmp_path / "a.nom"
    run(capsys, "generate", "lint", "--out", str(a))
    lines = a.read_text().splitlines(keepends=True)
    k = next(i for i, s in enumerate(lines) if s.startswith("delta"))
    broken = tmp_path / "broken.nom"
    broken.write_text("".join(lines[:k] + lines[k + 1:]))
    code, _, err = run(capsys, "minimise", str(broken))
    assert code == 1 and "not total" in err
    code, _, _ = run(capsys, "minimise", str(tmp_path / "missing.nom"))
    assert code == 1


def test_bench_writes_csv_and_figures(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("ORDNOM_HIST_BIN_WIDTH", "2")
    out = tmp_path / "res.csv"
    code, _, _ = run(capsys, "bench", "--models", "lmax,fifo,random", "--fifo-max", "2",
                     "--seeds", "4", "--orbits", "6", "--dim", "2", "--out", str(out),
                     "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert tuple(rows[0].keys()) == COLUMNS
    assert [r["model"] for r in rows[:3]] == ["lmax", "fifo1", "fifo2"]
    assert rows[2]["N_in"] == "13" and rows[2]["N_out"] == "6"
    assert [r["seed"] for r in rows[3:]] == ["0", "1", "2", "3"]
    hist = (tmp_path / "res_hist.csv").read_text().splitlines()
    assert hist[0] == "model,low,high,count"
    assert all(int(line.split(",")[2]) - int(line.split(",")[1]) == 2 for line in hist[1:])
    assert (tmp_path / "res_hist.png").stat().st_size > 0


def test_histogram_rows():
    rows = [BenchRow("r", 5, 1, n, 1, 0.0, s) for s, n in enumerate([1, 2, 2, 5])]
    rows.append(BenchRow("lmax", 5, 2, 3, 1, 0.0))
    assert histogram_rows(rows, 1) == [("r", 1, 2, 1), ("r", 2, 3, 2), ("r", 5, 6, 1)]
    assert histogram_rows(rows, 4) == [("r", 0, 4, 3), ("r", 4, 8, 1)]


def test_bench_rejects_unknown_model():
    with pytest.raises(ValueError):
        list(run_bench(["nope"]))


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "ordnom.cli", "generate", "lint"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("nomdfa 1")
