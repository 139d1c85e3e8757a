import json
import subprocess
import sys
from decimal import Decimal
from pathlib import Path

import pytest

from convsphere import cli
from convsphere.exact import PiScaled, unit_volume_exact

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


@pytest.mark.parametrize("fmt, ext", [("text", "txt"), ("csv", "csv"), ("json", "json")])
def test_table_golden(capsys, fmt, ext):
    code, out, _ = run(capsys, "table", "--n-max", "6", "--format", fmt)
    assert code == 0
    assert out == (GOLDEN / f"table_6.{ext}").read_bytes().decode("utf-8")


def test_table_csv_round_trip(capsys):
    _, out, _ = run(capsys, "table", "--n-max", "9", "--format", "csv")
    rows = cli.parse_csv(out)
    assert [int(r["n"]) for r in rows] == list(range(2, 10))
    for r in rows:
        c = PiScaled.parse(r["C_n"])
        assert c == unit_volume_exact(int(r["n"]))
        assert Decimal(r["value"]) == c.to_decimal(10)


def test_table_single_row(capsys):
    _, rec, _ = run_json(capsys, "table", "--n-max", "2")
    assert [r["C_n"] for r in rec["results"]["rows"]] == ["1/1·pi^1"]


def test_table_schema(capsys):
    _, rec, _ = run_json(capsys, "table", "--n-max", "4")
    assert list(rec) == ["command", "engine", "inputs", "results"]
    for row in rec["results"]["rows"]:
        assert list(row) == ["n", "C_n", "value", "V_n"]
        assert isinstance(row["n"], int)
        assert all(isinstance(row[k], str) for k in ("C_n", "value", "V_n"))


def test_volume_exact(capsys):
    code, rec, _ = run_json(capsys, "volume", "-n", "4", "-r", "1")
    assert code == 0
    assert rec["results"]["C"] == "1/2·pi^2"
    assert rec["results"]["value"].startswith("4.934802")


def test_volume_zero_radius(capsys):
    _, rec, _ = run_json(capsys, "volume", "-n", "2", "-r", "0")
    assert Decimal(rec["results"]["value"]) == 0


@pytest.mark.parametrize("engine", ["exact", "closed", "gamma"])
def test_volume_exact_engines_agree(capsys, engine):
    _, rec, _ = run_json(capsys, "volume", "-n", "5", "-r", "2", "--engine", engine)
    assert rec["engine"] == engine
    assert rec["results"]["C"] == "8/15·pi^2"
    assert rec["results"]["value"] == "168.4412484"


@pytest.mark.parametrize("engine", ["grid", "mc"])
def test_volume_numeric_engines(capsys, engine):
    _, rec, _ = run_json(capsys, "volume", "-n", "3", "--engine", engine, "--samples", "200000")
    assert float(rec["results"]["value"]) == pytest.approx(4.18879, rel=2e-2)
    assert "C" not in rec["results"]


def test_pdf(capsys):
    _, rec, _ = run_json(capsys, "pdf", "-n", "5")
    assert PiScaled.parse(rec["results"]["coeff"]) == PiScaled.parse("1/16·pi^2") * PiScaled.parse("2/3·pi^0")
    assert rec["results"]["exponent"] == "3/2"


def test_paradox(capsys):
    _, rec, _ = run_json(capsys, "paradox", "-n", "10")
    res = rec["results"]
    assert round(float(res["inner_radius"]), 5) == 2.16228
    assert round(float(res["l_max"]), 5) == 12.64911
    assert res["inner_exceeds_2"] is True
    _, rec, _ = run_json(capsys, "paradox", "-n", "9")
    assert rec["results"]["inner_exceeds_2"] is False


def test_paradox_with_mc(capsys):
    code, rec, _ = run_json(capsys, "paradox", "-n", "6", "--with-mc", "--samples", "300000")
    assert code == 0
    assert abs(float(rec["results"]["mc_corner_z"])) <= 4


def test_mc_command(capsys):
    code, rec, _ = run_json(capsys, "mc", "-n", "3", "--samples", "100000", "--seed", "9")
    assert code == 0
    assert rec["engine"] == "mc"
    assert rec["inputs"]["seed"] == 9
    assert abs(float(rec["results"]["z"])) <= 4


def test_check_passes(capsys):
    code, rec, _ = run_json(capsys, "check", "--n-max", "4", "--samples", "200000")
    assert code == 0
    assert rec["results"]["passed"] is True


def test_check_coarse_grid_fails(capsys):
    code, rec, err = run_json(capsys, "check", "--n-max", "3", "--cells", "2", "--samples", "1000")
    assert code == 1
    assert rec["results"]["passed"] is False
    assert float(rec["results"]["rows"][1]["grid_rel_err"]) > 0.1
    assert "failed" in err


def test_check_tiny_sample_reported(capsys):
    _, rec, _ = run_json(capsys, "check", "--n-max", "10", "--samples", "10", "--cells", "256")
    row = rec["results"]["rows"][-1]
    assert row["n"] == 10
    assert "mc_z" in row and "mc_std_err" in row


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "42")
    _, rec, _ = run_json(capsys, "mc", "-n", "2", "--samples", "1000")
    assert rec["inputs"]["seed"] == 42
    _, explicit, _ = run_json(capsys, "mc", "-n", "2", "--samples", "1000", "--seed", "42")
    assert rec == explicit
    monkeypatch.setenv(cli.SEED_ENV, "banana")
    code, _, err = run(capsys, "mc", "-n", "2", "--samples", "10")
    assert code == 2 and "CONVSPHERE_SEED" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--format", "xml"],
        ["table", "--n-max", "1"],
        ["volume", "-n", "0"],
        ["volume", "-n", "3", "-r", "-1"],
        ["volume", "-n", "1", "--engine", "closed"],
        ["volume", "-n", "3", "--engine", "nope"],
        ["paradox", "-n", "1"],
        ["mc", "-n", "2", "--seed", "-3"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_engine_failure_exit_3(capsys, monkeypatch):
    def boom(n, cells, method="direct"):
        raise RuntimeError("grid blew up")

    monkeypatch.setattr(cli.grid, "pdf_numeric", boom)
    code, out, err = run(capsys, "volume", "-n", "3", "--engine", "grid")
    assert code == 3
    assert out == ""
    assert "grid blew up" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "convsphere", "table", "--n-max", "3", "--format", "csv"],
        capture_output=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.decode("utf-8").splitlines()[1].startswith("2,1/1·pi^1,")


def test_text_rows_aligned(capsys):
    _, out, _ = run(capsys, "table", "--n-max", "12")
    lines = out.splitlines()
    col = lines[0].index("C_n")
    assert all(line[col - 2 : col] == "  " for line in lines)
