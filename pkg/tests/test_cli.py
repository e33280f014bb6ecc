from __future__ import annotations

import csv
import io
import json
import math
import subprocess
import sys

import pytest

from minorspread import emit_graph6, make_family
from minorspread.cli import SERIES_COLUMNS, main

PETERSEN = emit_graph6(make_family("petersen"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# spread ---------------------------------------------------------------------


def test_spread_join_star(capsys):
    code, out, _ = run(capsys, "spread", "--family", "join_star", "--r", "4", "--n", "5")
    assert code == 0
    assert out.strip() == "lambda1=3.000000000 lambdan=-2.000000000 s=5.000000000"


def test_spread_graph6_and_json(capsys):
    assert run(capsys, "spread", "Bw")[1].strip().endswith("s=3.000000000")
    code, out, _ = run(capsys, "spread", "--family", "star", "--n", "5", "--json")
    data = json.loads(out)
    assert code == 0 and data["spread"] == pytest.approx(4.0, abs=1e-12)
    assert set(data) == {"graph6", "n", "e", "lambda1", "lambdan", "spread", "residual"}


def test_spread_full_precision_in_json(capsys):
    _, out, _ = run(capsys, "spread", "--family", "join_star", "--r", "3", "--n", "6", "--json")
    assert json.loads(out)["spread"] == pytest.approx(2 * math.sqrt(5), abs=1e-14)


@pytest.mark.parametrize(
    "argv",
    [
        ["spread", "B!"],
        ["spread"],
        ["spread", "Bw", "--family", "star", "--n", "3"],
        ["spread", "--family", "join_star", "--r", "9", "--n", "5"],
        ["spread", "--family", "wheel", "--n", "5"],
    ],
)
def test_spread_errors_exit_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


# hadwiger -------------------------------------------------------------------


def test_hadwiger_values(capsys):
    assert run(capsys, "hadwiger", emit_graph6(make_family("complete", n=5)))[1].strip() == "5"
    assert run(capsys, "hadwiger", emit_graph6(make_family("empty", n=4)))[1].strip() == "1"
    code, out, _ = run(capsys, "hadwiger", PETERSEN, "--cert")
    value, cert = out.strip().splitlines()
    assert code == 0 and value == "5"
    cert = json.loads(cert)
    assert cert["kind"] == "clique" and cert["r"] == 5 and len(cert["branch_sets"]) == 5


def test_hadwiger_json(capsys):
    code, out, _ = run(capsys, "hadwiger", "Bw", "--json")
    data = json.loads(out)
    assert code == 0 and data["hadwiger"] == 3 and data["certificate"]["r"] == 3


def test_hadwiger_size_cap(capsys):
    code, _, err = run(capsys, "hadwiger", emit_graph6(make_family("complete", n=12)))
    assert code == 2 and "11" in err


# search ---------------------------------------------------------------------


def test_search_writes_reports(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--r", "3", "--n", "6", "--out", str(tmp_path))
    assert code == 0 and "4.472135955" in out and "predicted maximiser wins" in out
    report = json.loads((tmp_path / "search_r3_n6.json").read_text())
    assert report["max_spread"] == pytest.approx(2 * math.sqrt(5), abs=1e-12)
    assert len(report["maximizers"]) == 1
    rows = list(csv.reader((tmp_path / "search_r3_n6.csv").open()))
    assert rows[0] == ["graph6", "e", "lambda1", "lambdan", "spread"]


def test_search_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("MINORSPREAD_OUT", str(tmp_path / "env"))
    assert run(capsys, "search", "--r", "4", "--n", "5")[0] == 0
    assert (tmp_path / "env" / "search_r4_n5.json").exists()


def test_search_shards_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert run(capsys, "search", "--r", "4", "--n", "7", "--shards", "4", "--out", str(a))[0] == 0
    assert run(capsys, "search", "--r", "4", "--n", "7", "--shards", "1", "--out", str(b))[0] == 0
    for suffix in ("json", "csv"):
        assert (a / f"search_r4_n7.{suffix}").read_bytes() == (b / f"search_r4_n7.{suffix}").read_bytes()


def test_search_needs_input_above_seven(capsys, tmp_path):
    code, out, err = run(capsys, "search", "--r", "4", "--n", "8", "--out", str(tmp_path))
    assert code == 2 and "geng" in err and "--input" in err
    assert not list(tmp_path.iterdir())


def test_search_from_input_file(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text("DF{\nD~{\nbad\nD?{\n", encoding="ascii")
    code, out, err = run(capsys, "search", "--r", "4", "--n", "5", "--input", str(src), "--out", str(tmp_path), "--json")
    summary = json.loads(out)
    assert code == 0 and summary["family_size"] == 3 and summary["maximizers"] == ["DF{"]
    assert "skipped 1" in err
    code, _, err = run(capsys, "search", "--r", "4", "--n", "5", "--input", str(src), "--strict", "--out", str(tmp_path))
    assert code == 2 and "line 3" in err


def test_search_rejects_wrong_order_input(capsys, tmp_path):
    src = tmp_path / "in.g6"
    src.write_text("Bw\n", encoding="ascii")
    assert run(capsys, "search", "--r", "3", "--n", "5", "--input", str(src), "--out", str(tmp_path))[0] == 2


# series ---------------------------------------------------------------------


def series_table(capsys, *argv):
    code, out, _ = run(capsys, "series", *argv)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    return list(csv.reader(io.StringIO(out)))[0], rows


def test_series_header_and_k2_row(capsys):
    header, rows = series_table(capsys, "--r", "4", "--n-from", "48", "--n-to", "50")
    assert header == SERIES_COLUMNS
    row = rows[-1]
    assert int(row["n"]) == 50
    assert float(row["c1"]) == 0.5 and float(row["c2"]) == 0.125
    assert float(row["s_exact"]) == pytest.approx(math.sqrt(4 * 2 * 48 + 1), abs=1e-9)
    assert row["divergent"] == "0"


def test_series_star_rows_are_exact(capsys):
    _, rows = series_table(capsys, "--r", "3", "--n-from", "4", "--n-to", "40")
    assert all(float(row["err"]) <= 1e-10 for row in rows)


def test_series_error_times_gamma_cubed_bounded(capsys):
    _, rows = series_table(capsys, "--r", "4", "--n-from", "20", "--n-to", "500")
    scaled = [float(row["err_gamma3"]) for row in rows]
    assert max(scaled) <= 2 * scaled[0]


def test_series_flags_divergent_rows(capsys):
    # K3 as the base: the series needs m > 12.
    _, rows = series_table(capsys, "--r", "5", "--n-from", "10", "--n-to", "20")
    flags = {int(row["n"]): row["divergent"] for row in rows}
    assert flags[15] == "1" and flags[16] == "0"
    assert all(row["lambda1_series"] == "" for row in rows if row["divergent"] == "1")


def test_series_custom_base_and_file(capsys, tmp_path):
    out = tmp_path / "series.csv"
    assert run(capsys, "series", "--r", "5", "--n-from", "30", "--n-to", "31", "--H", "Bg", "--out", str(out))[0] == 0
    rows = list(csv.DictReader(out.open()))
    assert float(rows[0]["c2"]) == pytest.approx(1 / 3)
    assert run(capsys, "series", "--r", "5", "--n-from", "30", "--n-to", "31", "--H", "Bw", "--json")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["series", "--r", "5", "--n-from", "30", "--n-to", "31", "--H", "A_"],
        ["series", "--r", "4", "--n-from", "9", "--n-to", "8"],
        ["series", "--r", "4", "--n-from", "2", "--n-to", "8"],
    ],
)
def test_series_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# verify ---------------------------------------------------------------------


def test_verify_all_suites_pass(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all")
    assert code == 0
    for name in ("codec", "spectral", "minor", "series", "search"):
        assert f"suite {name}:" in out
    assert "FAIL" not in out


def test_verify_seed_reproducible(capsys):
    def details(seed):
        code, out, _ = run(capsys, "verify", "--suite", "spectral", "--seed", str(seed), "--json")
        assert code == 0
        (suite,) = json.loads(out)
        assert suite["failed"] == suite["run"] - suite["passed"] == 0
        return suite["details"]

    assert details(7) == details(7)


def test_verify_unknown_suite(capsys):
    code, _, err = run(capsys, "verify", "--suite", "bogus")
    assert code == 2 and "unknown suite" in err


def test_verify_failure_exit_code(capsys, monkeypatch):
    from minorspread import cli
    from minorspread.verify import SuiteReport

    def broken(name, seed=0):
        rep = SuiteReport(name)
        rep.check("always fails", False, "forced")
        return rep

    monkeypatch.setattr(cli, "run_suite", broken)
    code, out, _ = run(capsys, "verify", "--suite", "codec")
    assert code == 1 and "[FAIL] always fails" in out


def test_argparse_usage_error_exits_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["search", "--r", "4"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "minorspread", "spread", "Bw"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip().endswith("s=3.000000000")
