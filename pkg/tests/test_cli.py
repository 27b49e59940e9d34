from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from nestedac.cli import run

T1 = ["--field", "2^2", "--prod", "2,2,4"]
T2 = ["--field", "3^2", "--prod", "3,9"]


def test_params_first_table():
    code, out = run(T1 + ["params", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [r["dim"] for r in rows] == [1, 4, 8, 12, 15, 16]
    assert rows[0]["delta"] == 16
    assert rows[4]["size"] == str(4**15)


def test_params_second_table_delta():
    code, out = run(["params", *T2, "--u-range", "1..10", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["delta"]) for r in rows] == [18, 9, 8, 7, 6, 5, 4, 3, 2, 1]
    assert rows[-1]["|C|"] == "9^27"


def test_count_json():
    code, out = run(T1 + ["count", "--u", "4", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {"u": 4, "j": 2, "ell": 2, "k0": 1, "per_k": {"2": "288", "3": "72"}, "total": "360"}


def test_count_text_columns_follow_table_order():
    code, out = run(T1 + ["count"])
    lines = out.splitlines()
    assert lines[0].split() == ["u", "(j,l)", "k0", "k", "|C|", "delta", "|N^(k)|", "|N|"]
    assert lines[4].split() == ["4", "(2,2)", "1", "1,2", "4^15", "2", "288", "360"]
    assert lines[5].split() == ["3", "72"]


def test_enumerate_output():
    code, out = run(T1 + ["enumerate", "--u", "1"])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "count=18 weight=8"
    assert len(lines) == 19
    assert all(len(line.split(",")) == 16 for line in lines[:-1])


def test_dist():
    code, out = run(["--field", "2", "--prod", "2,2", "dist", "--u", "1", "--format", "json"])
    assert code == 0
    assert json.loads(out)["distribution"] == {"0": "1", "2": "6", "4": "1"}


def test_verify_tables():
    code, out = run(T1 + ["verify", "--u-range", "1..5"])
    assert code == 0
    assert out.count(" ok") == 5
    code, out = run(T2 + ["verify", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert [int(r["total"]) for r in rows] == [24, 24, 216, 864, 2016, 3024, 3024, 2664, 2808, 216]
    assert all(r["ok"] for r in rows)


def test_verify_reed_muller_domain():
    code, out = run(["--field", "2", "--prod", "2,2,2", "verify", "--u-range", "1..3", "--format", "json"])
    assert code == 0
    rows = json.loads(out)
    assert all(r["total"] == r["enumerated"] == r["scanned"] == r["specialization"] for r in rows)


def test_global_flags_either_side_of_subcommand():
    a = run(["count", *T1, "--u", "2"])
    b = run([*T1, "--u", "2", "count"])
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["--field", "6", "--prod", "2", "params"],
        ["--field", "2^2", "--prod", "4,2", "params"],
        ["--field", "2^2", "--prod", "2,2,4", "count", "--u", "9"],
        ["--field", "2^2", "--prod", "2,2,4", "count", "--u-range", "3-4"],
        ["--field", "2^2", "params"],
        ["--field", "2^2", "--prod", "2,2,4", "params", "--scan-cap", "0"],
        ["--field", "2^2", "--prod", "2,2,4", "bogus"],
        ["--field", "2^2", "--prod", "2,2,4", "params", "--poly-table", "/nonexistent"],
    ],
)
def test_bad_input_exit_code(argv):
    assert run(argv)[0] == 2


def test_resource_cap_exit_code():
    assert run(T2 + ["dist", "--u", "5"])[0] == 3
    assert run(T1 + ["enumerate", "--u", "4", "--orbit-cap", "5"])[0] == 3


def test_verify_failure_exit_code(monkeypatch):
    import nestedac.verify as verify

    real = verify.count_minwt

    class Wrong:
        def __init__(self, rep):
            self.total = rep.total + 3

    monkeypatch.setattr(verify, "count_minwt", lambda prod, u: Wrong(real(prod, u)))
    code, out = run(T1 + ["verify", "--u", "1"])
    assert code == 1 and "FAIL" in out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "nestedac.cli", *T1, "count", "--u", "1", "--format", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total"] == "18"
