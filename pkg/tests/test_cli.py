import json
import subprocess
import sys

import pytest

from redei8.cli import EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, main, parse_form
from redei8.quadform import X, Y, O, direct_sum_all
from redei8.report import RECORD_KEYS, FieldReport


def test_field_text_with_oracle(capsys):
    assert main(["field", "13,3", "--oracle"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "delta       -39" in out
    assert "r2 r4 r8    1 1 0" in out
    assert "h=4" in out and "consistent  yes" in out


def test_field_json_record(capsys):
    assert main(["field", "5,3", "--json", "--oracle"]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert tuple(rec) == RECORD_KEYS
    assert (rec["delta"], rec["r2"], rec["r4"], rec["r8"]) == (-15, 1, 0, 0)
    assert rec["oracle"]["elementary_divisor_2part"] == [2]
    assert rec["qb_diagonal"] == [] and rec["b_matrix"] == []


def test_field_json_without_oracle_is_null(capsys):
    main(["field", "13,3", "--json"])
    assert json.loads(capsys.readouterr().out)["oracle"] is None


@pytest.mark.parametrize(
    "primes",
    ["5,7,3", "3,13", "13,4", "13,13,3", "2,3", "x,3", "", "-5,3"],
)
def test_field_rejects_bad_input(primes, capsys):
    assert main(["field", primes]) == EXIT_USAGE
    assert "error" in capsys.readouterr().err


def test_bound_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("REDEI8_MAX_DELTA", "100")
    assert main(["field", "13,3"]) == EXIT_OK
    assert main(["field", "41,3"]) == EXIT_USAGE
    assert main(["scan", "--max-abs-delta", "1000"]) == EXIT_USAGE
    assert "REDEI8_MAX_DELTA" in capsys.readouterr().err


def test_classify_form_json(capsys):
    assert main(["classify-form", "X", "--json"]) == EXIT_OK
    rec = json.loads(capsys.readouterr().out)
    assert rec == {"n": 2, "rank": 2, "defect": 0, "k": 1, "type": "Type2.1",
                   "arf": 0, "rho": 1, "zero_count": 3}


def test_classify_form_rows_and_names_agree(capsys):
    main(["classify-form", "X+O1", "--json"])
    by_name = capsys.readouterr().out
    main(["classify-form", "010,000,000", "--json"])
    assert capsys.readouterr().out == by_name


def test_parse_form_names():
    assert parse_form("X+Y+O2") == direct_sum_all([X, Y, O(2)])
    with pytest.raises(Exception):
        parse_form("Z")


def test_nullity_set(capsys):
    assert main(["nullity-set", "1", "2", "--x"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "{1}"
    assert main(["nullity-set", "2", "3"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "{0, 1, 2}"
    assert main(["nullity-set", "2", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "{0, 2}"


def test_nullity_set_bad_args(capsys):
    assert main(["nullity-set", "5", "2"]) == EXIT_USAGE


def test_usage_errors():
    assert main([]) == EXIT_USAGE
    assert main(["scan"]) == EXIT_USAGE
    assert main(["scan", "--max-abs-delta", "100", "--t", "two"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK


def test_scan_small_range(capsys):
    assert main(["scan", "--max-abs-delta", "100", "--t", "2"]) == EXIT_OK
    captured = capsys.readouterr()
    deltas = [json.loads(line)["delta"] for line in captured.out.splitlines()]
    assert deltas == sorted(deltas, reverse=True)
    for d in (-15, -39, -55, -87, -91):
        assert d in deltas
    assert "inconsistent: 0" in captured.err


def test_scan_tiny_bounds(capsys):
    assert main(["scan", "--max-abs-delta", "3"]) == EXIT_OK
    out = capsys.readouterr()
    assert [json.loads(line)["delta"] for line in out.out.splitlines()] == [-3]
    assert "fields: 1" in out.err
    assert main(["scan", "--max-abs-delta", "2"]) == EXIT_OK
    out = capsys.readouterr()
    assert out.out == "" and "fields: 0" in out.err


def test_scan_jsonl_roundtrip(tmp_path):
    path = tmp_path / "scan.jsonl"
    assert main(["scan", "--max-abs-delta", "2000", "--oracle", "--out", str(path)]) == EXIT_OK
    lines = path.read_text().splitlines()
    assert lines
    for line in lines:
        rep = FieldReport.from_json(line)
        assert rep.to_json() == line
        assert rep.consistent and rep.oracle is not None


def test_scan_parallel_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    main(["scan", "--max-abs-delta", "5000", "--oracle", "--jobs", "1", "--out", str(a)])
    main(["scan", "--max-abs-delta", "5000", "--oracle", "--jobs", "8", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_inconsistent_field_exit_code(monkeypatch, capsys):
    import redei8.report as report

    original = report.eight_rank_report

    def broken(f):
        rep = original(f)
        return rep.__class__(**{**rep.__dict__, "predicted": frozenset({99})})

    monkeypatch.setattr(report, "eight_rank_report", broken)
    assert main(["field", "13,3"]) == EXIT_INCONSISTENT
    assert "inconsistent" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "redei8", "field", "5,3", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["delta"] == -15
