"""Tests for the n-grid parser, the certification rows and the writers."""

import io
import json
import math
import os
import sys

import pandas as pd
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from errors import DomainError
from metrics import ks_tv_exact
from sweep import (CSV_HEADER, json_line, parse_int, parse_n_grid, run_sweep, summarise,
                   sweep_row, write_records, write_rows)


def test_parse_int_accepts_scientific_notation():
    assert parse_int("7") == 7
    assert parse_int(" 1e6 ") == 10 ** 6
    assert parse_int("1_000") == 1000
    for bad in ("2.5", "abc", "inf", ""):
        with pytest.raises(DomainError):
            parse_int(bad)


def test_parse_n_grid_lists_and_ranges():
    assert parse_n_grid("7") == [7]
    assert parse_n_grid("2..5") == [2, 3, 4, 5]
    assert parse_n_grid("2,5,1e3") == [2, 5, 1000]
    assert parse_n_grid("2..3,10") == [2, 3, 10]


def test_parse_n_grid_log_spacing():
    grid = parse_n_grid(log_spec="2..1e6", points=25)
    assert grid[0] == 2 and grid[-1] == 10 ** 6
    assert len(grid) == 25
    assert grid == sorted(set(grid))
    # rounding collapses neighbours at the small end
    assert parse_n_grid(log_spec="2..4", points=10) == [2, 3, 4]


@pytest.mark.parametrize("kwargs", [
    {},
    {"n_spec": "2", "log_spec": "2..10"},
    {"n_spec": "1"},
    {"n_spec": "5..2"},
    {"n_spec": "2..x"},
    {"n_spec": "2,,3"},
    {"n_spec": "2..2000000"},
    {"log_spec": "10"},
    {"log_spec": "10..2"},
    {"log_spec": "2..10", "points": 1},
    {"log_spec": "2..1e13"},
])
def test_parse_n_grid_rejects_malformed_specs(kwargs):
    with pytest.raises(DomainError):
        parse_n_grid(**kwargs)


def test_sweep_row_closed_forms_only():
    row = sweep_row(10)
    assert row.all_checks_pass
    assert row.ks_exact == ks_tv_exact(10).ks
    assert math.isnan(row.tv_quadrature) and math.isnan(row.ks_scan)
    assert row.ratio == pytest.approx(row.ks_exact / row.theorem_bound)
    assert 0 < row.ratio < 1


def test_sweep_row_strict_runs_oracles():
    row = sweep_row(5, strict=True, grid_size=10 ** 5)
    assert row.all_checks_pass
    assert row.tv_quadrature == pytest.approx(row.ks_exact, abs=1e-8)
    assert -1e-15 <= row.ks_exact - row.ks_scan <= 1e-6


def test_run_sweep_keeps_input_order_with_workers():
    ns = [1000, 2, 77, 5]
    rows = run_sweep(ns, n_jobs=2)
    assert [row.n for row in rows] == ns
    serial = run_sweep(ns)
    assert [(r.n, r.ks_exact, r.all_checks_pass) for r in rows] == \
        [(r.n, r.ks_exact, r.all_checks_pass) for r in serial]


def test_summarise():
    rows = run_sweep([2, 10, 100])
    summary = summarise(rows)
    assert summary.rows == 3
    assert summary.all_pass
    assert summary.min_ratio <= summary.max_ratio
    assert summarise([]).rows == 0


def test_csv_output_has_fixed_header_and_full_precision(capsys):
    write_rows(run_sweep([2, 3]), "csv")
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    frame = pd.read_csv(io.StringIO(out), float_precision="round_trip")
    assert list(frame["n"]) == [2, 3]
    assert frame["ks_exact"][0] == ks_tv_exact(2).ks
    # oracle columns are empty without --strict
    assert frame["tv_quadrature"].isna().all()
    assert lines[1].split(",")[2] == ""
    assert list(frame["pass"]) == [True, True]


def test_json_lines_mirror_the_csv_fields(tmp_path):
    path = tmp_path / "rows.jsonl"
    write_rows(run_sweep([2, 3]), "json", str(path))
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert [list(r) for r in records] == [CSV_HEADER, CSV_HEADER]
    assert records[0]["ks_exact"] == ks_tv_exact(2).ks
    assert records[0]["tv_quadrature"] is None
    assert records[1]["pass"] is True


def test_json_line_formats_numbers():
    line = json_line({"a": 0.1, "b": 3, "c": True, "d": math.inf, "e": "x"})
    assert line == '{"a": 0.10000000000000001, "b": 3, "c": true, "d": null, "e": "x"}'
    assert json.loads(line)["a"] == 0.1


def test_write_records_errors(tmp_path):
    with pytest.raises(DomainError):
        write_records([{"n": 2}], "xml")
    with pytest.raises(OSError):
        write_records([{"n": 2}], "csv", str(tmp_path / "missing" / "rows.csv"))
