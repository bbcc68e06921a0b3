import csv
import io
from fractions import Fraction as F

import pytest

from incknap import experiments
from incknap.experiments import (FIELDS, CaseResult, ResultRecord, Suite, decimal_str,
                                 run_experiment, run_to_text, strip_timing)


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_empty_suite_is_header_only():
    text, res = run_to_text("empty")
    assert text == ",".join(FIELDS) + "\n"
    assert res.exit_code == 0


def test_size_suite_rows_and_summary():
    text, res = run_to_text("size")
    table = rows(text)
    assert table[0] == list(FIELDS)
    assert len(table) == 1 + 3 + 1
    assert table[-1][FIELDS.index("instance")] == "summary"
    assert res.ok


def test_limit_and_path_output(tmp_path):
    path = tmp_path / "out.csv"
    res = run_experiment("stairways", str(path), limit=4)
    assert len(res.results) == 4
    assert len(rows(path.read_text())) == 1 + 4 + 1


def test_workers_match_serial():
    serial, _ = run_to_text("stairways", limit=6)
    pooled, _ = run_to_text("stairways", limit=6, workers=2)
    assert strip_timing(serial) == strip_timing(pooled)


def test_strip_timing_drops_ms_only():
    text, _ = run_to_text("size")
    head = rows(strip_timing(text))[0]
    assert "ms" not in head and len(head) == len(FIELDS) - 1
    assert strip_timing("") == ""


def test_record_row_renders_fractions():
    rec = ResultRecord("s", "i", 3, F(1, 2), "alg", F(7, 3), F(3), F(7, 9))
    row = dict(zip(FIELDS, rec.row()))
    assert row["value"] == "7/3" and row["value_dec"] == "2.333333"
    assert row["ratio"] == "7/9" and row["eps"] == "1/2"


def test_decimal_str():
    assert decimal_str(F(2, 3)) == "0.666667"
    assert decimal_str(F(-1, 8)) == "-0.125000"
    assert decimal_str(None) == ""


def test_failures_give_exit_one_and_artifacts(tmp_path, monkeypatch):
    def broken(index, seed):
        rec = ResultRecord("broken", f"b-{index}", seed, None, "none", ok=False)
        return CaseResult(rec, ["forced failure"], {}, artifact="{}\n")

    monkeypatch.setitem(experiments.SUITES, "broken", Suite("broken", 2, broken, "test"))
    res = run_experiment("broken", io.StringIO(), artifacts=str(tmp_path / "art"))
    assert res.exit_code == 1
    assert res.failures == ["b-0: forced failure", "b-1: forced failure"]
    assert sorted(p.name for p in (tmp_path / "art").iterdir()) == \
        ["broken-b-0.json", "broken-b-1.json"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_experiment("nope")


def test_rows_are_flushed_as_they_finish(tmp_path):
    path = tmp_path / "live.csv"
    seen = []
    original = experiments.run_case

    def spy(name, index, base_seed):
        seen.append(len(path.read_text().splitlines()))
        return original(name, index, base_seed)

    experiments.run_case, saved = spy, experiments.run_case
    try:
        run_experiment("stairways", str(path), limit=3)
    finally:
        experiments.run_case = saved
    assert seen == [1, 2, 3]
