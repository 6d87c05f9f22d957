import re

import pytest

from mtfr import harness
from mtfr.errors import EmptyResultError, MTFRError
from mtfr.harness import (
    CSV_COLUMNS,
    ExperimentResult,
    Row,
    aggregate,
    check_trends,
    emit_csv,
    read_csv,
    render_svg,
    run_heuristic_comparison,
    run_model_comparison,
)


def strip_runtime(rows):
    return [(r.N, r.trial, r.seed, r.method, r.size, r.optimal) for r in rows]


def test_fig6_deterministic():
    a = run_heuristic_comparison([4], 10, 7)
    b = run_heuristic_comparison([4], 10, 7)
    assert strip_runtime(a.rows) == strip_runtime(b.rows)
    assert a.aggregates == b.aggregates
    assert strip_runtime(run_heuristic_comparison([4], 10, 8).rows) != strip_runtime(a.rows)


def test_fig6_rows_bounded_by_exact():
    res = run_heuristic_comparison([4, 5, 6], 20, 3)
    assert len(res.rows) == 3 * 20 * 3
    assert check_trends(res) == []


def test_fig7_rows_and_single_pair():
    res = run_model_comparison([1, 4, 5], 15, 2)
    for r in res.rows:
        if r.N == 1:
            assert r.size == 1
    by = {}
    for r in res.rows:
        by.setdefault((r.N, r.trial), {})[r.method] = r.size
    assert all(v["unidirectional"] <= v["bidirectional"] for v in by.values())


def test_parallel_matches_serial():
    a = run_model_comparison([4, 5], 8, 1, jobs=1)
    b = run_model_comparison([4, 5], 8, 1, jobs=2)
    assert strip_runtime(a.rows) == strip_runtime(b.rows)


def test_rows_ordered_by_n_trial_method():
    res = run_heuristic_comparison([5, 4], 3, 0)
    keys = [(r.N, r.trial, harness.FIG6_METHODS.index(r.method)) for r in res.rows]
    assert keys == sorted(keys)


def test_aggregates_recompute(tmp_path):
    res = run_heuristic_comparison([4, 5], 12, 5)
    path = tmp_path / "fig6.csv"
    emit_csv(res, str(path))
    aggs, excluded = aggregate(read_csv(str(path)))
    assert aggs == res.aggregates and excluded == res.excluded_trials


def test_budget_trials_excluded():
    rows = [Row(4, 0, 1, "exact", 3, False, 0.0), Row(4, 0, 1, "greedy-cycle", 2, False, 0.0),
            Row(4, 0, 1, "greedy-degree", 2, False, 0.0),
            Row(4, 1, 2, "exact", 2, True, 0.0), Row(4, 1, 2, "greedy-cycle", 2, False, 0.0),
            Row(4, 1, 2, "greedy-degree", 3, False, 0.0)]
    aggs, excluded = aggregate(rows)
    assert excluded == {4: 1}
    assert aggs[(4, "exact")].count == 1 and aggs[(4, "greedy-degree")].mean == 3
    res = ExperimentResult("fig6", harness.FIG6_METHODS, rows, aggs, excluded)
    assert check_trends(res) == []


def test_trend_failure_detected():
    rows = [Row(4, 0, 1, "unidirectional", 3, True, 0.0), Row(4, 0, 1, "bidirectional", 3, True, 0.0)]
    aggs, _ = aggregate(rows)
    res = ExperimentResult("fig7", harness.FIG7_METHODS, rows, aggs)
    assert len(check_trends(res)) == 1


def test_csv_one_row(tmp_path):
    rows = [Row(4, 0, 9, "exact", 2, True, 1.23456)]
    aggs, _ = aggregate(rows)
    res = ExperimentResult("fig6", ("exact",), rows, aggs)
    path = tmp_path / "one.csv"
    emit_csv(res, str(path))
    lines = path.read_text().splitlines()
    assert lines == [",".join(CSV_COLUMNS), "4,0,9,exact,2,true,1.235"]


def test_empty_result(tmp_path):
    res = ExperimentResult("fig6", harness.FIG6_METHODS, [])
    with pytest.raises(EmptyResultError) as info:
        emit_csv(res, str(tmp_path / "x.csv"))
    assert info.value.code == "EMPTY_RESULT"
    with pytest.raises(EmptyResultError):
        render_svg(res)


def test_io_error_names_path(tmp_path):
    res = run_model_comparison([2], 1, 0)
    bad = str(tmp_path / "missing" / "x.csv")
    with pytest.raises(MTFRError) as info:
        emit_csv(res, bad)
    assert bad in str(info.value) and info.value.code == "IO"


def test_svg_one_polyline_per_method():
    svg = render_svg(run_heuristic_comparison([4, 5], 5, 0))
    assert len(re.findall(r"<polyline ", svg)) == 3
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    svg7 = render_svg(run_model_comparison([4, 5], 5, 0))
    assert len(re.findall(r"<polyline ", svg7)) == 2
