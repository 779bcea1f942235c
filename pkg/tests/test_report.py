from __future__ import annotations

import csv
import io
import json

from nisv.report import FIELDS, CheckReport, emit_report, render, sort_reports


def _r(id_="A", passed=True, **defects):
    return CheckReport(id_, {"k": "1"}, 256, 64, defects or {"x": 1e-12}, {"x": 1e-10}, passed, 17)


def test_json_has_the_fixed_key_order():
    out = json.loads(render([_r()], "json"))
    assert list(out[0]) == list(FIELDS)
    assert out[0]["pass"] is True


def test_json_of_no_reports_is_an_empty_list():
    assert json.loads(render([], "json")) == []


def test_non_finite_defects_stay_valid_json():
    out = json.loads(render([_r(x=float("inf"))], "json"))
    assert out[0]["defects"]["x"] == "inf"


def test_csv_has_one_row_per_report():
    rows = list(csv.reader(io.StringIO(render([_r("A"), _r("B", False, y=2.0)], "csv"))))
    assert len(rows) == 3
    assert "defect.x" in rows[0] and "defect.y" in rows[0]
    assert rows[2][rows[0].index("pass")] == "false"


def test_text_marks_verdicts():
    text = render([_r("A"), _r("B", False)], "text")
    assert text.startswith("PASS A") and "FAIL B" in text


def test_sort_and_write(tmp_path):
    reports = sort_reports([_r("B"), _r("A")])
    assert [r.id for r in reports] == ["A", "B"]
    p = tmp_path / "r.json"
    text = emit_report(reports, "json", p)
    assert p.read_text() == text
