import csv
import io
import json

import pytest

from theta.export import ExportError, export, render


def test_minimal_json_has_87_records():
    recs = json.loads(render("minimal", "json"))
    assert len(recs) == 87 and recs[0] == {"index": 1, "marked": "[1]", "word": "1", "mark": 1}


def test_measures_csv_matches_table(pd):
    rows = list(csv.reader(io.StringIO(render("measures", "csv"))))
    assert rows[0] == ["id"] + [f"x{v}" for v in pd.columns] + ["support"]
    body = rows[1:]
    assert len(body) == 37
    for (mid, row, label), got in zip(pd.appendix_c, body):
        assert got == [str(mid)] + [str(v) for v in row] + [label]


def test_paper_style_glyphs():
    rows = list(csv.reader(io.StringIO(render("measures", "csv", paper_style=True))))
    assert set(v for r in rows[1:] for v in r[1:11]) <= {"+", "-", "·"}


@pytest.mark.parametrize("what,kw", [
    ("minimal", {}),
    ("equations", {"kind": "linear"}),
    ("equations", {"kind": "reduced"}),
    ("substitution", {}),
    ("solutions", {}),
    ("measures", {}),
])
def test_exports_are_deterministic(tmp_path, what, kw):
    for fmt in ("json", "csv"):
        a = export(what, fmt, tmp_path / f"a.{fmt}", **kw).read_bytes()
        b = export(what, fmt, tmp_path / f"b.{fmt}", **kw).read_bytes()
        assert a == b and a


def test_reduced_equations_count():
    assert len(json.loads(render("equations", "json", kind="reduced"))) == 90


def test_substitution_rows():
    rows = list(csv.reader(io.StringIO(render("substitution", "csv"))))
    assert len(rows) == 88
    x23 = next(r for r in rows if r[0] == "x23")
    assert set(x23[1:]) == {"0"}


def test_unwritable_path(tmp_path):
    target = tmp_path / "missing" / "out.json"
    with pytest.raises(ExportError, match="missing"):
        export("minimal", "json", target)


def test_unknown_export():
    with pytest.raises(ValueError):
        render("everything", "json")
    with pytest.raises(ValueError):
        render("minimal", "xml")
