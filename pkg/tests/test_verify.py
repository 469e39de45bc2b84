import json

from theta.verify import RunReport, first_mismatch, verify


def test_crash_is_a_failed_check():
    r = RunReport("demo")
    r.add("divides", 1, "derived", lambda: 1 // 0)
    r.add("adds", 2, "derived", lambda: 1 + 1)
    assert not r.passed and [c.name for c in r.failures] == ["divides"]
    assert "ZeroDivisionError" in r.lines()[0]
    assert json.loads(json.dumps(r.to_json()))["checks"][1]["passed"] is True


def test_first_mismatch():
    assert first_mismatch([1, 2, 3], [1, 5, 3]) == "first mismatched generator x2: table has 2, computed 5"
    assert first_mismatch([1], [1]) == ""
    assert "lengths" in first_mismatch([1], [1, 2])


def test_solve_suite():
    r = verify("solve")
    assert r.passed, r.lines()
    assert any(line == "quotient dim ℚ = 37: pass" for line in r.lines()), r.lines()
