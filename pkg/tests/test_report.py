import csv
import io
import json
import math

from hypothesis import given, strategies as st

from antinorm.report import CSV_FIELDS, FAIL, PASS, CheckReport, Tally, Term, eq, ge, le, to_csv


def test_term_conventions():
    t = le("x", 1.0, 3.0)
    assert t.margin == 2.0 and t.scale == 5.0 and not t.violated(0)
    g = ge("y", 1.0, 3.0)
    assert g.margin == -2.0 and g.violated(1e-9)
    assert not eq("z", 1.0, 1.0 + 1e-12, 1e-9).violated(0)
    assert Term("n", math.nan, 0.0).violated(1.0)


def test_tally_keeps_first_worst_and_counts():
    tal = Tally(1e-9)
    tal.add([le("a", 0, 1)], {"trial": 0}, {"v": 0})
    tal.add([le("b", 0, 1)], {"trial": 1}, lambda: {"v": 1})
    tal.add([le("c", 2, 1)], {"trial": 2}, lambda: {"v": 2})
    assert tal.trials == 3 and tal.terms == 3 and tal.violations == 1
    assert tal.worst.label == "c" and tal.worst_key == {"trial": 2} and tal.worst_instance == {"v": 2}
    other = Tally(1e-9)
    other.add([le("d", 0, 0.5)], {"trial": 9})
    tal.merge(other)
    assert tal.trials == 4 and tal.worst.label == "c"
    rep = CheckReport.from_tally("demo", tal, [2], 1)
    assert rep.status == FAIL and rep.violations == 1


def test_report_serialization():
    tal = Tally(1e-9)
    tal.add([le("a", 0, 1)], {"n": 2, "trial": 0})
    rep = CheckReport.from_tally("demo", tal, [2, 3], 7, {"f": "sqrt"}, wall_time=1.25)
    assert rep.passed and rep.status == PASS
    d = json.loads(rep.to_json())
    assert d["worst_margin"] == 1.0 and d["bindings"] == {"f": "sqrt"}
    rows = list(csv.DictReader(io.StringIO(to_csv([rep]))))
    assert list(rows[0]) == CSV_FIELDS
    assert rows[0] == {"check_id": "demo", "dims": "2 3", "trials": "1", "pass": "pass",
                       "worst_margin": "1", "seconds": "1.250"}
    unmet = CheckReport.unmet("demo", [2], 7, 1e-9, {}, [], ["why"])
    assert not unmet.passed and unmet.trials == 0


@given(st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=1, max_size=30),
       st.floats(0, 1e-3), st.floats(0, 1e-3))
def test_larger_tolerance_never_adds_violations(pairs, tol1, extra):
    small, large = Tally(tol1), Tally(tol1 + extra)
    for i, (a, b) in enumerate(pairs):
        small.add([le("t", a, b)], {"trial": i})
        large.add([le("t", a, b)], {"trial": i})
    assert large.violations <= small.violations
