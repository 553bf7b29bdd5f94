import json

import pytest

from gsk.errors import DomainError, InvalidSampleCountError
from gsk.report import Check, Report
from gsk.verify import INVARIANTS, SUITES, run_verify


def test_report_overall_flag():
    r = Report("x", 1, [Check("a", 0.0, 1e-9), Check("b", 2e-9, 1e-9)])
    assert not r.passed
    assert json.loads(r.to_json())["checks"][1] == {"name": "b", "defect": 2e-9, "tol": 1e-9, "pass": False}
    assert "FAIL" in r.table()
    assert Report("x", 1, [Check("a", 0.0, 0.0)]).passed


@pytest.mark.parametrize("suite", [s for s in SUITES if s != "transforms"])
def test_suites_pass_and_are_seeded(suite):
    a, b = run_verify(suite, 3, 30), run_verify(suite, 3, 30)
    assert a.passed, a.table()
    assert [c.name for c in a.checks] == [f"{suite}.{n}" for n in INVARIANTS[suite]]
    assert a.as_dict() == b.as_dict()


def test_bad_arguments():
    with pytest.raises(DomainError):
        run_verify("bogus")
    with pytest.raises(InvalidSampleCountError):
        run_verify("groups", 0, 0)
