import json

import pytest

from pvloops.verify import SUITE_NAMES, Check, run_suite


def test_all_suites_pass_on_default_seed():
    checks = run_suite("all", 0)
    failed = [c.check for c in checks if not c.passed]
    assert not failed
    names = [c.check for c in checks]
    assert len(names) == len(set(names))


def test_tolerance_scale_only_touches_upper_bounds():
    base = {c.check: c for c in run_suite("pairing", 3)}
    scaled = {c.check: c for c in run_suite("pairing", 3, tol_scale=10.0)}
    for name, c in base.items():
        s = scaled[name]
        if c.bound == "upper":
            assert s.tolerance == pytest.approx(10 * c.tolerance)
        else:
            assert s.tolerance == c.tolerance


def test_unknown_suite():
    assert "all" in SUITE_NAMES
    with pytest.raises(KeyError):
        run_suite("nope")


def test_check_json_is_plain():
    c = Check("x", float("nan"), 1.0, False, 5)
    doc = json.loads(json.dumps(c.to_json()))
    assert doc == {"check": "x", "max_error": "nan", "tolerance": 1.0, "pass": False, "seed": 5, "bound": "upper"}
