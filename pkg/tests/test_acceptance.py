"""Acceptance criteria 1-11, each with its wall-clock limit.

Run ``pytest tests/test_acceptance.py`` for one pass/fail line per criterion
in the summary, or ``python tests/test_acceptance.py`` to print them directly.
"""

import sys

import pytest

from istrkit.suite import CHECKS, PASS, run_check

# seconds allowed per criterion; the property suite has no stated limit
LIMITS = {"1": 1, "2": 120, "3": 1, "4": 300, "5": 30, "6": 600, "7": 120, "8": 120, "9": 1800, "10": 1800, "11": 120}

CRITERIA = [(k, t, fn) for k, t, fn in CHECKS if k in LIMITS]


def evaluate_criterion(key, title, fn):
    item = run_check(key, title, fn)
    secs = item.millis / 1000
    ok = item.status == PASS and secs < LIMITS[key]
    line = f"criterion {key:>2}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f} s, limit {LIMITS[key]} s)  {item.detail}"
    return ok, line, item


@pytest.mark.parametrize("key,title,fn", CRITERIA, ids=[f"criterion_{k}" for k, _, _ in CRITERIA])
def test_criterion(key, title, fn):
    from conftest import ACCEPTANCE_LINES

    ok, line, item = evaluate_criterion(key, title, fn)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert item.status == PASS, item.detail
    assert item.millis / 1000 < LIMITS[key], f"took {item.millis / 1000:.1f} s"


def test_all_criteria_present():
    assert sorted(LIMITS, key=int) == [str(i) for i in range(1, 12)]
    assert [k for k, _, _ in CRITERIA] == sorted(LIMITS, key=int)


if __name__ == "__main__":
    bad = 0
    for key, title, fn in CRITERIA:
        ok, line, _ = evaluate_criterion(key, title, fn)
        print(line, flush=True)
        bad += not ok
    sys.exit(1 if bad else 0)
