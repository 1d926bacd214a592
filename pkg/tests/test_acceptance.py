"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Also runnable directly: ``python tests/test_acceptance.py``.
"""

import sys

import pytest

from hyperopic.acceptance import CHECKS, run_all, run_check


@pytest.mark.parametrize("number", [num for num, _, _ in CHECKS],
                         ids=[f"{num:02d}-{title.replace(' ', '_')}" for num, title, _ in CHECKS])
def test_criterion(number, capsys):
    res = run_check(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail


if __name__ == "__main__":
    results = run_all()
    sys.exit(0 if all(r.passed for r in results) else 1)
