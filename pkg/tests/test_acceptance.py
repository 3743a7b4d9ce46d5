"""Acceptance criteria, one test each, at their stated tolerances and time limits.

Each test prints a single PASS/FAIL line; the lines are repeated in the
"acceptance criteria" section of the pytest summary.
"""
import pytest

from flowroots import acceptance

import conftest


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number):
    c = acceptance.CRITERIA[number]()
    line = c.line()
    conftest.ACCEPTANCE_LINES.append(line)
    print(line)
    assert c.passed, line
    assert c.in_time, line
