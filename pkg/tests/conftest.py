import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from artin import algebra as ab

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("artin", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("artin")


@pytest.fixture(scope="session")
def f2():
    return ab.field_algebra(2)


@pytest.fixture(scope="session")
def dual3():
    """F_3[x]/x^2."""
    return ab.truncated_polynomial(3, 2)


@pytest.fixture(scope="session")
def cubic2():
    """F_2[x]/x^3."""
    return ab.truncated_polynomial(2, 3)


@pytest.fixture(scope="session")
def a2():
    return ab.linear_a2(3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    RESULTS = getattr(mod, "RESULTS", None)
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        ok, note = RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")
