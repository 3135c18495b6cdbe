"""Shared fixtures, hypothesis profiles and the acceptance summary."""
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_CRITERIA: dict[str, tuple[str, str]] = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    label = marker.args[0]
    outcome = "PASS" if call.excinfo is None else "FAIL"
    detail = "" if call.excinfo is None else str(call.excinfo.value).splitlines()[0]
    _CRITERIA[label] = (outcome, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_CRITERIA):
        outcome, detail = _CRITERIA[label]
        line = f"{outcome} {label}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
