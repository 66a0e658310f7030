from __future__ import annotations

import os
import re

from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))

# acceptance criterion number -> (passed, description)
_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    if report.when == "call" or report.failed:
        title = dict(report.user_properties).get("criterion_title", report.nodeid)
        ACCEPTANCE_RESULTS[int(match.group(1))] = (report.passed, title)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        passed, title = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {title}")
