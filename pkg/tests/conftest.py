import os
import sys

from hypothesis import HealthCheck, settings

settings.register_profile("conelab", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "conelab"))

# the catalog generator lives outside the package; tests import it directly
sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "tools"))

# lines recorded by test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
