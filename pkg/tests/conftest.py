import os
import random

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ecreconf.ncl import random_machine

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def ncl_machines(max_edges: int = 12):
    """Random AND/OR machines with every vertex of degree three."""
    return st.integers(0, 2**32 - 1).map(lambda seed: random_machine(random.Random(seed), max_edges))


# -- acceptance summary ------------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
