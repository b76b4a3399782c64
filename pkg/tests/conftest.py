import os

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from qnlis.core import build

settings.register_profile("ci", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("fast", max_examples=40, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))

RUNNING = [3, 9, 6, 2, 8, 5, 7]

# the four LIS of the running example, as (value, position) tuples
RUNNING_LIS = {
    ((3.0, 1), (6.0, 3), (7.0, 7)),
    ((3.0, 1), (6.0, 3), (8.0, 5)),
    ((2.0, 4), (5.0, 6), (7.0, 7)),
    ((3.0, 1), (5.0, 6), (7.0, 7)),
}

digits = st.lists(st.integers(0, 9), max_size=64)
reals = st.lists(
    st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False), max_size=64
)
sequences = st.one_of(digits, reals)


def node_at(structure, position):
    for n in structure.nodes():
        if n.position == position:
            return n
    raise KeyError(position)


def items(results):
    return {r.items for r in results}


@pytest.fixture
def running():
    return build(RUNNING)


# acceptance verdicts, printed once at the end of the run
VERDICTS = []


def verdict(number, title, ok, detail=""):
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}" + (f" ({detail})" if detail else "")
    VERDICTS.append(line)
    print(line)
    assert ok, line


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
