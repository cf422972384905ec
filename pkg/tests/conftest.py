import itertools

import pytest
from hypothesis import strategies as st

from bdodometer.mixedradix import CantorPoint, Extension, RadixSchedule, Tail


@pytest.fixture
def s232():
    return RadixSchedule((2, 3, 2))


@pytest.fixture
def s23():
    return RadixSchedule((2, 3))


def brute_force_words(schedule, k):
    """Every word of K_k with its value, by direct enumeration."""
    ranges = [range(schedule.q(j)) for j in range(k)]
    out = {}
    for word in itertools.product(*ranges):
        value, place = 0, 1
        for j, d in enumerate(word):
            value += d * place
            place *= schedule.q(j)
        out[word] = value
    return out


schedules = st.builds(
    RadixSchedule,
    st.lists(st.integers(2, 5), min_size=1, max_size=4).map(tuple),
    st.sampled_from(list(Extension)),
)


@st.composite
def cantor_points(draw, schedule=None):
    sched = draw(schedules) if schedule is None else schedule
    length = draw(st.integers(0, 8))
    digits = tuple(draw(st.integers(0, sched.q(j) - 1)) for j in range(length))
    tail = draw(st.sampled_from(list(Tail)))
    return CantorPoint(sched, digits, tail)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
