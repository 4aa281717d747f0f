from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from katd.rel import FiniteRelation, StateSet, rel_model

settings.register_profile(
    "katd", derandomize=True, max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("katd")


def relations(n):
    return st.integers(0, (1 << (n * n)) - 1).map(lambda k: FiniteRelation.from_index(n, k))


def state_sets(n):
    return st.integers(0, (1 << n) - 1).map(lambda k: StateSet(n, k))


@st.composite
def sized_relations(draw, min_n=1, max_n=5, count=1):
    n = draw(st.integers(min_n, max_n))
    rels = [draw(relations(n)) for _ in range(count)]
    return rels[0] if count == 1 else tuple(rels)


@pytest.fixture
def rel3():
    return rel_model(3)


PEAK_SYSTEM = "states: 1 2 3 4\na: 2 -> 3\na: 3 -> 4\nb: 2 -> 1\nb: 3 -> 2\n"
LOOP_WITH_EXIT = "states: A B\na: A -> A\na: A -> B\n"


@pytest.fixture
def ars_file(tmp_path):
    def write(text, name="sys.ars"):
        path = Path(tmp_path) / name
        path.write_text(text)
        return str(path)

    return write


# filled by the acceptance tests, echoed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
