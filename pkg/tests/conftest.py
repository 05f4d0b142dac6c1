import numpy as np
import pytest
from hypothesis import strategies as st

from fuzzydist import FuzzySet
from fuzzydist.dataset import load_table1

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_subnormal=False)


def memberships(n):
    return st.lists(unit, min_size=n, max_size=n)


@st.composite
def fuzzy_pairs(draw, max_size=12):
    n = draw(st.integers(1, max_size))
    return FuzzySet(draw(memberships(n))), FuzzySet(draw(memberships(n)))


@st.composite
def fuzzy_triples(draw, max_size=12):
    n = draw(st.integers(1, max_size))
    return tuple(FuzzySet(draw(memberships(n))) for _ in range(3))


@pytest.fixture(scope="session")
def table1():
    return load_table1()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split()[0])):
        checks = results[name]
        status = "PASS" if all(ok for ok, _ in checks) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
        for ok, detail in checks:
            terminalreporter.write_line(f"        [{'ok' if ok else 'x '}] {detail}")
