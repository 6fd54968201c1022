import os
import sys

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from pnmc.core import Lts  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def random_lts(draw, max_states=12, labels=("a", "b", "i"), max_out=3):
    n = draw(st.integers(1, max_states))
    triples = []
    for s in range(n):
        k = draw(st.integers(0, max_out))
        for _ in range(k):
            triples.append((s, draw(st.sampled_from(labels)), draw(st.integers(0, n - 1))))
    triples = list(dict.fromkeys(triples))
    return Lts.from_triples(n, triples)


def lts(n, *triples):
    return Lts.from_triples(n, triples)


@pytest.fixture
def chain():
    return lts(3, (0, "a", 1), (1, "b", 2))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
