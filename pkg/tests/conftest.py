import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from cauchy_dual.generators import gen_random

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

# 2x2 counterexample to the unrestricted power law, used all over the suite
T_CE = np.array([[1, 0], [1, 0]], dtype=complex)


@st.composite
def deficient_matrices(draw, max_dim=12):
    """Random complex matrix with rank strictly below min(m, n) (or zero)."""
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    rank = draw(st.integers(0, max(0, min(m, n) - 1)))
    seed = draw(st.integers(0, 2**32 - 1))
    return gen_random(m, n, rank, seed)


@st.composite
def square_dims(draw, lo=2, hi=8):
    n = draw(st.integers(lo, hi))
    rank = draw(st.integers(1, n - 1))
    return n, rank, draw(st.integers(0, 2**32 - 1))


@pytest.fixture
def T_ce():
    return T_CE.copy()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
