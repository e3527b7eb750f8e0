import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from diraclogic.algebra import linear_combination
from diraclogic.config import EvalConfig
from diraclogic.operators import gaussian_state, hermite_state

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

reals = st.floats(-2.0, 2.0, allow_nan=False)
widths = st.floats(0.4, 2.0)
small = st.floats(-1.5, 1.5, allow_nan=False)
complexes = st.builds(complex, small, small)


@st.composite
def gaussians(draw):
    return gaussian_state(draw(reals), draw(widths), draw(reals))


@st.composite
def proper_states(draw, max_terms=3):
    """Finite superpositions of Gaussians, some with a polynomial factor."""
    n = draw(st.integers(1, max_terms))
    parts = []
    for _ in range(n):
        c = draw(complexes)
        if draw(st.booleans()):
            parts.append((c, gaussian_state(draw(reals), draw(widths), draw(reals))))
        else:
            parts.append((c, hermite_state(draw(st.integers(0, 3)), draw(widths))))
    return linear_combination(parts, 1)


@pytest.fixture
def cfg():
    return EvalConfig()


def sample(state, xs):
    return state.evaluate(np.asarray(xs, dtype=float).reshape(-1, state.arity))


GRID = np.linspace(-3, 3, 13)
SQRT_PI = math.sqrt(math.pi)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.VERDICTS):
        terminalreporter.write_line(mod.VERDICTS[n])
