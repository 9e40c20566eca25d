import pytest
from hypothesis import strategies as st

from skew16 import params
from skew16.configuration import build_configuration

EXAMPLE_LAMBDA = 18.0
EXAMPLE_Q0 = 0.4168
EXAMPLE_Q1 = 0.1713


@pytest.fixture(scope="session")
def example_config():
    return build_configuration(EXAMPLE_LAMBDA, EXAMPLE_Q0, EXAMPLE_Q1, "plus")


@pytest.fixture(scope="session")
def example_triples():
    even, _ = params.solve_triple(EXAMPLE_LAMBDA, EXAMPLE_Q0, "plus", "even")
    odd, _ = params.solve_triple(EXAMPLE_LAMBDA, EXAMPLE_Q1, "plus", "odd")
    return even, odd


@st.composite
def admissible(draw, lam_min=9.01, lam_max=100.0):
    """(lambda, q0) with q0 well inside the open admissible interval."""
    lam = draw(st.floats(min_value=lam_min, max_value=lam_max))
    frac = draw(st.floats(min_value=0.001, max_value=0.999))
    iv = params.admissible_interval(lam)
    return lam, iv.lo + frac * iv.width

