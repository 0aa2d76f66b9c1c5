from fractions import Fraction

import pytest
from hypothesis import strategies as st

from compspec.polycore import Poly


def small_fractions(max_num: int = 5, max_den: int = 4):
    return st.builds(
        Fraction,
        st.integers(-max_num * max_den, max_num * max_den),
        st.integers(1, max_den),
    )


def polys(max_degree: int = 3, min_degree: int = 0, coeff=None):
    coeff = coeff or small_fractions()

    def build(cs):
        return Poly(cs)

    return (
        st.lists(coeff, min_size=min_degree + 1, max_size=max_degree + 1)
        .map(build)
        .filter(lambda p: p.degree >= min_degree)
    )


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240611)


# one summary line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
