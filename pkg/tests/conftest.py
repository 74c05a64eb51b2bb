from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from kmodal.core import GenericPointSet, Point, from_sequence

settings.register_profile("kmodal", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("kmodal")


@st.composite
def point_sets(draw, min_n=0, max_n=10):
    """Generic point sets on small integer grids, possibly with negative or rational entries."""
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    scale = draw(st.sampled_from([1, 3, Fraction(1, 7)]))
    shift = draw(st.integers(-5, 5))
    return GenericPointSet(Point(i * scale + shift, v) for i, v in enumerate(perm))


@pytest.fixture
def zigzag():
    return from_sequence([2, 4, 1, 3])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
