from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None)
settings.load_profile("default")

from ldtkit import IntervalSet, StepFunction, normalize

coords = st.integers(-400, 400).map(lambda k: k / 16)


@st.composite
def interval_sets(draw, max_parts=6):
    pairs = draw(st.lists(st.tuples(coords, coords), max_size=max_parts))
    return normalize((min(a, b), max(a, b)) for a, b in pairs)


@st.composite
def step_functions(draw, max_pieces=8):
    bps = draw(st.lists(coords, min_size=2, max_size=max_pieces + 1, unique=True))
    bps.sort()
    vals = draw(st.lists(st.integers(-40, 40).map(lambda k: k / 4), min_size=len(bps) - 1, max_size=len(bps) - 1))
    return StepFunction(tuple(bps), tuple(vals))


@pytest.fixture
def unit_step():
    return StepFunction((0, 1), (1,))


def midpoint_quadrature(fn, lo, hi, n=20000):
    """Plain midpoint rule, used as an independent numerical oracle."""
    h = (hi - lo) / n
    return sum(abs(fn(lo + (i + 0.5) * h)) for i in range(n)) * h


__all__ = ["coords", "interval_sets", "step_functions", "midpoint_quadrature", "Fraction", "IntervalSet"]
