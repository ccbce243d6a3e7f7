from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldtkit import (
    DerivativeProbe,
    Interval,
    IntervalSet,
    RadiusSchedule,
    StepFunction,
    density,
    density_check,
    ftc1_check,
    normalize,
    primitive,
)
from ldtkit.ftc import density_trace

from conftest import interval_sets, step_functions

grid_points = st.integers(-480, 480).map(lambda k: Fraction(k, 16))


def riemann_primitive(f, x):
    # breakpoints and x on the 1/16 grid: the 1/64 midpoint sum is exact
    h = Fraction(1, 64)
    lo = Fraction(-30)
    cells = int((x - lo) / h)
    return sum(Fraction(f(float(lo + (i + Fraction(1, 2)) * h))) for i in range(cells)) * h


def test_primitive_examples():
    f = StepFunction((0, 1), (1,))
    assert primitive(f, None, 0.5) == Fraction(1, 2)
    assert primitive(f, float("-inf"), -1) == 0
    assert primitive(f, None, 2) == 1
    assert primitive(f, 0.25, 0.75) == Fraction(1, 2)
    assert primitive(f, 3, 1) == 0


@given(step_functions(), grid_points)
def test_primitive_matches_riemann_sum(f, x):
    assert primitive(f, None, x) == riemann_primitive(f, x)


@given(step_functions(), grid_points, grid_points)
def test_primitive_is_lipschitz(f, x, y):
    assert abs(primitive(f, None, x) - primitive(f, None, y)) <= f.sup_abs() * abs(x - y)


@given(step_functions(), grid_points, grid_points)
def test_primitive_monotone_for_nonnegative(f, x, y):
    g = abs(f)
    if x <= y:
        assert primitive(g, None, x) <= primitive(g, None, y)


def test_probe_validation():
    with pytest.raises(ValueError):
        DerivativeProbe(0, ())
    with pytest.raises(ValueError):
        DerivativeProbe(0, (1, 1))
    with pytest.raises(ValueError):
        DerivativeProbe(0, (1, -1))
    p = DerivativeProbe.geometric(0, steps=3)
    assert p.h_schedule == (1, Fraction(1, 2), Fraction(1, 4))


def test_ftc_examples():
    f = StepFunction((0, 1), (1,))
    r = ftc1_check(f, None, DerivativeProbe.geometric(0.5))
    assert (r.derivative_estimate, r.f_at_x, r.passed, r.skipped) == (1, 1, True, False)
    r = ftc1_check(f, None, DerivativeProbe.geometric(2))
    assert (r.derivative_estimate, r.f_at_x, r.passed) == (0, 0, True)
    r = ftc1_check(f, None, DerivativeProbe.geometric(0))
    assert r.skipped and r.passed
    assert r.derivative_estimate == Fraction(1, 2)  # the symmetric quotient averages the two sides
    with pytest.raises(ValueError):
        ftc1_check(f, 1, DerivativeProbe.geometric(0.5))


def test_one_sided_quotient():
    f = StepFunction((0, 1), (1,))
    r = ftc1_check(f, None, DerivativeProbe.geometric(0, two_sided=False))
    assert r.derivative_estimate == 1 and r.skipped


@given(step_functions())
def test_ftc_exact_off_breakpoints(f):
    bps = [Fraction(b) for b in f.breakpoints]
    for a, b in zip(bps, bps[1:]):
        x = (a + b) / 2
        r = ftc1_check(f, None, DerivativeProbe.geometric(x))
        # the quotient is exact once h is below the distance to the nearest breakpoint
        for h, q in r.trace:
            if h < (b - a) / 2:
                assert q == Fraction(f(x))
        assert r.error == 0 and r.passed and not r.skipped


@given(step_functions())
def test_ftc_never_fails_at_breakpoints(f):
    for b in f.breakpoints:
        r = ftc1_check(f, None, DerivativeProbe.geometric(b))
        assert r.passed
        if f.left_limit(b) != f(b):
            assert r.skipped


def test_density_examples():
    a = normalize([(0, 1)])
    assert density(a, 0.5) == 1
    assert density(a, 2) == 0
    assert density(a, 0) == Fraction(1, 2)
    assert density(a, 1) == Fraction(1, 2)
    assert density(IntervalSet.empty(), 0) == 0


@given(interval_sets(), grid_points)
def test_density_values_in_unit_interval(a, x):
    for r, d in density_trace(a, x):
        assert 0 <= d <= 1


@given(interval_sets(), grid_points)
def test_density_of_complement(a, x):
    w = Interval(-40, 40)
    c = a.complement_within(w)
    assert density(a, x) + density(c, x) == 1


@given(interval_sets(), grid_points)
def test_density_matches_pointwise_membership(a, x):
    # off the boundary, the density at small radii is the indicator
    if x not in set(a.endpoints()):
        assert density(a, x) == (1 if x in a else 0)


def test_density_check_examples():
    r = density_check(IntervalSet.empty(), Fraction(1, 10))
    assert r.exceptional_points == [] and r.exceptional_measure == 0 and r.ones == 0
    a = normalize([(0, 1)])
    h = Fraction(1, 100)
    r = density_check(a, h)
    assert r.exceptional_points == [0, 1]
    assert r.exceptional_measure <= 4 * h and r.holds
    r2 = density_check(a, h / 2)
    assert r2.bound == r.bound / 2


@settings(max_examples=30)
@given(interval_sets(max_parts=4))
def test_density_check_bound(a):
    h = Fraction(1, 16)
    r = density_check(a, h)
    assert set(r.exceptional_points) <= {Fraction(e) for e in a.endpoints()}
    assert r.holds
    assert r.ones + r.zeros + len(r.exceptional_points) == r.points


def test_density_check_respects_tolerance():
    # a gap narrower than the smallest tail radius is invisible to it
    a = normalize([(0, 1), (1 + 2**-40, 2)])
    r = density_check(a, Fraction(1, 4), RadiusSchedule(steps=8))
    assert Fraction(1) not in r.exceptional_points
