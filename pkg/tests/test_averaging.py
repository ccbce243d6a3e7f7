from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ldtkit import (
    Interval,
    IntervalSet,
    LebesgueStatus,
    PiecewiseLinear,
    PointModified,
    RadiusSchedule,
    StepFunction,
    davg,
    iavg,
    is_lebesgue_pt,
    lime_inf,
    lime_sup,
    non_lebesgue_scan,
    normalize,
)
from ldtkit.averaging import grid

from conftest import step_functions

grid_points = st.integers(-400, 400).map(lambda k: Fraction(k, 16))
grid_radii = st.integers(1, 64).map(lambda k: Fraction(k, 16))


def riemann_davg(f, x, r):
    # x and r sit on the 1/16 grid like every breakpoint, so f is constant
    # on each 1/64 cell and the midpoint sum is exact
    h = Fraction(1, 64)
    fx = Fraction(f(float(x)))
    cells = int(2 * r / h)
    total = sum(abs(Fraction(f(float(x - r + (i + Fraction(1, 2)) * h))) - fx) for i in range(cells))
    return total * h / (2 * r)


def test_iavg_examples():
    f = StepFunction((0, 1), (1,))
    assert iavg(f, normalize([(0, 2)])) == Fraction(1, 2)
    assert iavg(StepFunction((0, 3), (-2,)), normalize([(0, 1)])) == 2
    assert iavg(f, IntervalSet.empty()) == 0


def test_davg_examples():
    f = StepFunction((0, 1), (1,))
    assert davg(f, 0.5, 0.1) == 0
    assert davg(f, 0, 0.1) == Fraction(1, 2)
    assert davg(f, 1, 0.25) == Fraction(1, 2)
    with pytest.raises(ValueError):
        davg(f, 0, 0)


def test_davg_on_linear_function():
    # |y - x| averaged over B(x, r) is r/2
    g = PiecewiseLinear((-10, 10), (-10, 10))
    assert davg(g, 0, Fraction(1, 4)) == Fraction(1, 8)


@given(step_functions(), grid_points, grid_radii)
def test_davg_matches_riemann_sum(f, x, r):
    assert davg(f, x, r) == riemann_davg(f, x, r)


@given(step_functions(), grid_points, grid_radii)
def test_davg_bounded_by_iavg_plus_value(f, x, r):
    ball = normalize([(x - r, x + r)])
    assert davg(f, x, r) <= iavg(f, ball) + abs(Fraction(f(float(x))))


def test_lebesgue_point_examples():
    f = StepFunction((0, 1), (1,))
    assert is_lebesgue_pt(f, 0.5).status is LebesgueStatus.TRUE
    assert is_lebesgue_pt(f, 0).status is LebesgueStatus.FALSE
    assert is_lebesgue_pt(f, 1).status is LebesgueStatus.FALSE
    assert is_lebesgue_pt(f, 5).status is LebesgueStatus.TRUE


def test_lebesgue_point_undecided_when_jump_sits_inside_the_tail():
    # davg(1_[d,1), 0, r) = (r - d)/(2r) for r > d and 0 below; with d = 2^-20
    # the tail radii 2^-18..2^-23 see both regimes
    f = StepFunction((Fraction(1, 2**20), 1), (1,))
    r = is_lebesgue_pt(f, 0)
    assert r.status is LebesgueStatus.UNDECIDED
    assert r.trace[18][1] == Fraction(3, 8) and r.trace[20][1] == 0
    # a schedule that stops before reaching d sees a genuine jump
    assert is_lebesgue_pt(f, 0, RadiusSchedule(steps=12)).status is LebesgueStatus.FALSE


def test_lebesgue_trace_and_tail_only():
    f = StepFunction((0, 1), (1,))
    full = is_lebesgue_pt(f, 0.5)
    assert len(full.trace) == 24 and [r for r, _ in full.trace] == RadiusSchedule().radii
    tail = is_lebesgue_pt(f, 0.5, full_trace=False)
    assert len(tail.trace) == RadiusSchedule().tail_length
    assert tail.status is full.status


def test_radius_schedule_validation():
    with pytest.raises(ValueError):
        RadiusSchedule(factor=1)
    with pytest.raises(ValueError):
        RadiusSchedule(r0=0)
    with pytest.raises(ValueError):
        RadiusSchedule(steps=2)
    assert RadiusSchedule().refined().tol == 5e-10


@given(step_functions())
def test_off_breakpoint_points_are_lebesgue_points(f):
    bps = f.breakpoints
    for a, b in zip(bps, bps[1:]):
        assert is_lebesgue_pt(f, (a + b) / 2, full_trace=False).status is LebesgueStatus.TRUE
    for b in bps:
        assert is_lebesgue_pt(f, b, full_trace=False).status is not LebesgueStatus.TRUE or f.left_limit(b) == f(b)


def test_lime_examples():
    f = StepFunction((0, 1), (1,))
    assert lime_sup(f, 0) == 1 and lime_inf(f, 0) == 0
    assert lime_sup(f, 0.5) == 1 and lime_inf(f, 0.5) == 1
    spike = PointModified(StepFunction.zero(), {0: 5})
    assert lime_sup(spike, 0) == 0
    assert lime_sup(PointModified(f, {0.5: 7}), 0.5) == 1


def test_lime_sees_nearby_point_values():
    g = PointModified(StepFunction.zero(), {Fraction(1, 2**30): 3})
    assert lime_sup(g, 0) == 3  # inside every scheduled ball
    assert lime_sup(g, 0, RadiusSchedule(steps=8)) == 3


@given(step_functions(), grid_points)
def test_lime_duality(f, a):
    assert lime_sup(f.scale(-1), a) == -lime_inf(f, a)
    assert lime_inf(f, a) <= lime_sup(f, a)


@given(step_functions(), grid_points)
def test_lime_matches_one_sided_values(f, a):
    # for a step function the punctured limits are max/min of the two sides
    sides = [f.left_limit(a), Fraction(f(float(a)))]
    assert lime_sup(f, a) == max(sides) and lime_inf(f, a) == min(sides)


def test_grid_is_exact():
    pts = grid(Interval(0, 1), Fraction(1, 4))
    assert pts == [0, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), 1]


def test_scan_unit_step():
    f = StepFunction((0, 1), (1,))
    r = non_lebesgue_scan(f, Fraction(1, 100))
    assert r.flagged_points == [0, 1]
    assert r.measure == Fraction(4, 100)


@settings(max_examples=20)
@given(step_functions(max_pieces=4))
def test_scan_bound_and_refinement(f):
    h = Fraction(1, 16)
    r = non_lebesgue_scan(f, h)
    # grid points are spaced far beyond the tail radii, so only breakpoints are flagged
    assert set(r.flagged_points) <= {Fraction(b) for b in f.breakpoints}
    assert r.measure <= 2 * h * len(f.breakpoints)
    r2 = non_lebesgue_scan(f, h / 2)
    assert r2.measure <= r.measure
