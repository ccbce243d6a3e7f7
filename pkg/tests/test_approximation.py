from fractions import Fraction
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ldtkit import (
    ClosedSet,
    EgorovBudgetError,
    FunctionSequenceSpec,
    PiecewiseLinear,
    StepFunction,
    abs_diff_integral,
    continuous_approx_l1,
    dist_to_set,
    egorov_exceptional,
    lusin_compact,
    lusin_gap,
    normalize,
    ramp_error,
    ramp_error_bound,
    set_distance,
    tietze_extend,
    urysohn_function,
)
from ldtkit.random_instances import random_closed_pair

from conftest import interval_sets, step_functions


def test_dist_to_set_examples():
    a = ClosedSet.from_pairs([(0, 1)])
    assert dist_to_set(2, a) == 1
    assert dist_to_set(0.5, a) == 0
    assert dist_to_set(3, ClosedSet.from_pairs([(0, 1), (4, 5)])) == 1
    with pytest.raises(ValueError):
        dist_to_set(0, ClosedSet())


def test_set_distance_examples():
    a = ClosedSet.from_pairs([(0, 1)])
    assert set_distance(a, ClosedSet.from_pairs([(2, 3)])) == 1
    assert set_distance(a, a) == 0
    assert set_distance(a, ClosedSet.from_pairs([(1, 2)])) == 0


def test_closed_set_merges_touching_parts_and_keeps_points():
    s = ClosedSet.from_pairs([(2, 2), (0, 1), (1, 1.5)])
    assert s.parts == ((0, 1.5), (2, 2))
    with pytest.raises(ValueError):
        ClosedSet.from_pairs([(1, 0)])


def test_urysohn_examples():
    a, b = ClosedSet.from_pairs([(0, 1)]), ClosedSet.from_pairs([(2, 3)])
    f = urysohn_function(a, b)
    assert (f(0.5), f(2.5), f(1.5), f(-5)) == (0, 1, Fraction(1, 2), 1)
    with pytest.raises(ValueError):
        urysohn_function(a, ClosedSet.from_pairs([(1, 2)]))


def oracle_separator(a, b, x):
    """min(d(x, A), eps)/eps computed from scratch on endpoints."""
    eps = min(
        max(Fraction(bl) - Fraction(ah), Fraction(al) - Fraction(bh), Fraction(0))
        for al, ah in a.parts
        for bl, bh in b.parts
    )
    x = Fraction(x)
    d = min(max(Fraction(lo) - x, x - Fraction(hi), Fraction(0)) for lo, hi in a.parts)
    return min(d, eps) / eps


@pytest.mark.parametrize("seed", range(20))
def test_urysohn_matches_formula_pointwise(seed):
    rng = random.Random(seed)
    a, b = random_closed_pair(rng)
    f = urysohn_function(a, b)
    eps = set_distance(a, b)
    xs = [rng.uniform(-12, 12) for _ in range(200)] + [e for p in a.parts + b.parts for e in p]
    for x in xs:
        assert f(x) == oracle_separator(a, b, x)
    assert f.lipschitz() <= 1 / eps
    assert all(0 <= v <= 1 for v in f.values)


def test_urysohn_with_point_parts():
    a = ClosedSet.from_pairs([(0, 0), (3, 3)])
    b = ClosedSet.from_pairs([(1.5, 1.5)])
    f = urysohn_function(a, b)
    assert f(0) == 0 and f(3) == 0 and f(1.5) == 1


def test_tietze_examples():
    a = ClosedSet.from_pairs([(0, 1), (2, 3)])
    f = PiecewiseLinear((1, 2), (0, 1))  # 0 on [0, 1], 1 on [2, 3]
    g = tietze_extend(a, f, 1)
    assert g(1.5) == Fraction(1, 2)
    assert g(-4) == 0 and g(10) == 1
    assert max(abs(v) for v in g.values) == 1
    with pytest.raises(ValueError):
        tietze_extend(a, f, 0.5)


@given(st.integers(0, 10**6))
def test_tietze_agrees_and_respects_bound(seed):
    rng = random.Random(seed)
    a, _ = random_closed_pair(rng)
    knots = sorted({round(rng.uniform(-11, 11), 2) for _ in range(8)})
    f = PiecewiseLinear(tuple(knots), tuple(round(rng.uniform(-3, 3), 2) for _ in knots))
    g = tietze_extend(a, f, 3)
    for lo, hi in a.parts:
        for x in [lo, hi, (lo + hi) / 2] + [k for k in f.knots if lo < k < hi]:
            assert g(x) == f(x)
    assert all(abs(v) <= 3 for v in g.values)
    for x in (rng.uniform(-15, 15) for _ in range(50)):
        assert abs(g(x)) <= 3


def test_lusin_example():
    f = StepFunction((0, 1), (1,))
    a = normalize([(-1, 2)])
    k = lusin_compact(f, a, 0.1)
    assert [(float(lo), float(hi)) for lo, hi in k.parts] == [(-1, -0.0125), (0.0125, 0.9875), (1.0125, 2)]
    assert float(lusin_gap(a, k)) == 0.05


def test_lusin_without_breakpoints_in_a():
    f = StepFunction((-10, 10), (5,))
    a = normalize([(-1, 2)])
    k = lusin_compact(f, a, 0.1)
    assert k == ClosedSet.closure(a) and lusin_gap(a, k) == 0


def test_lusin_gap_scales_with_eps():
    f = StepFunction((0, 1), (1,))
    a = normalize([(-1, 2)])
    assert lusin_gap(a, lusin_compact(f, a, 0.05)) == lusin_gap(a, lusin_compact(f, a, 0.1)) / 2


@given(step_functions(), interval_sets(), st.floats(0.001, 1))
def test_lusin_properties(f, a, eps):
    k = lusin_compact(f, a, eps)
    assert lusin_gap(a, k) < Fraction(eps)
    assert all(b not in k for b in f.breakpoints)
    assert not (k.to_interval_set() - a)


def test_ramp_example():
    f = StepFunction((0, 1), (1,))
    e_set = normalize([(-2, 3)])
    for n in (2, 3, 8, 64):
        g = continuous_approx_l1(f, n)
        assert abs_diff_integral(f, g, e_set) == Fraction(1, n)
        assert ramp_error_bound(f, n) == Fraction(1, n)
    # n = 1: ramps capped at half the jump spacing
    assert abs_diff_integral(f, continuous_approx_l1(f, 1), e_set) == Fraction(1, 2)


def test_ramp_constant_and_zero():
    assert continuous_approx_l1(StepFunction.zero(), 3) == PiecewiseLinear.constant(0)
    f = StepFunction((-10, 10), (5,))
    e_set = normalize([(-5, 5)])
    assert abs_diff_integral(f, continuous_approx_l1(f, 1), e_set) == 0


@given(step_functions(), st.integers(1, 40))
def test_ramp_error_formula_and_monotonicity(f, n):
    w = f.support_window()
    e_set = normalize([(w.lo - 1, w.hi + 1)])
    e1 = abs_diff_integral(f, continuous_approx_l1(f, n), e_set)
    e2 = abs_diff_integral(f, continuous_approx_l1(f, 2 * n), e_set)
    assert e1 == ramp_error(f, n)
    assert e1 <= ramp_error_bound(f, n)
    assert e2 <= e1


def test_approximant_is_continuous():
    f = StepFunction((0, 0.25, 1), (3, -1))
    g = continuous_approx_l1(f, 2)
    for x in [0, 0.25, 1]:
        assert g(x - Fraction(1, 10**12)) - g(x + Fraction(1, 10**12)) < Fraction(1, 10**9)


def test_egorov_power_example():
    spec = FunctionSequenceSpec("power", normalize([(0, 1)]))
    r = egorov_exceptional(spec, 0.1)
    assert r.measure < Fraction(1, 10)
    # exceptional set hugs the non-convergence point 1
    assert r.exceptional.lo > 0.9 and r.exceptional.hi == 1
    for k, n in r.n_of_k.items():
        # independent closed form: sup of x^n on [0, t] is t^n
        t = float(r.exceptional.lo)
        assert abs(r.sup_at_n[k] - t**n) <= 1e-12
        assert r.sup_at_n[k] <= 1 / k
    assert not r.truncated


def test_egorov_eps_halving_shrinks_towards_one():
    spec = FunctionSequenceSpec("power", normalize([(0, 1)]))
    big, small = egorov_exceptional(spec, 0.1), egorov_exceptional(spec, 0.05)
    assert small.measure < big.measure
    assert small.exceptional.lo >= big.exceptional.lo


def test_egorov_constant_sequence_has_empty_exceptional_set():
    g = StepFunction((0, 1), (2,))
    spec = FunctionSequenceSpec("steps", normalize([(0, 1)]), sequence=(g,) * 5, limit=g)
    r = egorov_exceptional(spec, 0.1, j_max=5)
    assert r.exceptional == normalize([]) and r.uniform_ok()


def test_egorov_shifted_ramp():
    spec = FunctionSequenceSpec("shifted-ramp", normalize([(0, 1)]), params={"center": 0.5})
    r = egorov_exceptional(spec, 0.01, levels=6)
    assert r.measure < Fraction(1, 100)
    assert r.uniform_ok()
    assert 0.5 in r.exceptional


def test_egorov_budget_failure_is_reported():
    spec = FunctionSequenceSpec("power", normalize([(0, 1)]))
    with pytest.raises(EgorovBudgetError) as info:
        egorov_exceptional(spec, 0.1, j_max=10)
    assert info.value.level >= 2


def test_egorov_non_monotone_steps_sequence():
    # bumps that wander over [0, 1) and shrink: f_j = 1 on a piece of width 1/j
    seq = tuple(StepFunction(((j % 3) / 3, (j % 3) / 3 + 1 / (j + 1)), (1,)) for j in range(1, 60))
    spec = FunctionSequenceSpec("steps", normalize([(0, 1)]), sequence=seq, tail_monotone=False)
    r = egorov_exceptional(spec, 0.5, j_max=59, levels=3)
    assert r.measure < 0.5 and r.uniform_ok()
