"""Indefinite integrals, derivative probes and densities.

Checks of the first fundamental theorem of calculus for Lebesgue
integrals and of the density theorem, on step functions and finite
interval unions.  The primitive of a step function is piecewise affine,
so difference quotients are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

from .averaging import (
    DEFAULT_SCHEDULE,
    LebesgueStatus,
    RadiusSchedule,
    grid,
    is_lebesgue_pt,
)
from .functions import StepFunction
from .intervals import Interval, IntervalSet, exact, normalize

__all__ = [
    "primitive",
    "DerivativeProbe",
    "FtcReport",
    "ftc1_check",
    "density",
    "density_trace",
    "DensityReport",
    "density_check",
]


def primitive(f: StepFunction, a: Real | None, x: Real) -> Fraction:
    """``F(x) = integral of f over (a, x]``; ``a=None`` or ``-inf`` means from minus infinity.

    Returns 0 when ``x <= a``.
    """
    x = exact(x)
    if a is None or (isinstance(a, float) and math.isinf(a) and a < 0):
        if not f.breakpoints:
            return Fraction(0)
        lo = min(exact(f.breakpoints[0]), x)
    else:
        lo = exact(a)
    if x <= lo:
        return Fraction(0)
    return f.affine.integral(IntervalSet((Interval(lo, x),)))


@dataclass(frozen=True)
class DerivativeProbe:
    """Point ``x`` and strictly decreasing step sizes ``h``."""

    x: Real
    h_schedule: tuple[Real, ...]
    two_sided: bool = True

    def __post_init__(self):
        hs = tuple(self.h_schedule)
        object.__setattr__(self, "h_schedule", hs)
        if not hs:
            raise ValueError("need at least one step size")
        if any(not h > 0 for h in hs):
            raise ValueError("step sizes must be positive")
        if any(not b < a for a, b in zip(hs, hs[1:])):
            raise ValueError("step sizes must be strictly decreasing")

    @classmethod
    def geometric(cls, x: Real, h0: Real = 1, factor: Real = Fraction(1, 2), steps: int = 24,
                  two_sided: bool = True) -> DerivativeProbe:
        h0, q = exact(h0), exact(factor)
        return cls(x, tuple(h0 * q**i for i in range(steps)), two_sided)


@dataclass(frozen=True)
class FtcReport:
    x: Fraction
    derivative_estimate: Fraction
    f_at_x: Fraction
    lebesgue_pt_status: LebesgueStatus
    trace: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    tol: float = 1e-9

    @property
    def skipped(self) -> bool:
        return self.lebesgue_pt_status is not LebesgueStatus.TRUE

    @property
    def error(self) -> Fraction:
        return abs(self.derivative_estimate - self.f_at_x)

    @property
    def passed(self) -> bool:
        # the theorem says nothing off Lebesgue points
        return self.skipped or self.error <= self.tol


def ftc1_check(
    f: StepFunction,
    a: Real | None,
    probe: DerivativeProbe,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
    tol: float | None = None,
) -> FtcReport:
    """Difference quotients of the primitive at ``probe.x`` versus ``f(probe.x)``."""
    x = exact(probe.x)
    if a is not None and not (isinstance(a, float) and math.isinf(a)) and not exact(a) < x:
        raise ValueError("the lower bound must lie below x")
    trace = []
    fx = primitive(f, a, x)
    for h in probe.h_schedule:
        h = exact(h)
        if probe.two_sided:
            q = (primitive(f, a, x + h) - primitive(f, a, x - h)) / (2 * h)
        else:
            q = (primitive(f, a, x + h) - fx) / h
        trace.append((h, q))
    status = is_lebesgue_pt(f, x, sched, full_trace=False).status
    return FtcReport(
        x, trace[-1][1], exact(f(x)), status, trace, sched.tol if tol is None else tol
    )


def density_trace(a: IntervalSet, x: Real, sched: RadiusSchedule = DEFAULT_SCHEDULE) -> list[tuple[Fraction, Fraction]]:
    """``(r, measure(a & B(x, r)) / (2r))`` along the schedule."""
    x = exact(x)
    out = []
    for r in sched.radii:
        ball = IntervalSet((Interval(x - r, x + r),))
        out.append((r, (a & ball).measure() / (2 * r)))
    return out


def density(a: IntervalSet, x: Real, sched: RadiusSchedule = DEFAULT_SCHEDULE) -> Fraction:
    """Density of ``a`` at ``x`` at the smallest radius of the schedule."""
    return density_trace(a, x, sched)[-1][1]


@dataclass(frozen=True)
class DensityReport:
    grid_step: Fraction
    points: int
    ones: int
    zeros: int
    exceptional_points: list[Fraction]
    exceptional_set: IntervalSet
    endpoint_count: int

    @property
    def exceptional_measure(self) -> Fraction:
        return self.exceptional_set.measure()

    @property
    def bound(self) -> Fraction:
        return 4 * self.grid_step * self.endpoint_count

    @property
    def holds(self) -> bool:
        return self.exceptional_measure <= self.bound


def _tail_class(values: Sequence[Fraction], tol: float) -> int | None:
    if all(abs(v - 1) <= tol for v in values):
        return 1
    if all(abs(v) <= tol for v in values):
        return 0
    return None


def density_check(
    a: IntervalSet,
    grid_step: Real,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
    window: Interval | None = None,
) -> DensityReport:
    """Classify grid points by density (1, 0 or exceptional).

    A point is classified 1 or 0 only if the whole tail of its density
    trace sits within ``sched.tol`` of that value.  The exceptional set is
    the union of ``grid_step``-neighbourhoods of the unclassified points.
    The default window is the hull of ``a`` widened by one unit.
    """
    h = exact(grid_step)
    if not h > 0:
        raise ValueError("grid step must be positive")
    if window is None:
        window = Interval(-1, 1) if not a else Interval(exact(a.lo) - 1, exact(a.hi) + 1)
    tail_radii = sched.tail()
    ones = zeros = 0
    bad = []
    pts = grid(window, h)
    for x in pts:
        vals = [(a & IntervalSet((Interval(x - r, x + r),))).measure() / (2 * r) for r in tail_radii]
        cls = _tail_class(vals, sched.tol)
        if cls == 1:
            ones += 1
        elif cls == 0:
            zeros += 1
        else:
            bad.append(x)
    return DensityReport(
        h, len(pts), ones, zeros, bad, normalize((x - h, x + h) for x in bad), 2 * len(a)
    )
