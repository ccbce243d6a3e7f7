"""Ball averages, Lebesgue points and limits along shrinking balls.

The limit ``r -> 0+`` is replaced by a finite geometric
:class:`RadiusSchedule`.  Step and piecewise-linear functions are exactly
constant (resp. affine) on small enough balls, so the quantities below
stabilize after finitely many radii; the detectors still answer
"undecided" when a function has not stabilized within the schedule.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Mapping, Union

from .functions import PiecewiseAffine, PiecewiseLinear, StepFunction, _abs_trapezoid, as_affine
from .intervals import Interval, IntervalSet, exact, normalize

__all__ = [
    "RadiusSchedule",
    "LebesgueStatus",
    "LebesguePointResult",
    "PointModified",
    "ScanReport",
    "iavg",
    "davg",
    "is_lebesgue_pt",
    "lime_sup",
    "lime_inf",
    "punctured_sup",
    "punctured_inf",
    "non_lebesgue_scan",
    "grid",
]


@dataclass(frozen=True)
class RadiusSchedule:
    """Radii ``r0 * factor**i`` for ``i < steps``, plus a stabilization tolerance."""

    r0: Real = 1
    factor: Real = Fraction(1, 2)
    steps: int = 24
    tol: float = 1e-9

    def __post_init__(self):
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        if not 0 < self.factor < 1:
            raise ValueError("factor must lie in (0, 1)")
        if self.steps < 4:
            raise ValueError("a schedule needs at least 4 steps")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    @property
    def radii(self) -> list[Fraction]:
        r0, q = exact(self.r0), exact(self.factor)
        return [r0 * q**i for i in range(self.steps)]

    @property
    def tail_length(self) -> int:
        return math.ceil(self.steps / 4)

    def tail(self) -> list[Fraction]:
        return self.radii[-self.tail_length:]

    def refined(self, factor: int = 2) -> RadiusSchedule:
        """Same schedule with the tolerance divided by ``factor``."""
        return RadiusSchedule(self.r0, self.factor, self.steps, self.tol / factor)


DEFAULT_SCHEDULE = RadiusSchedule()


def _abs_dev_integral(af: PiecewiseAffine, c: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return sum(
        (_abs_trapezoid(a, b, ya - c, yb - c) for a, b, ya, yb in af.cells(lo, hi)),
        Fraction(0),
    )


def iavg(f: StepFunction | PiecewiseLinear, a: IntervalSet) -> Fraction:
    """Average of ``|f|`` over ``a``; 0 when ``a`` is null."""
    m = a.measure()
    if m == 0:
        return Fraction(0)
    return as_affine(f).abs_integral(a) / m


def davg(f: StepFunction | PiecewiseLinear, x: Real, r: Real) -> Fraction:
    """Average of ``|f(y) - f(x)|`` over ``y`` in ``B(x, r)``."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    af = as_affine(f)
    x, r = exact(x), exact(r)
    return _abs_dev_integral(af, af(x), x - r, x + r) / (2 * r)


class LebesgueStatus(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class LebesguePointResult:
    status: LebesgueStatus
    trace: list[tuple[Fraction, Fraction]]

    def __bool__(self) -> bool:
        return self.status is LebesgueStatus.TRUE


def _classify_tail(values: list[Fraction], tol: float) -> LebesgueStatus:
    if all(v < tol for v in values) and all(
        b <= a + 2 * tol for a, b in zip(values, values[1:])
    ):
        return LebesgueStatus.TRUE
    if all(v >= tol for v in values):
        return LebesgueStatus.FALSE
    return LebesgueStatus.UNDECIDED


def is_lebesgue_pt(
    f: StepFunction | PiecewiseLinear,
    x: Real,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
    full_trace: bool = True,
) -> LebesguePointResult:
    """Three-valued Lebesgue point test along ``sched``.

    TRUE when the tail averages are all below ``sched.tol`` (and do not
    grow by more than ``2 * tol``), FALSE when they all stay at or above
    ``tol``, UNDECIDED otherwise.  With ``full_trace=False`` only the tail
    radii are evaluated and traced.
    """
    radii = sched.radii if full_trace else sched.tail()
    trace = [(r, davg(f, x, r)) for r in radii]
    tail = [d for _, d in trace[-sched.tail_length:]]
    return LebesguePointResult(_classify_tail(tail, sched.tol), trace)


@dataclass(frozen=True)
class PointModified:
    """``base`` with its values replaced at finitely many points.

    Such modifications are invisible to integrals but matter for
    pointwise values; the punctured-ball limits ignore the value at the
    limit point itself.
    """

    base: Union[StepFunction, PiecewiseLinear]
    points: Mapping[Real, Real] = field(default_factory=dict)

    def __call__(self, x: Real):
        for p, v in self.points.items():
            if p == x:
                return v
        return self.base(x)

    @property
    def affine(self) -> PiecewiseAffine:
        return as_affine(self.base)


def _extremum(f, a: Real, r: Real, pick) -> Fraction:
    af = as_affine(f)
    a, r = exact(a), exact(r)
    vals = []
    # cells give the right-continuous representative; a is excluded by
    # the open ball anyway, except through explicit point values
    for _, _, ya, yb in af.cells(a - r, a + r):
        vals += [ya, yb]
    if isinstance(f, PointModified):
        vals += [exact(v) for p, v in f.points.items() if p != a and abs(exact(p) - a) < r]
    return pick(vals)


def punctured_sup(f, a: Real, r: Real) -> Fraction:
    """``sup f`` over ``B(a, r)`` without ``a``."""
    return _extremum(f, a, r, max)


def punctured_inf(f, a: Real, r: Real) -> Fraction:
    """``inf f`` over ``B(a, r)`` without ``a``."""
    return _extremum(f, a, r, min)


def lime_sup(f, a: Real, sched: RadiusSchedule = DEFAULT_SCHEDULE) -> Fraction:
    """Limit superior of ``f`` at ``a`` along the punctured balls of ``sched``.

    The value at the last radius is returned; for step and
    piecewise-linear functions it has stabilized once the radius drops
    below the distance from ``a`` to the nearest other knot.
    """
    return punctured_sup(f, a, sched.radii[-1])


def lime_inf(f, a: Real, sched: RadiusSchedule = DEFAULT_SCHEDULE) -> Fraction:
    """Limit inferior counterpart of :func:`lime_sup`."""
    return punctured_inf(f, a, sched.radii[-1])


def grid(window: Interval, step: Real) -> list[Fraction]:
    """Points ``lo + i*step`` of ``[lo, hi]``, exact."""
    if not step > 0:
        raise ValueError("grid step must be positive")
    lo, hi, h = exact(window.lo), exact(window.hi), exact(step)
    count = int((hi - lo) / h)
    return [lo + i * h for i in range(count + 1)]


@dataclass(frozen=True)
class ScanReport:
    grid_step: Fraction
    points: int
    flagged_points: list[Fraction]
    flagged_set: IntervalSet

    @property
    def measure(self) -> Fraction:
        return self.flagged_set.measure()


def non_lebesgue_scan(
    f: StepFunction,
    grid_step: Real,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
    window: Interval | None = None,
) -> ScanReport:
    """Grid estimate of the set of non-Lebesgue points of ``f``.

    Every grid point that :func:`is_lebesgue_pt` does not confirm is
    flagged, and the flagged set is the union of the half-open
    ``grid_step``-neighbourhoods of those points.
    """
    h = exact(grid_step)
    if not h > 0:
        raise ValueError("grid step must be positive")
    if window is None:
        window = f.support_window()
    if window is None:
        return ScanReport(h, 0, [], IntervalSet.empty())
    pts = grid(window, h)
    flagged = [x for x in pts if is_lebesgue_pt(f, x, sched, full_trace=False).status is not LebesgueStatus.TRUE]
    return ScanReport(h, len(pts), flagged, normalize((x - h, x + h) for x in flagged))
