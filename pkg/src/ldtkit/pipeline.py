"""End-to-end Lebesgue differentiation run on a step function.

For each ``k`` the function is cut down to ``f_k = f * 1_{B(0, 2(k+1))}``
and approximated in L1 by continuous ramps ``g_n``.  The set where the
limsup of the ball deviation exceeds ``a`` is contained in

    {|f_k - g_n| >= a/2}  union  {M(f_k - g_n) > a/2},

whose measure is at most ``(2/a + 6/a) * ||f_k - g_n||_1`` by Markov's
inequality and the maximal inequality.  The run reports those bounds for
``n = 1..n_approx`` next to the measure flagged by a direct grid scan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Real

from .approximation import continuous_approx_l1
from .averaging import DEFAULT_SCHEDULE, RadiusSchedule, non_lebesgue_scan
from .functions import StepFunction, abs_diff_integral, restrict_to_ball
from .intervals import Interval, IntervalSet, exact

__all__ = ["LdtReport", "ldt_bounded_check", "ldt_full_scan"]


@dataclass(frozen=True)
class LdtReport:
    k: int
    a: Fraction
    approximant_count: int
    l1_errors: list[Fraction]
    markov_bounds: list[Fraction]
    maximal_bounds: list[Fraction]
    flagged_measure: Fraction
    grid_slack: Fraction
    window_measure: Fraction

    @property
    def combined_bounds(self) -> list[Fraction]:
        return [m + h for m, h in zip(self.markov_bounds, self.maximal_bounds)]

    @property
    def consistent(self) -> bool:
        return all(self.flagged_measure <= b + self.grid_slack for b in self.combined_bounds)

    @property
    def monotone(self) -> bool:
        b = self.combined_bounds
        return all(y <= x for x, y in zip(b, b[1:]))


def ldt_bounded_check(
    f: StepFunction,
    k: int,
    a: Real,
    n_approx: int,
    grid_step: Real,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
) -> LdtReport:
    """Proof-skeleton bounds for ``f_k`` against a direct non-Lebesgue scan."""
    if not a > 0:
        raise ValueError("a must be positive")
    if n_approx < 1:
        raise ValueError("n_approx must be at least 1")
    a = exact(a)
    radius = 2 * (k + 1)
    ball = IntervalSet((Interval(-radius, radius),))
    fk = restrict_to_ball(f, k)
    # ramps reach at most one unit past a breakpoint, so this window
    # carries the whole L1 norm of f_k - g_n
    reach = IntervalSet((Interval(-radius - 1, radius + 1),))
    errors, markov, maximal = [], [], []
    for n in range(1, n_approx + 1):
        e = abs_diff_integral(fk, continuous_approx_l1(fk, n), reach)
        errors.append(e)
        markov.append(2 * e / a)
        maximal.append(3 * e / (a / 2))
    scan = non_lebesgue_scan(fk, grid_step, sched)
    flagged = scan.flagged_set & ball
    # each breakpoint can flag a 2*grid_step neighbourhood; doubled for safety
    slack = 4 * exact(grid_step) * len(fk.breakpoints)
    return LdtReport(k, a, n_approx, errors, markov, maximal, flagged.measure(), slack, ball.measure())


def ldt_full_scan(
    f: StepFunction,
    k_max: int,
    a: Real,
    n_approx: int,
    grid_step: Real,
    sched: RadiusSchedule = DEFAULT_SCHEDULE,
) -> list[LdtReport]:
    """:func:`ldt_bounded_check` for ``k = 0..k_max``, in order."""
    return [ldt_bounded_check(f, k, a, n_approx, grid_step, sched) for k in range(k_max + 1)]


def overall_flagged(reports: list[LdtReport]) -> Fraction:
    """Largest flagged measure over the runs (the balls are nested)."""
    return max((r.flagged_measure for r in reports), default=Fraction(0))
