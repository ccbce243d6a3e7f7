"""Finite Vitali covering and the Hardy-Littlewood maximal operator.

For a step function ``f`` the ball average ``r -> HL_max(f, x, r)`` is a
ratio of a piecewise-affine numerator and ``2r``, so its supremum over
``r`` is reached at a critical radius ``|x - b|`` (``b`` a breakpoint) or
in the limit ``r -> 0+``.  The superlevel set ``{Mf > c}`` is also
computed exactly: ``Mf(x) > c`` iff some pair ``u < x < v`` centred at
``x`` has ``H(v) > H(u)`` with ``H(t) = int_{-inf}^t |f| - c*t``, and on
each cell of the knot grid that condition carves out a convex polygon
whose projection onto ``(u + v)/2`` is an open interval.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Sequence

from .functions import PiecewiseLinear, StepFunction, as_affine, l1_norm
from .intervals import Ball, Interval, IntervalSet, exact, normalize

__all__ = [
    "vitali_finite",
    "verify_vitali",
    "VitaliCheck",
    "vitali_valid_subcollections",
    "hl_max",
    "hl_maximal",
    "hl_superlevel_set",
    "hl_window",
    "MaximalReport",
    "maximal_inequality_check",
]


def _disjoint(b: Ball, c: Ball) -> bool:
    # open balls: touching counts as disjoint
    return abs(exact(b.center) - exact(c.center)) >= exact(b.radius) + exact(c.radius)


def _covered_by_triple(b: Ball, c: Ball) -> bool:
    r3 = 3 * exact(c.radius)
    return b.lo >= exact(c.center) - r3 and b.hi <= exact(c.center) + r3


def vitali_finite(balls: Sequence[Ball]) -> list[int]:
    """Greedy disjoint subcollection whose 3-fold enlargements cover every ball.

    Balls are scanned by decreasing radius (ties: lower index first) and
    kept when disjoint from everything kept so far.  Indices are returned
    in selection order.
    """
    order = sorted(range(len(balls)), key=lambda i: (-exact(balls[i].radius), i))
    chosen: list[int] = []
    for i in order:
        if all(_disjoint(balls[i], balls[j]) for j in chosen):
            chosen.append(i)
    return chosen


@dataclass(frozen=True)
class VitaliCheck:
    disjoint: bool
    witnesses: dict[int, int | None]
    overlapping: list[tuple[int, int]] = field(default_factory=list)

    @property
    def covered(self) -> bool:
        return all(j is not None for j in self.witnesses.values())

    @property
    def ok(self) -> bool:
        return self.disjoint and self.covered

    def __bool__(self) -> bool:
        return self.ok


def verify_vitali(balls: Sequence[Ball], selected: Sequence[int]) -> VitaliCheck:
    """Check a candidate selection against the finite covering conditions.

    The selection must be pairwise disjoint, and every ball ``i`` needs a
    selected witness ``j`` that meets it, is at least as large, and whose
    3-fold enlargement contains it.
    """
    sel = list(dict.fromkeys(selected))
    for j in sel:
        if not 0 <= j < len(balls):
            raise IndexError(f"selected index {j} out of range")
    overlapping = [
        (i, j) for i, j in itertools.combinations(sel, 2) if not _disjoint(balls[i], balls[j])
    ]
    witnesses: dict[int, int | None] = {}
    for i, b in enumerate(balls):
        witnesses[i] = next(
            (
                j
                for j in sel
                if not _disjoint(b, balls[j])
                and exact(balls[j].radius) >= exact(b.radius)
                and _covered_by_triple(b, balls[j])
            ),
            None,
        )
    return VitaliCheck(not overlapping, witnesses, overlapping)


def vitali_valid_subcollections(balls: Sequence[Ball]) -> list[tuple[int, ...]]:
    """Brute force: every index subset satisfying the finite covering conditions.

    Written independently of :func:`verify_vitali` on explicit interval
    endpoints; exponential, meant for collections of a dozen balls.
    """
    ends = [(exact(b.center) - exact(b.radius), exact(b.center) + exact(b.radius)) for b in balls]
    n = len(ends)

    def meet(i, j):
        return max(ends[i][0], ends[j][0]) < min(ends[i][1], ends[j][1])

    out = []
    for mask in range(1 << n):
        idx = tuple(i for i in range(n) if mask >> i & 1)
        if any(meet(i, j) for i, j in itertools.combinations(idx, 2)):
            continue
        ok = True
        for i in range(n):
            found = False
            for j in idx:
                lo_j, hi_j = ends[j]
                w = hi_j - lo_j
                big = (lo_j - w, hi_j + w)
                if meet(i, j) and w >= ends[i][1] - ends[i][0] and big[0] <= ends[i][0] and ends[i][1] <= big[1]:
                    found = True
                    break
            if not found:
                ok = False
                break
        if ok:
            out.append(idx)
    return out


def hl_max(f: StepFunction | PiecewiseLinear, x: Real, r: Real) -> Fraction:
    """Average of ``|f|`` over the ball ``B(x, r)``."""
    if not r > 0:
        raise ValueError(f"radius must be positive, got {r}")
    x, r = exact(x), exact(r)
    return as_affine(f).abs_integral(IntervalSet((Interval(x - r, x + r),))) / (2 * r)


def hl_maximal(f: StepFunction | PiecewiseLinear, x: Real, radii: Sequence[Real] | None = None) -> Fraction:
    """``sup_{r > 0} hl_max(f, x, r)``.

    Exact for step functions.  Piecewise-linear inputs fall back to the
    maximum over ``radii`` (default: a dyadic grid from ``2**10`` down to
    ``2**-30``), a lower bound of the true supremum.
    """
    if isinstance(f, PiecewiseLinear):
        if radii is None:
            radii = [Fraction(2) ** e for e in range(10, -31, -1)]
        return max(hl_max(f, x, r) for r in radii)
    x = exact(x)
    if not f.breakpoints:
        return Fraction(0)
    af = abs(f).affine
    best = (af.left_limit(x) + af(x)) / 2
    for r in sorted({abs(x - b) for b in af.knots} - {0}):
        best = max(best, hl_max(f, x, r))
    return best


def hl_window(f: StepFunction, c: Real) -> Interval | None:
    """Interval outside which ``Mf <= c``.

    From ``Mf(x) <= ||f||_1 / (2 dist(x, support))`` the set ``{Mf > c}``
    lies within ``||f||_1 / (2c)`` of the support.
    """
    c = exact(c)
    mass = l1_norm(f)
    if mass == 0:
        return None
    reach = mass / (2 * c)
    return Interval(exact(f.breakpoints[0]) - reach, exact(f.breakpoints[-1]) + reach)


def _clip(poly, a, b, c):
    """Keep the part of a convex polygon where ``a*u + b*v + c >= 0``."""
    out = []
    n = len(poly)
    for k in range(n):
        p, q = poly[k], poly[(k + 1) % n]
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            out.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
    return out


def _area2(poly) -> Fraction:
    s = Fraction(0)
    for k in range(len(poly)):
        (u0, v0), (u1, v1) = poly[k], poly[(k + 1) % len(poly)]
        s += u0 * v1 - u1 * v0
    return abs(s)


def hl_superlevel_set(f: StepFunction, c: Real) -> IntervalSet:
    """Exact ``{x : hl_maximal(f, x) > c}`` (an open set, stored half-open)."""
    if not c > 0:
        raise ValueError(f"level must be positive, got {c}")
    c = exact(c)
    window = hl_window(f, c)
    if window is None:
        return IntervalSet.empty()
    af = abs(f).affine
    # any witnessing ball has radius < ||f||_1 / (2c) and meets the support,
    # so its endpoints lie strictly inside [lo, hi]
    reach = window.hi - window.lo
    lo, hi = exact(f.breakpoints[0]) - reach, exact(f.breakpoints[-1]) + reach
    knots = [lo, *af.knots, hi]
    slopes = [Fraction(0), *af.starts, Fraction(0)]
    slopes = [s - c for s in slopes[: len(knots) - 1]]
    h = [Fraction(0) - c * lo]
    for k in range(len(knots) - 1):
        h.append(h[-1] + slopes[k] * (knots[k + 1] - knots[k]))
    pieces = []
    m = len(knots) - 1
    for i in range(m):
        for j in range(i, m):
            si, sj = slopes[i], slopes[j]
            poly = [
                (knots[i], knots[j]),
                (knots[i + 1], knots[j]),
                (knots[i + 1], knots[j + 1]),
                (knots[i], knots[j + 1]),
            ]
            poly = _clip(poly, Fraction(-1), Fraction(1), Fraction(0))
            # H(v) - H(u) on this cell is  sj*v - si*u + const
            const = h[j] - sj * knots[j] - h[i] + si * knots[i]
            if si == 0 and sj == 0:
                if const <= 0:
                    continue
            else:
                poly = _clip(poly, -si, sj, const)
            if len(poly) < 3 or _area2(poly) == 0:
                continue
            mids = [(u + v) / 2 for u, v in poly]
            pieces.append((min(mids), max(mids)))
    return normalize(pieces)


def _in_open(s: IntervalSet, x: Fraction) -> bool:
    return any(p.lo < x < p.hi for p in s)


@dataclass(frozen=True)
class MaximalReport:
    c: Fraction
    superlevel_measure: Fraction
    bound: Fraction
    superlevel: IntervalSet
    grid_points: int = 0
    grid_above: int = 0
    grid_consistent: bool = True

    @property
    def holds(self) -> bool:
        return self.superlevel_measure <= self.bound


def maximal_inequality_check(f: StepFunction, c: Real, grid_step: Real | None = None) -> MaximalReport:
    """Check ``measure{Mf > c} <= (3/c) ||f||_1``.

    The superlevel set is the exact one from :func:`hl_superlevel_set`.
    With ``grid_step`` the set is cross-checked pointwise: on a grid over
    :func:`hl_window`, ``hl_maximal(f, x) > c`` must agree with
    membership in the open set (boundary points aside).
    """
    if not c > 0:
        raise ValueError(f"level must be positive, got {c}")
    c = exact(c)
    s = hl_superlevel_set(f, c)
    bound = 3 * l1_norm(f) / c
    points = above = 0
    consistent = True
    window = hl_window(f, c)
    if grid_step is not None and window is not None:
        from .averaging import grid

        boundary = set(s.endpoints())
        for x in grid(window, grid_step):
            points += 1
            hit = hl_maximal(f, x) > c
            above += hit
            if x not in boundary and hit != _in_open(s, x):
                consistent = False
    return MaximalReport(c, s.measure(), bound, s, points, above, consistent)
