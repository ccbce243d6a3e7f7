"""Step and piecewise-linear functions and their exact integrals.

Both function classes convert to :class:`PiecewiseAffine`, a
piecewise-affine function that may jump at its knots.  All integrals,
L1 norms and superlevel sets are computed on that common form with
rational arithmetic, so mixed expressions such as ``f - g`` (step minus
continuous) integrate exactly.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Iterator, Sequence, Union

from .intervals import Interval, IntervalSet, exact, normalize

__all__ = [
    "StepFunction",
    "PiecewiseLinear",
    "PiecewiseAffine",
    "MarkovReport",
    "as_affine",
    "integrate",
    "l1_norm",
    "abs_diff_integral",
    "superlevel_set",
    "markov_check",
    "restrict_to_ball",
]


@dataclass(frozen=True)
class PiecewiseAffine:
    """Piecewise-affine function with possible jumps at the knots.

    On ``[knots[i], knots[i+1])`` the function runs linearly from
    ``starts[i]`` to the left limit ``ends[i]``.  Left of the first knot it
    equals ``left``; from the last knot on it equals ``right``.
    """

    knots: tuple[Fraction, ...]
    starts: tuple[Fraction, ...]
    ends: tuple[Fraction, ...]
    left: Fraction = Fraction(0)
    right: Fraction = Fraction(0)

    def __post_init__(self):
        if len(self.starts) != max(len(self.knots) - 1, 0) or len(self.ends) != len(self.starts):
            raise ValueError("need one (start, end) pair per cell")
        for a, b in zip(self.knots, self.knots[1:]):
            if not a < b:
                raise ValueError("knots must be strictly increasing")

    @classmethod
    def constant(cls, c: Real) -> PiecewiseAffine:
        c = exact(c)
        return cls((), (), (), c, c)

    def __call__(self, x: Real) -> Fraction:
        """Value at ``x`` (right-continuous at jumps)."""
        x = exact(x)
        ks = self.knots
        if not ks or x < ks[0]:
            return self.left
        if x >= ks[-1]:
            return self.right
        i = bisect.bisect_right(ks, x) - 1
        return self._interp(i, x)

    def left_limit(self, x: Real) -> Fraction:
        x = exact(x)
        ks = self.knots
        if not ks or x <= ks[0]:
            return self.left
        if x > ks[-1]:
            return self.right
        i = bisect.bisect_left(ks, x) - 1
        return self._interp(i, x)

    def _interp(self, i: int, x: Fraction) -> Fraction:
        a, b = self.knots[i], self.knots[i + 1]
        ya, yb = self.starts[i], self.ends[i]
        if ya == yb:
            return ya
        return ya + (yb - ya) * (x - a) / (b - a)

    def cells(self, lo: Real, hi: Real) -> Iterator[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Affine cells ``(a, b, y(a), y(b-))`` covering ``[lo, hi)``."""
        lo, hi = exact(lo), exact(hi)
        if not lo < hi:
            return
        ks = self.knots
        grid = [lo] + [k for k in ks if lo < k < hi] + [hi]
        for a, b in zip(grid, grid[1:]):
            if not ks or b <= ks[0]:
                yield a, b, self.left, self.left
            elif a >= ks[-1]:
                yield a, b, self.right, self.right
            else:
                i = bisect.bisect_right(ks, a) - 1
                yield a, b, self._interp(i, a), self._interp(i, b)

    def refine(self, points: Sequence[Real]) -> PiecewiseAffine:
        """Same function with extra knots inserted."""
        ks = sorted(set(self.knots) | {exact(p) for p in points})
        if not ks:
            return self
        starts, ends = [], []
        for a, b in zip(ks, ks[1:]):
            starts.append(self(a))
            ends.append(self.left_limit(b))
        return PiecewiseAffine(tuple(ks), tuple(starts), tuple(ends), self.left, self.right)

    def _combine(self, other: PiecewiseAffine, op) -> PiecewiseAffine:
        p = self.refine(other.knots)
        q = other.refine(self.knots)
        return PiecewiseAffine(
            p.knots,
            tuple(op(s, t) for s, t in zip(p.starts, q.starts)),
            tuple(op(s, t) for s, t in zip(p.ends, q.ends)),
            op(p.left, q.left),
            op(p.right, q.right),
        )

    def __add__(self, other: PiecewiseAffine) -> PiecewiseAffine:
        return self._combine(as_affine(other), lambda s, t: s + t)

    def __sub__(self, other: PiecewiseAffine) -> PiecewiseAffine:
        return self._combine(as_affine(other), lambda s, t: s - t)

    def __neg__(self) -> PiecewiseAffine:
        return self.scale(-1)

    def scale(self, alpha: Real) -> PiecewiseAffine:
        alpha = exact(alpha)
        return PiecewiseAffine(
            self.knots,
            tuple(alpha * y for y in self.starts),
            tuple(alpha * y for y in self.ends),
            alpha * self.left,
            alpha * self.right,
        )

    def integral(self, s: IntervalSet) -> Fraction:
        total = Fraction(0)
        for part in s:
            for a, b, ya, yb in self.cells(part.lo, part.hi):
                total += (ya + yb) * (b - a) / 2
        return total

    def abs_integral(self, s: IntervalSet) -> Fraction:
        total = Fraction(0)
        for part in s:
            for a, b, ya, yb in self.cells(part.lo, part.hi):
                total += _abs_trapezoid(a, b, ya, yb)
        return total

    def superlevel(self, c: Real, strict: bool, window: Interval) -> IntervalSet:
        c = exact(c)
        above = (lambda y: y > c) if strict else (lambda y: y >= c)
        pieces = []
        for a, b, ya, yb in self.cells(window.lo, window.hi):
            ia, ib = above(ya), above(yb)
            if ia and ib:
                pieces.append((a, b))
            elif ia or ib:
                t = a + (c - ya) * (b - a) / (yb - ya)
                pieces.append((a, t) if ia else (t, b))
        return normalize(pieces)

    def support_window(self) -> Interval | None:
        if len(self.knots) < 2:
            return None
        return Interval(self.knots[0], self.knots[-1])


def _abs_trapezoid(a: Fraction, b: Fraction, ya: Fraction, yb: Fraction) -> Fraction:
    w = b - a
    if (ya >= 0 and yb >= 0) or (ya <= 0 and yb <= 0):
        return abs(ya + yb) * w / 2
    # sign change inside the cell: two triangles
    return (ya * ya + yb * yb) * w / (2 * (abs(ya) + abs(yb)))


@dataclass(frozen=True)
class StepFunction:
    """Finitely many constant pieces ``values[i]`` on ``[b[i], b[i+1])``.

    The function is zero outside ``[b[0], b[-1])``.  The zero function has
    no breakpoints at all.
    """

    breakpoints: tuple[Real, ...] = ()
    values: tuple[Real, ...] = ()

    def __post_init__(self):
        bp = tuple(self.breakpoints)
        vals = tuple(self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        if bp and len(bp) < 2:
            raise ValueError("a step function needs at least two breakpoints")
        if len(vals) != max(len(bp) - 1, 0):
            raise ValueError("need exactly one value per piece")
        for b in bp:
            exact(b)
        for v in vals:
            exact(v)
        for a, b in zip(bp, bp[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")

    @classmethod
    def zero(cls) -> StepFunction:
        return cls((), ())

    @classmethod
    def indicator(cls, lo: Real, hi: Real, value: Real = 1) -> StepFunction:
        return cls((lo, hi), (value,))

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[Real, Real, Real]]) -> StepFunction:
        """Build from ``(lo, hi, value)`` triples; gaps get value 0."""
        pieces = sorted(pieces)
        if not pieces:
            return cls.zero()
        bps = [pieces[0][0]]
        vals = []
        for lo, hi, v in pieces:
            if lo < bps[-1]:
                raise ValueError("pieces overlap")
            if lo > bps[-1]:
                bps.append(lo)
                vals.append(0)
            bps.append(hi)
            vals.append(v)
        return cls(tuple(bps), tuple(vals))

    @cached_property
    def affine(self) -> PiecewiseAffine:
        ks = tuple(exact(b) for b in self.breakpoints)
        vs = tuple(exact(v) for v in self.values)
        return PiecewiseAffine(ks, vs, vs)

    def __call__(self, x: Real) -> Real:
        bp = self.breakpoints
        if not bp or x < bp[0] or x >= bp[-1]:
            return 0
        return self.values[bisect.bisect_right(bp, x) - 1]

    def left_limit(self, x: Real) -> Real:
        bp = self.breakpoints
        if not bp or x <= bp[0] or x > bp[-1]:
            return 0
        return self.values[bisect.bisect_left(bp, x) - 1]

    def pieces(self) -> Iterator[tuple[Real, Real, Real]]:
        bp = self.breakpoints
        for i, v in enumerate(self.values):
            yield bp[i], bp[i + 1], v

    def support_window(self) -> Interval | None:
        if not self.breakpoints:
            return None
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    def jumps(self) -> list[tuple[Real, Real, Real]]:
        """``(point, left_limit, right_value)`` at every breakpoint where f jumps."""
        return [
            (b, self.left_limit(b), self(b))
            for b in self.breakpoints
            if self.left_limit(b) != self(b)
        ]

    def sup_abs(self) -> Real:
        return max((abs(v) for v in self.values), default=0)

    def __abs__(self) -> StepFunction:
        return StepFunction(self.breakpoints, tuple(abs(v) for v in self.values))

    def __neg__(self) -> StepFunction:
        return StepFunction(self.breakpoints, tuple(-v for v in self.values))

    def scale(self, alpha: Real) -> StepFunction:
        if alpha == 0:
            return StepFunction.zero()
        return StepFunction(self.breakpoints, tuple(alpha * v for v in self.values))

    def _merged(self, other: StepFunction, op) -> StepFunction:
        grid = sorted(set(self.breakpoints) | set(other.breakpoints))
        if not grid:
            return StepFunction.zero()
        vals = tuple(op(self(a), other(a)) for a in grid[:-1])
        return StepFunction(tuple(grid), vals)

    def __add__(self, other: StepFunction) -> StepFunction:
        return self._merged(other, lambda s, t: s + t)

    def __sub__(self, other: StepFunction) -> StepFunction:
        return self._merged(other, lambda s, t: s - t)

    def to_dict(self) -> dict:
        return {"breakpoints": [float(b) for b in self.breakpoints],
                "values": [float(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict) -> StepFunction:
        return cls(tuple(d["breakpoints"]), tuple(d["values"]))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function through ``(knots[i], values[i])``.

    Constant ``values[0]`` left of the first knot and ``values[-1]`` right
    of the last one.
    """

    knots: tuple[Real, ...]
    values: tuple[Real, ...]

    def __post_init__(self):
        ks = tuple(self.knots)
        vs = tuple(self.values)
        object.__setattr__(self, "knots", ks)
        object.__setattr__(self, "values", vs)
        if not ks:
            raise ValueError("need at least one knot")
        if len(ks) != len(vs):
            raise ValueError("need exactly one value per knot")
        for k in ks:
            exact(k)
        for v in vs:
            exact(v)
        for a, b in zip(ks, ks[1:]):
            if not a < b:
                raise ValueError("knots must be strictly increasing")

    @classmethod
    def constant(cls, c: Real) -> PiecewiseLinear:
        return cls((0,), (c,))

    @cached_property
    def affine(self) -> PiecewiseAffine:
        ks = tuple(exact(k) for k in self.knots)
        vs = tuple(exact(v) for v in self.values)
        return PiecewiseAffine(ks, vs[:-1], vs[1:], vs[0], vs[-1])

    def __call__(self, x: Real) -> Fraction:
        return self.affine(x)

    def slopes(self) -> list[Fraction]:
        af = self.affine
        return [(yb - ya) / (b - a) for a, b, ya, yb in zip(af.knots, af.knots[1:], af.starts, af.ends)]

    def lipschitz(self) -> Fraction:
        return max((abs(s) for s in self.slopes()), default=Fraction(0))

    def support_window(self) -> Interval | None:
        if len(self.knots) < 2:
            return None
        return Interval(self.knots[0], self.knots[-1])

    def to_dict(self) -> dict:
        return {"knots": [float(k) for k in self.knots],
                "values": [float(v) for v in self.values]}

    @classmethod
    def from_dict(cls, d: dict) -> PiecewiseLinear:
        return cls(tuple(d["knots"]), tuple(d["values"]))


Function = Union[StepFunction, PiecewiseLinear, PiecewiseAffine]


def as_affine(f: Function) -> PiecewiseAffine:
    if isinstance(f, PiecewiseAffine):
        return f
    return f.affine


def _whole_line(f: Function, s: IntervalSet | None) -> IntervalSet:
    if s is not None:
        return s
    w = f.support_window()
    if w is None:
        return IntervalSet.empty()
    return IntervalSet((w,))


def integrate(f: Function, s: IntervalSet) -> Fraction:
    """Exact integral of ``f`` over ``s``."""
    return as_affine(f).integral(s)


def l1_norm(f: Function, s: IntervalSet | None = None) -> Fraction:
    """Exact ``integral of |f|`` over ``s`` (default: the support window of f)."""
    return as_affine(f).abs_integral(_whole_line(f, s))


def abs_diff_integral(f: Function, g: Function, s: IntervalSet) -> Fraction:
    """Exact ``integral over s of |f - g|``."""
    return (as_affine(f) - as_affine(g)).abs_integral(s)


def superlevel_set(f: Function, c: Real, mode: str = ">", window: Interval | None = None) -> IntervalSet:
    """``{x in window | f(x) > c}`` (or ``>=``) as a canonical set.

    The window defaults to the support window of ``f`` (its outermost
    breakpoints or knots).
    """
    if mode not in (">", ">="):
        raise ValueError(f"mode must be '>' or '>=', got {mode!r}")
    if window is None:
        window = f.support_window()
        if window is None:
            return IntervalSet.empty()
    return as_affine(f).superlevel(c, mode == ">", window)


@dataclass(frozen=True)
class MarkovReport:
    a: Fraction
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs


def markov_check(f: StepFunction, a: Real) -> MarkovReport:
    """Compare ``measure{|f| >= a}`` with ``||f||_1 / a``, exactly."""
    if not a > 0:
        raise ValueError(f"threshold must be positive, got {a}")
    qa = exact(a)
    lhs = superlevel_set(abs(f), qa, ">=").measure()
    rhs = l1_norm(f) / qa
    return MarkovReport(qa, lhs, rhs)


def restrict_to_ball(f: StepFunction, k: int) -> StepFunction:
    """``f`` times the indicator of ``B(0, 2(k+1))``."""
    if k < 0:
        raise ValueError("k must be a natural number")
    radius = 2 * (k + 1)
    pieces = []
    for lo, hi, v in f.pieces():
        lo2, hi2 = max(lo, -radius), min(hi, radius)
        if lo2 < hi2:
            pieces.append((lo2, hi2, v))
    return StepFunction.from_pieces(pieces)
