"""Finite unions of half-open intervals on the real line.

Every set is stored in canonical form: a sorted tuple of disjoint,
non-adjacent ``[lo, hi)`` parts.  Endpoints are whatever real numbers the
caller supplied (floats or :class:`fractions.Fraction`); set algebra only
compares them, so it is exact on the stored values.  Measures are summed
as fractions and are therefore exact as well.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Interval",
    "IntervalSet",
    "Ball",
    "normalize",
    "measure",
    "ball_to_set",
    "sball",
    "outer_regularize",
    "inner_regularize",
    "compact_exhaustion",
    "exact",
]


def exact(x: Real) -> Fraction:
    """Exact rational value of a finite real (float or Fraction)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r}")
    return Fraction(x)


def _check_finite(x: Real) -> Real:
    if isinstance(x, (int, Fraction)):
        return x
    if not math.isfinite(x):
        raise ValueError(f"non-finite endpoint {x!r}")
    return x


@dataclass(frozen=True)
class Interval:
    """Half-open interval ``[lo, hi)`` with ``lo < hi``."""

    lo: Real
    hi: Real

    def __post_init__(self):
        _check_finite(self.lo)
        _check_finite(self.hi)
        if not self.lo < self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return exact(self.hi) - exact(self.lo)

    def __contains__(self, x: Real) -> bool:
        return self.lo <= x < self.hi


@dataclass(frozen=True)
class IntervalSet:
    """Canonical finite union of half-open intervals.

    Use :func:`normalize` (or :meth:`from_pairs`) to build one from
    arbitrary pairs; the constructor checks canonicity and raises
    otherwise.
    """

    parts: tuple[Interval, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for a, b in zip(parts, parts[1:]):
            if not a.hi < b.lo:
                raise ValueError("parts must be sorted, disjoint and non-adjacent")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Real]]) -> IntervalSet:
        return normalize(pairs)

    @classmethod
    def empty(cls) -> IntervalSet:
        return cls(())

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __contains__(self, x: Real) -> bool:
        return any(x in p for p in self.parts)

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return self.union(other)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        return self.intersect(other)

    def __sub__(self, other: IntervalSet) -> IntervalSet:
        return self.diff(other)

    def pairs(self) -> list[tuple[Real, Real]]:
        return [(p.lo, p.hi) for p in self.parts]

    def endpoints(self) -> list[Real]:
        return [e for p in self.parts for e in (p.lo, p.hi)]

    @property
    def lo(self) -> Real:
        return self.parts[0].lo

    @property
    def hi(self) -> Real:
        return self.parts[-1].hi

    def hull(self) -> Interval:
        if not self.parts:
            raise ValueError("hull of the empty set")
        return Interval(self.lo, self.hi)

    def measure(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def union(self, other: IntervalSet) -> IntervalSet:
        return normalize(self.pairs() + other.pairs())

    def intersect(self, other: IntervalSet) -> IntervalSet:
        out = []
        a, b = self.parts, other.parts
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def diff(self, other: IntervalSet) -> IntervalSet:
        out = []
        cuts = other.parts
        j = 0
        for p in self.parts:
            lo = p.lo
            while j < len(cuts) and cuts[j].hi <= lo:
                j += 1
            k = j
            while k < len(cuts) and cuts[k].lo < p.hi:
                if lo < cuts[k].lo:
                    out.append(Interval(lo, cuts[k].lo))
                lo = max(lo, cuts[k].hi)
                k += 1
            if lo < p.hi:
                out.append(Interval(lo, p.hi))
        return IntervalSet(tuple(out))

    def complement_within(self, window: Interval | IntervalSet) -> IntervalSet:
        if isinstance(window, Interval):
            window = IntervalSet((window,))
        return window.diff(self)


def normalize(raw: Iterable[Sequence[Real]]) -> IntervalSet:
    """Canonical :class:`IntervalSet` covering the union of ``raw`` pairs.

    Degenerate pairs (``lo >= hi``) are dropped; overlapping or touching
    pairs are merged.
    """
    pairs = []
    for lo, hi in raw:
        _check_finite(lo)
        _check_finite(hi)
        if lo < hi:
            pairs.append((lo, hi))
    pairs.sort(key=lambda p: (p[0], p[1]))
    merged: list[list[Real]] = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return IntervalSet(tuple(Interval(lo, hi) for lo, hi in merged))


def measure(s: IntervalSet) -> Fraction:
    """Lebesgue measure of ``s`` (exact)."""
    return s.measure()


@dataclass(frozen=True)
class Ball:
    """Open ball ``(center - radius, center + radius)``."""

    center: Real
    radius: Real

    def __post_init__(self):
        _check_finite(self.center)
        _check_finite(self.radius)
        if not self.radius > 0:
            raise ValueError(f"ball radius must be positive, got {self.radius}")

    @property
    def lo(self) -> Fraction:
        return exact(self.center) - exact(self.radius)

    @property
    def hi(self) -> Fraction:
        return exact(self.center) + exact(self.radius)


def ball_to_set(b: Ball) -> IntervalSet:
    # the open ball and [lo, hi) differ by a null set
    return IntervalSet((Interval(b.lo, b.hi),))


def sball(k: Real, b: Ball) -> Ball:
    """Ball with the same center and radius scaled by ``k``."""
    if not k > 0:
        raise ValueError("scale factor must be positive")
    if k == 1:
        return b
    return Ball(b.center, exact(k) * exact(b.radius))


def _regularity_step(d: IntervalSet, eps: Real) -> Fraction:
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    return exact(eps) / (4 * len(d.parts))


def outer_regularize(d: IntervalSet, eps: Real) -> IntervalSet:
    """Open superset ``U`` of ``d`` with ``measure(U - d) <= eps / 2``.

    Each of the ``2n`` endpoints is pushed outward by ``eps / (4n)``.  The
    returned parts stand for open intervals; parts that grow into each
    other are merged.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not d:
        return d
    pad = _regularity_step(d, eps)
    return normalize((exact(p.lo) - pad, exact(p.hi) + pad) for p in d)


def inner_regularize(d: IntervalSet, eps: Real) -> IntervalSet:
    """Compact subset ``V`` of ``d`` with ``measure(d - V) <= eps / 2``.

    Each endpoint is pulled inward by ``eps / (4n)``; the parts of the
    result are read as closed intervals.  Parts no longer than twice the
    shrink width disappear.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if not d:
        return d
    shrink = _regularity_step(d, eps)
    return normalize((exact(p.lo) + shrink, exact(p.hi) - shrink) for p in d)


def compact_exhaustion(d: IntervalSet, n: int) -> IntervalSet:
    """Compact ``K_n`` inside ``d`` with ``measure(d) - measure(K_n) <= 1/n``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return inner_regularize(d, Fraction(1, n))
