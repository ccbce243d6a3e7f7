"""Seeded random instances for sweeps and property tests.

All generators draw from a caller-supplied :class:`random.Random` and
round coordinates to three decimals, which keeps reports readable.
Bounds: step functions have 1 to 10 pieces with breakpoints and values
in ``[-10, 10]``; ball collections have 1 to 12 balls with centres in
``[-10, 10]`` and radii in ``[0.05, 3]``.
"""

from __future__ import annotations

import random

from .approximation import ClosedSet
from .functions import StepFunction
from .intervals import Ball, IntervalSet, normalize


def _coord(rng: random.Random, lo: float = -10.0, hi: float = 10.0) -> float:
    return round(rng.uniform(lo, hi), 3)


def _distinct_sorted(rng: random.Random, count: int, lo: float = -10.0, hi: float = 10.0) -> list[float]:
    pts: set[float] = set()
    while len(pts) < count:
        pts.add(_coord(rng, lo, hi))
    return sorted(pts)


def random_step_function(rng: random.Random, max_pieces: int = 10) -> StepFunction:
    m = rng.randint(1, max_pieces)
    bps = _distinct_sorted(rng, m + 1)
    vals = [_coord(rng) for _ in range(m)]
    return StepFunction(tuple(bps), tuple(vals))


def random_interval_set(rng: random.Random, max_parts: int = 6) -> IntervalSet:
    k = rng.randint(0, max_parts)
    pairs = []
    for _ in range(k):
        a, b = _coord(rng), _coord(rng)
        pairs.append((min(a, b), max(a, b)))
    return normalize(pairs)


def random_nonempty_interval_set(rng: random.Random, max_parts: int = 6) -> IntervalSet:
    while True:
        s = random_interval_set(rng, max_parts)
        if s:
            return s


def random_balls(rng: random.Random, max_balls: int = 12) -> list[Ball]:
    n = rng.randint(1, max_balls)
    return [Ball(_coord(rng), round(rng.uniform(0.05, 3.0), 3)) for _ in range(n)]


def random_closed_pair(rng: random.Random, max_parts: int = 6) -> tuple[ClosedSet, ClosedSet]:
    """Two disjoint, nonempty closed sets at positive distance."""
    p = rng.randint(2, max_parts)
    ends = _distinct_sorted(rng, 2 * p)
    parts = [(ends[2 * i], ends[2 * i + 1]) for i in range(p)]
    labels = [rng.random() < 0.5 for _ in parts]
    labels[0], labels[-1] = True, False
    rng.shuffle(labels)
    a = ClosedSet(tuple(q for q, lab in zip(parts, labels) if lab))
    b = ClosedSet(tuple(q for q, lab in zip(parts, labels) if not lab))
    return a, b
