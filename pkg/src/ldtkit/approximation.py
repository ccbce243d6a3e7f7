"""Separation, extension and approximation constructions on the real line.

Closed sets here are finite unions of closed intervals.  All constructions
return exact piecewise-linear functions or exact sets, so their defining
properties (values on the sets, bounds, Lipschitz constants, measure
gaps, L1 errors) can be checked knot by knot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence, Union

from .functions import (
    PiecewiseAffine,
    PiecewiseLinear,
    StepFunction,
    as_affine,
)
from .intervals import Interval, IntervalSet, exact, normalize

__all__ = [
    "ClosedSet",
    "dist_to_set",
    "set_distance",
    "urysohn_function",
    "tietze_extend",
    "lusin_compact",
    "lusin_gap",
    "continuous_approx_l1",
    "ramp_half_width",
    "ramp_error",
    "ramp_error_bound",
    "FunctionSequenceSpec",
    "EgorovResult",
    "EgorovBudgetError",
    "egorov_exceptional",
]


@dataclass(frozen=True)
class ClosedSet:
    """Finite union of closed intervals ``[lo, hi]`` (``lo == hi`` allowed)."""

    parts: tuple[tuple[Real, Real], ...] = ()

    def __post_init__(self):
        parts = tuple((lo, hi) for lo, hi in self.parts)
        object.__setattr__(self, "parts", parts)
        for lo, hi in parts:
            exact(lo)
            exact(hi)
            if lo > hi:
                raise ValueError(f"malformed closed interval [{lo}, {hi}]")
        for (_, h0), (l1, _) in zip(parts, parts[1:]):
            if not h0 < l1:
                raise ValueError("closed parts must be sorted and pairwise disjoint")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Real]]) -> ClosedSet:
        """Union of the given closed intervals; touching parts merge."""
        merged: list[list[Real]] = []
        for lo, hi in sorted((lo, hi) for lo, hi in pairs):
            if lo > hi:
                raise ValueError(f"malformed closed interval [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    @classmethod
    def closure(cls, s: IntervalSet) -> ClosedSet:
        return cls(tuple((p.lo, p.hi) for p in s))

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __contains__(self, x: Real) -> bool:
        return any(lo <= x <= hi for lo, hi in self.parts)

    def to_interval_set(self) -> IntervalSet:
        # drops isolated points, which are null
        return normalize(self.parts)

    def measure(self) -> Fraction:
        return sum((exact(hi) - exact(lo) for lo, hi in self.parts), Fraction(0))


def dist_to_set(x: Real, a: ClosedSet) -> Fraction:
    """Distance from ``x`` to the closed set ``a``."""
    if not a:
        raise ValueError("distance to the empty set")
    x = exact(x)
    best = None
    for lo, hi in a.parts:
        lo, hi = exact(lo), exact(hi)
        d = lo - x if x < lo else (x - hi if x > hi else Fraction(0))
        if best is None or d < best:
            best = d
    return best


def set_distance(a: ClosedSet, b: ClosedSet) -> Fraction:
    """``inf |p - q|`` over ``p`` in ``a`` and ``q`` in ``b``."""
    if not a or not b:
        raise ValueError("distance involving the empty set")
    best = None
    for alo, ahi in a.parts:
        for blo, bhi in b.parts:
            alo_, ahi_, blo_, bhi_ = map(exact, (alo, ahi, blo, bhi))
            d = max(blo_ - ahi_, alo_ - bhi_, Fraction(0))
            if best is None or d < best:
                best = d
    return best


def _dedupe(knots: list[tuple[Fraction, Fraction]]) -> PiecewiseLinear:
    xs, ys = [], []
    for x, y in knots:
        if xs and x == xs[-1]:
            if y != ys[-1]:
                raise AssertionError("conflicting values at a repeated knot")
            continue
        xs.append(x)
        ys.append(y)
    return PiecewiseLinear(tuple(xs), tuple(ys))


def urysohn_function(a: ClosedSet, b: ClosedSet) -> PiecewiseLinear:
    """Continuous ``x -> min(dist(x, a), eps) / eps`` with ``eps = dist(a, b)``.

    The result is 0 on ``a``, 1 on ``b``, takes values in ``[0, 1]`` and
    is ``1/eps``-Lipschitz.
    """
    eps = set_distance(a, b)
    if eps == 0:
        raise ValueError("the closed sets must be disjoint and a positive distance apart")
    parts = [(exact(lo), exact(hi)) for lo, hi in a.parts]
    one, zero = Fraction(1), Fraction(0)
    knots = [(parts[0][0] - eps, one)]
    for i, (lo, hi) in enumerate(parts):
        knots += [(lo, zero), (hi, zero)]
        if i + 1 < len(parts):
            nxt = parts[i + 1][0]
            gap = nxt - hi
            if gap >= 2 * eps:
                knots += [(hi + eps, one), (nxt - eps, one)]
            else:
                knots.append(((hi + nxt) / 2, gap / (2 * eps)))
    knots.append((parts[-1][1] + eps, one))
    return _dedupe(knots)


def tietze_extend(a: ClosedSet, f: PiecewiseLinear, bound: Real) -> PiecewiseLinear:
    """Continuous extension of ``f|a`` to the whole line, bounded by ``bound``.

    Inside each part of ``a`` the extension copies ``f``; across each gap
    it interpolates linearly, and beyond the extreme parts it is constant.
    """
    if not a:
        raise ValueError("cannot extend from the empty set")
    if not bound > 0:
        raise ValueError("bound must be positive")
    m = exact(bound)
    knots = []
    for lo, hi in a.parts:
        lo, hi = exact(lo), exact(hi)
        knots.append((lo, f(lo)))
        knots += [(exact(k), f(k)) for k in f.knots if lo < k < hi]
        knots.append((hi, f(hi)))
    worst = max(abs(y) for _, y in knots)
    if worst > m:
        raise ValueError(f"|f| reaches {float(worst)} on the closed set, above the bound {float(m)}")
    return _dedupe(knots)


def lusin_compact(f: StepFunction, a: IntervalSet, eps: Real) -> ClosedSet:
    """Compact ``K`` inside the closure of ``a`` on which ``f`` has no jump.

    Every breakpoint of ``f`` lying in the closure of ``a`` is cut out with
    an open margin ``eps / (4p)``, ``p`` being the number of such points,
    so ``measure(a - K) <= eps / 2``.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    closure = ClosedSet.closure(a)
    cut = sorted({exact(b) for b in f.breakpoints if b in closure})
    if not cut:
        return closure
    margin = exact(eps) / (4 * len(cut))
    out = []
    for lo, hi in closure.parts:
        left = exact(lo)
        hi = exact(hi)
        for b in cut:
            if b < exact(lo) or b > hi:
                continue
            if left <= b - margin:
                out.append((left, b - margin))
            left = max(left, b + margin)
        if left <= hi:
            out.append((left, hi))
    return ClosedSet(tuple(out))


def lusin_gap(a: IntervalSet, k: ClosedSet) -> Fraction:
    """``measure(a - K)``."""
    return (a - k.to_interval_set()).measure()


def ramp_half_width(f: StepFunction, n: int) -> Fraction:
    """Half-width of the ramps used at level ``n``: ``1/n``, capped so ramps never overlap."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    jumps = [exact(b) for b, _, _ in f.jumps()]
    hw = Fraction(1, n)
    gaps = [q - p for p, q in zip(jumps, jumps[1:])]
    if gaps:
        hw = min(hw, min(gaps) / 2)
    return hw


def continuous_approx_l1(f: StepFunction, n: int) -> PiecewiseLinear:
    """Continuous ``g_n`` replacing every jump of ``f`` by a linear ramp.

    The ramp at a jump point ``b`` runs from the left value at
    ``b - w`` to the right value at ``b + w`` with ``w = ramp_half_width(f, n)``;
    away from the ramps ``g_n`` equals ``f``.
    """
    hw = ramp_half_width(f, n)
    knots = []
    for b, left, right in f.jumps():
        b = exact(b)
        knots += [(b - hw, exact(left)), (b + hw, exact(right))]
    if not knots:
        return PiecewiseLinear.constant(0)
    return _dedupe(knots)


def ramp_error(f: StepFunction, n: int) -> Fraction:
    """Closed-form ``||f - g_n||_1``: each ramp costs ``|jump| * w / 2``."""
    hw = ramp_half_width(f, n)
    return sum((abs(exact(r) - exact(l)) * hw / 2 for _, l, r in f.jumps()), Fraction(0))


def ramp_error_bound(f: StepFunction, n: int) -> Fraction:
    """``J * V / (2n)`` with ``J`` jumps of height at most ``V``."""
    jumps = f.jumps()
    if not jumps:
        return Fraction(0)
    v = max(abs(exact(r) - exact(l)) for _, l, r in jumps)
    return len(jumps) * v / (2 * n)


# -- Egorov ----------------------------------------------------------------

Limit = Union[StepFunction, PiecewiseLinear, None]


class EgorovBudgetError(RuntimeError):
    """No index up to ``J_max`` keeps a level's exceptional set within budget."""

    def __init__(self, level: int, j_max: int, best_measure: Fraction, budget: Fraction):
        self.level = level
        self.j_max = j_max
        self.best_measure = best_measure
        self.budget = budget
        super().__init__(
            f"level {level}: exceptional measure {float(best_measure):.6g} "
            f"exceeds budget {float(budget):.6g} for every n <= {j_max}"
        )


@dataclass(frozen=True)
class FunctionSequenceSpec:
    """A sequence ``f_1, f_2, ...`` converging a.e. on ``domain`` to ``limit``.

    Kinds:

    ``power``
        ``f_j(x) = x**j``, limit 0; the domain must lie in ``[-1, 1]``.
    ``shifted-ramp``
        ``f_j(x) = max(0, 1 - j*|x - center|)``, limit 0 off ``center``.
    ``steps``
        explicit list of step functions ``sequence`` (``f_1`` first) with
        an arbitrary step or piecewise-linear ``limit``.
    """

    kind: str
    domain: IntervalSet
    params: dict = field(default_factory=dict)
    sequence: tuple[StepFunction, ...] = ()
    limit: Limit = None
    tail_monotone: bool = True

    def __post_init__(self):
        if self.kind not in ("power", "shifted-ramp", "steps"):
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        if self.kind == "power" and self.domain and (self.domain.lo < -1 or self.domain.hi > 1):
            raise ValueError("power sequences need a domain inside [-1, 1]")
        if self.kind == "shifted-ramp" and "center" not in self.params:
            raise ValueError("shifted-ramp sequences need params['center']")
        if self.kind == "steps" and not self.sequence:
            raise ValueError("steps sequences need at least one function")

    @property
    def length(self) -> int | None:
        return len(self.sequence) if self.kind == "steps" else None

    def deviation(self, j: int) -> PiecewiseAffine:
        """``f_j - g`` as an exact piecewise-affine function (not for ``power``)."""
        if self.kind == "shifted-ramp":
            c = exact(self.params["center"])
            w = Fraction(1, j)
            return PiecewiseLinear((c - w, c, c + w), (0, 1, 0)).affine
        if self.kind == "steps":
            g = PiecewiseAffine.constant(0) if self.limit is None else as_affine(self.limit)
            return as_affine(self.sequence[j - 1]) - g
        raise TypeError("power deviations are handled in closed form")

    def excess_set(self, n: int, thr: Fraction, j_max: int) -> IntervalSet:
        """Superset of ``{x in domain : sup_{j >= n} |f_j(x) - g(x)| > thr}``.

        Exact except for ``power``, whose irrational crossing point is
        rounded towards a larger set.
        """
        a = self.domain
        if not a:
            return a
        window = Interval(exact(a.lo), exact(a.hi))
        if self.kind == "power":
            t = float(thr) ** (1.0 / n)
            if t >= 1:
                return IntervalSet.empty()
            t = exact(t * (1 - 1e-12))
            return normalize([(-2, -t), (t, 2)]) & a
        js = [n] if self.tail_monotone and self.kind != "steps" else range(n, self._last(j_max) + 1)
        out = IntervalSet.empty()
        for j in js:
            h = self.deviation(j)
            above = h.superlevel(thr, True, window) | (-h).superlevel(thr, True, window)
            out = out | (above & a)
        return out

    def sup_deviation(self, j: int, s: IntervalSet) -> float:
        """``sup |f_j - g|`` over the closure of ``s``."""
        if not s:
            return 0.0
        if self.kind == "power":
            return max(abs(float(e)) for e in s.endpoints()) ** j
        h = self.deviation(j)
        best = Fraction(0)
        for part in s:
            for _, _, ya, yb in h.cells(part.lo, part.hi):
                best = max(best, abs(ya), abs(yb))
        return float(best)

    def _last(self, j_max: int) -> int:
        return j_max if self.length is None else min(j_max, self.length)


@dataclass(frozen=True)
class EgorovResult:
    exceptional: IntervalSet
    n_of_k: dict[int, int]
    level_sets: dict[int, IntervalSet]
    sup_at_n: dict[int, float]
    budgets: dict[int, Fraction]
    truncated: bool

    @property
    def measure(self) -> Fraction:
        return self.exceptional.measure()

    def uniform_ok(self) -> bool:
        return all(self.sup_at_n[k] <= 1 / k for k in self.n_of_k)


def egorov_exceptional(
    spec: FunctionSequenceSpec, eps: Real, j_max: int = 10**6, levels: int = 8
) -> EgorovResult:
    """Exceptional set ``B`` with ``measure(B) < eps`` outside which convergence is uniform.

    Level ``k`` (``1 <= k <= levels``) asks for ``sup_{j >= n_k} |f_j - g| <= 1/k``
    and spends a budget ``eps / 2**k`` on the set where this fails.  When
    the tail is not known to be monotone the supremum is taken over
    ``n_k <= j <= j_max`` only and the result is flagged ``truncated``.
    """
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if levels < 1 or j_max < 1:
        raise ValueError("levels and j_max must be positive")
    eps = exact(eps)
    last = spec._last(j_max)
    n_of_k, sets, sups, budgets = {}, {}, {}, {}
    for k in range(1, levels + 1):
        thr = Fraction(1, k)
        budget = eps / 2**k
        budgets[k] = budget
        n = _smallest_index(spec, thr, budget, last)
        if n is None:
            best = spec.excess_set(last, thr, j_max).measure()
            raise EgorovBudgetError(k, j_max, best, budget)
        n_of_k[k] = n
        sets[k] = spec.excess_set(n, thr, j_max)
    exceptional = IntervalSet.empty()
    for s in sets.values():
        exceptional = exceptional | s
    rest = spec.domain - exceptional
    for k, n in n_of_k.items():
        sups[k] = spec.sup_deviation(n, rest)
    if spec.kind == "steps":
        truncated = spec.length > j_max
    else:
        truncated = spec.kind == "shifted-ramp" and not spec.tail_monotone
    return EgorovResult(exceptional, n_of_k, sets, sups, budgets, truncated)


def _smallest_index(spec, thr, budget, last) -> int | None:
    # the excess set shrinks as n grows (a sup over fewer indices), so bisect
    def fits(n):
        return spec.excess_set(n, thr, last).measure() < budget

    if not fits(last):
        return None
    lo, hi = 1, last
    while lo < hi:
        mid = (lo + hi) // 2
        if fits(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo
