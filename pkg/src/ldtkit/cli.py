"""Command-line front end: scenario files and seeded sweeps.

Usage::

    ldtkit run SCENARIO.json
    ldtkit sweep COMMAND --count N --seed S [--out PATH]

A scenario is a JSON object ``{"command": ..., "inputs": {...},
"output_path": ..., "seed": ...}``.  The report written to
``output_path`` echoes the inputs next to the results.  Relative output
paths are resolved against ``$LDTKIT_OUTPUT_DIR`` when it is set.

Exit codes: 0 success, 1 a check failed, 2 unreadable scenario, 3 inputs
failed validation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .approximation import (
    ClosedSet,
    EgorovBudgetError,
    FunctionSequenceSpec,
    continuous_approx_l1,
    egorov_exceptional,
    lusin_compact,
    lusin_gap,
    ramp_error,
    ramp_error_bound,
    set_distance,
    tietze_extend,
    urysohn_function,
)
from .averaging import RadiusSchedule, non_lebesgue_scan
from .ftc import DerivativeProbe, density_check, ftc1_check
from .functions import PiecewiseLinear, StepFunction, abs_diff_integral, integrate, l1_norm, markov_check
from .intervals import Ball, Interval, IntervalSet, compact_exhaustion, exact, inner_regularize, normalize, outer_regularize
from .maximal import hl_maximal, maximal_inequality_check, verify_vitali, vitali_finite, vitali_valid_subcollections
from .pipeline import ldt_full_scan
from .random_instances import (
    random_balls,
    random_closed_pair,
    random_interval_set,
    random_nonempty_interval_set,
    random_step_function,
)

OUTPUT_ENV = "LDTKIT_OUTPUT_DIR"

EXIT_OK, EXIT_CHECK_FAILED, EXIT_PARSE, EXIT_VALIDATION = 0, 1, 2, 3


class ScenarioError(Exception):
    """Scenario file could not be read or parsed."""


class ValidationError(Exception):
    """Scenario inputs do not match the command's schema."""


# -- input parsing ---------------------------------------------------------


def _num(v: Any, name: str, positive: bool = False) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValidationError(f"{name}: expected a number, got {v!r}")
    if not math.isfinite(v):
        raise ValidationError(f"{name}: must be finite")
    if positive and not v > 0:
        raise ValidationError(f"{name}: must be positive")
    return v


def _int(v: Any, name: str, minimum: int = 0) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValidationError(f"{name}: expected an integer, got {v!r}")
    if v < minimum:
        raise ValidationError(f"{name}: must be at least {minimum}")
    return v


def _require(inputs: dict, key: str) -> Any:
    if key not in inputs:
        raise ValidationError(f"missing input {key!r}")
    return inputs[key]


def _pairs(v: Any, name: str) -> list[tuple[float, float]]:
    if not isinstance(v, list):
        raise ValidationError(f"{name}: expected a list of [lo, hi] pairs")
    out = []
    for p in v:
        if not isinstance(p, list) or len(p) != 2:
            raise ValidationError(f"{name}: expected [lo, hi], got {p!r}")
        lo, hi = _num(p[0], name), _num(p[1], name)
        if hi < lo:
            raise ValidationError(f"{name}: malformed interval [{lo}, {hi}]")
        out.append((lo, hi))
    return out


def _interval_set(v: Any, name: str) -> IntervalSet:
    return normalize(_pairs(v, name))


def _closed_set(v: Any, name: str) -> ClosedSet:
    return ClosedSet.from_pairs(_pairs(v, name))


def _step(v: Any, name: str = "f") -> StepFunction:
    if not isinstance(v, dict):
        raise ValidationError(f"{name}: expected {{breakpoints, values}}")
    bps = [_num(x, name) for x in _require(v, "breakpoints")]
    vals = [_num(x, name) for x in _require(v, "values")]
    try:
        return StepFunction(tuple(bps), tuple(vals))
    except ValueError as e:
        raise ValidationError(f"{name}: {e}") from None


def _pwl(v: Any, name: str) -> PiecewiseLinear:
    if not isinstance(v, dict):
        raise ValidationError(f"{name}: expected {{knots, values}}")
    try:
        return PiecewiseLinear(
            tuple(_num(x, name) for x in _require(v, "knots")),
            tuple(_num(x, name) for x in _require(v, "values")),
        )
    except ValueError as e:
        raise ValidationError(f"{name}: {e}") from None


def _schedule(v: Any) -> RadiusSchedule:
    if v is None:
        return RadiusSchedule()
    if not isinstance(v, dict):
        raise ValidationError("schedule: expected an object")
    try:
        return RadiusSchedule(
            _num(v.get("r0", 1), "schedule.r0", positive=True),
            _num(v.get("factor", 0.5), "schedule.factor", positive=True),
            _int(v.get("steps", 24), "schedule.steps", 4),
            _num(v.get("tol", 1e-9), "schedule.tol", positive=True),
        )
    except ValueError as e:
        raise ValidationError(f"schedule: {e}") from None


def _balls(v: Any) -> list[Ball]:
    if not isinstance(v, list) or not v:
        raise ValidationError("balls: expected a nonempty list")
    out = []
    for b in v:
        if not isinstance(b, dict):
            raise ValidationError("balls: expected {center, radius} records")
        out.append(Ball(_num(_require(b, "center"), "center"), _num(_require(b, "radius"), "radius", positive=True)))
    return out


# -- JSON helpers ------------------------------------------------------------


def _f(x) -> float:
    return float(x)


def _set_out(s: IntervalSet) -> list[list[float]]:
    return [[_f(lo), _f(hi)] for lo, hi in s.pairs()]


def _closed_out(s: ClosedSet) -> list[list[float]]:
    return [[_f(lo), _f(hi)] for lo, hi in s.parts]


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(float(x)) if isinstance(x, (Fraction, float, int)) and not isinstance(x, bool) else x for x in row])


# -- commands ----------------------------------------------------------------


def cmd_measure(inp: dict, ctx: dict) -> tuple[dict, bool]:
    s = _interval_set(_require(inp, "set"), "set")
    return {"canonical": _set_out(s), "measure": _f(s.measure())}, True


def cmd_integrate(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    s = _interval_set(_require(inp, "set"), "set")
    return {"integral": _f(integrate(f, s)), "l1_norm": _f(l1_norm(f, s))}, True


def cmd_markov(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    thresholds = _require(inp, "a")
    if not isinstance(thresholds, list):
        thresholds = [thresholds]
    rows = []
    for a in thresholds:
        r = markov_check(f, _num(a, "a", positive=True))
        rows.append({"a": _f(r.a), "lhs": _f(r.lhs), "rhs": _f(r.rhs), "holds": r.holds})
    return {"checks": rows}, all(r["holds"] for r in rows)


def cmd_vitali(inp: dict, ctx: dict) -> tuple[dict, bool]:
    balls = _balls(_require(inp, "balls"))
    sel = vitali_finite(balls)
    check = verify_vitali(balls, sel)
    res = {
        "selected": sel,
        "verified": check.ok,
        "witnesses": {str(i): j for i, j in check.witnesses.items()},
    }
    ok = check.ok
    if inp.get("oracle", len(balls) <= 12):
        valid = set(vitali_valid_subcollections(balls))
        res["oracle_agrees"] = tuple(sorted(sel)) in valid
        ok = ok and res["oracle_agrees"]
    return res, ok


def cmd_maximal(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    levels = _require(inp, "c")
    if not isinstance(levels, list):
        levels = [levels]
    grid_step = inp.get("grid_step")
    if grid_step is not None:
        _num(grid_step, "grid_step", positive=True)
    rows = []
    for c in levels:
        r = maximal_inequality_check(f, _num(c, "c", positive=True), grid_step)
        rows.append({
            "c": _f(r.c),
            "superlevel": _set_out(r.superlevel),
            "superlevel_measure": _f(r.superlevel_measure),
            "bound": _f(r.bound),
            "holds": r.holds,
            "grid_points": r.grid_points,
            "grid_consistent": r.grid_consistent,
        })
    res = {"checks": rows}
    if "points" in inp:
        res["hl_maximal"] = [[_f(x), _f(hl_maximal(f, _num(x, "points")))] for x in inp["points"]]
    return res, all(r["holds"] and r["grid_consistent"] for r in rows)


def _pwl_out(g: PiecewiseLinear) -> dict:
    return g.to_dict()


def cmd_urysohn(inp: dict, ctx: dict) -> tuple[dict, bool]:
    a = _closed_set(_require(inp, "A"), "A")
    b = _closed_set(_require(inp, "B"), "B")
    if not a or not b:
        raise ValidationError("A and B must be nonempty")
    eps = set_distance(a, b)
    if eps == 0:
        raise ValidationError("A and B must be disjoint with positive distance")
    g = urysohn_function(a, b)
    res = urysohn_properties(a, b, g)
    res["epsilon"] = _f(eps)
    res["function"] = _pwl_out(g)
    return res, all(res[k] for k in ("zero_on_A", "one_on_B", "range_ok", "lipschitz_ok"))


def urysohn_properties(a: ClosedSet, b: ClosedSet, g: PiecewiseLinear) -> dict:
    """Knot-level checks of a separating function."""
    eps = set_distance(a, b)

    def probe_points(s):
        pts = []
        for lo, hi in s.parts:
            pts += [exact(lo), exact(hi)] + [exact(k) for k in g.knots if lo < k < hi]
        return pts

    return {
        "zero_on_A": all(g(x) == 0 for x in probe_points(a)),
        "one_on_B": all(g(x) == 1 for x in probe_points(b)),
        "range_ok": all(0 <= exact(v) <= 1 for v in g.values),
        "lipschitz": _f(g.lipschitz()),
        "lipschitz_ok": g.lipschitz() <= 1 / eps,
    }


def cmd_tietze(inp: dict, ctx: dict) -> tuple[dict, bool]:
    a = _closed_set(_require(inp, "A"), "A")
    f = _pwl(_require(inp, "f"), "f")
    m = _num(_require(inp, "M"), "M", positive=True)
    if not a:
        raise ValidationError("A must be nonempty")
    try:
        g = tietze_extend(a, f, m)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    res = tietze_properties(a, f, g, m)
    res["function"] = _pwl_out(g)
    return res, res["agrees_on_A"] and res["bound_ok"]


def tietze_properties(a: ClosedSet, f: PiecewiseLinear, g: PiecewiseLinear, m) -> dict:
    pts = []
    for lo, hi in a.parts:
        pts += [lo, hi] + [k for k in f.knots if lo < k < hi]
    sup = max(abs(exact(v)) for v in g.values)
    return {"agrees_on_A": all(f(x) == g(x) for x in pts), "sup": _f(sup), "bound_ok": sup <= exact(m)}


def cmd_lusin(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    a = _interval_set(_require(inp, "A"), "A")
    eps = _num(_require(inp, "eps"), "eps", positive=True)
    k = lusin_compact(f, a, eps)
    gap = lusin_gap(a, k)
    jump_free = all(b not in k for b in f.breakpoints)
    res = {"K": _closed_out(k), "gap": _f(gap), "gap_ok": gap < exact(eps), "jump_free": jump_free}
    return res, res["gap_ok"] and jump_free


def cmd_approx_l1(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    ns = _require(inp, "n")
    ns = [_int(n, "n", 1) for n in (ns if isinstance(ns, list) else [ns])]
    if "E" in inp:
        e_set = _interval_set(inp["E"], "E")
    else:
        w = f.support_window()
        e_set = IntervalSet() if w is None else IntervalSet((Interval(exact(w.lo) - 1, exact(w.hi) + 1),))
    rows = []
    for n in ns:
        g = continuous_approx_l1(f, n)
        err = abs_diff_integral(f, g, e_set)
        rows.append({
            "n": n,
            "error": _f(err),
            "ramp_formula": _f(ramp_error(f, n)),
            "bound": _f(ramp_error_bound(f, n)),
            "matches_formula": err == ramp_error(f, n),
            "within_bound": err <= ramp_error_bound(f, n),
        })
    errs = [r["error"] for r in sorted(rows, key=lambda r: r["n"])]
    monotone = all(b <= a for a, b in zip(errs, errs[1:]))
    return {"levels": rows, "monotone": monotone}, monotone and all(r["within_bound"] for r in rows)


def cmd_egorov(inp: dict, ctx: dict) -> tuple[dict, bool]:
    kind = _require(inp, "kind")
    a = _interval_set(_require(inp, "A"), "A")
    eps = _num(_require(inp, "eps"), "eps", positive=True)
    j_max = _int(inp.get("J_max", 10**6), "J_max", 1)
    levels = _int(inp.get("levels", 8), "levels", 1)
    seq = tuple(_step(s, "sequence") for s in inp.get("sequence", []))
    limit = inp.get("limit")
    if limit is not None:
        limit = _step(limit, "limit")
    try:
        spec = FunctionSequenceSpec(
            kind, a, dict(inp.get("params", {})), seq, limit, bool(inp.get("tail_monotone", True))
        )
    except (ValueError, TypeError) as e:
        raise ValidationError(str(e)) from None
    try:
        r = egorov_exceptional(spec, eps, j_max, levels)
    except EgorovBudgetError as e:
        return {"error": str(e), "level": e.level}, False
    res = {
        "exceptional": _set_out(r.exceptional),
        "measure": _f(r.measure),
        "n_of_k": {str(k): n for k, n in r.n_of_k.items()},
        "sup_at_n": {str(k): v for k, v in r.sup_at_n.items()},
        "truncated": r.truncated,
    }
    return res, r.measure < exact(eps) and r.uniform_ok()


def cmd_lebesgue_scan(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    h = _num(_require(inp, "grid_step"), "grid_step", positive=True)
    sched = _schedule(inp.get("schedule"))
    w = f.support_window()
    window = None if w is None else Interval(exact(w.lo) - exact(h), exact(w.hi) + exact(h))
    scan = non_lebesgue_scan(f, h, sched, window)
    bound = 4 * (exact(h) + sched.tail()[0]) * len(f.breakpoints)
    res = {
        "grid_points": scan.points,
        "flagged_points": [_f(x) for x in scan.flagged_points],
        "flagged_set": _set_out(scan.flagged_set),
        "measure": _f(scan.measure),
        "bound": _f(bound),
    }
    if ctx.get("trace_path") and inp.get("trace_points"):
        from .averaging import is_lebesgue_pt

        rows = []
        for x in inp["trace_points"]:
            for r, d in is_lebesgue_pt(f, _num(x, "trace_points"), sched).trace:
                rows.append([x, r, d])
        _write_csv(ctx["trace_path"], ["x", "radius", "davg"], rows)
    return res, scan.measure <= bound


def cmd_ftc(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    a = inp.get("a")
    if a is not None:
        a = _num(a, "a")
    sched = _schedule(inp.get("schedule"))
    pv = inp.get("probe", {})
    points = [_num(x, "points") for x in _require(inp, "points")]
    rows, trace = [], []
    for x in points:
        probe = DerivativeProbe.geometric(
            x, _num(pv.get("h0", 1), "probe.h0", True), _num(pv.get("factor", 0.5), "probe.factor", True),
            _int(pv.get("steps", 24), "probe.steps", 1), bool(pv.get("two_sided", True)),
        )
        try:
            r = ftc1_check(f, a, probe, sched)
        except ValueError as e:
            raise ValidationError(str(e)) from None
        rows.append({
            "x": x,
            "derivative_estimate": _f(r.derivative_estimate),
            "f_at_x": _f(r.f_at_x),
            "lebesgue_pt_status": r.lebesgue_pt_status.value,
            "skipped": r.skipped,
            "pass": r.passed,
        })
        trace += [[x, h, q] for h, q in r.trace]
    if ctx.get("trace_path"):
        _write_csv(ctx["trace_path"], ["x", "h", "quotient"], trace)
    return {"points": rows}, all(r["pass"] for r in rows)


def cmd_density(inp: dict, ctx: dict) -> tuple[dict, bool]:
    a = _interval_set(_require(inp, "A"), "A")
    h = _num(_require(inp, "grid_step"), "grid_step", positive=True)
    sched = _schedule(inp.get("schedule"))
    r = density_check(a, h, sched)
    res = {
        "grid_points": r.points,
        "density_one": r.ones,
        "density_zero": r.zeros,
        "exceptional_points": [_f(x) for x in r.exceptional_points],
        "exceptional_set": _set_out(r.exceptional_set),
        "exceptional_measure": _f(r.exceptional_measure),
        "bound": _f(r.bound),
    }
    if ctx.get("trace_path") and inp.get("trace_points"):
        from .ftc import density_trace

        rows = []
        for x in inp["trace_points"]:
            rows += [[x, rr, d] for rr, d in density_trace(a, _num(x, "trace_points"), sched)]
        _write_csv(ctx["trace_path"], ["x", "radius", "density"], rows)
    return res, r.holds


def cmd_ldt(inp: dict, ctx: dict) -> tuple[dict, bool]:
    f = _step(_require(inp, "f"))
    k_max = _int(inp.get("k_max", 0), "k_max")
    a = _num(_require(inp, "a"), "a", positive=True)
    n_approx = _int(inp.get("n_approx", 16), "n_approx", 1)
    h = _num(_require(inp, "grid_step"), "grid_step", positive=True)
    sched = _schedule(inp.get("schedule"))
    reports = ldt_full_scan(f, k_max, a, n_approx, h, sched)
    rows = [
        {
            "k": r.k,
            "approximant_count": r.approximant_count,
            "l1_errors": [_f(e) for e in r.l1_errors],
            "markov_bounds": [_f(b) for b in r.markov_bounds],
            "maximal_bounds": [_f(b) for b in r.maximal_bounds],
            "flagged_measure": _f(r.flagged_measure),
            "grid_slack": _f(r.grid_slack),
            "consistent": r.consistent,
            "monotone": r.monotone,
        }
        for r in reports
    ]
    if ctx.get("trace_path"):
        csv_rows = []
        for r in reports:
            for n, (m, x) in enumerate(zip(r.markov_bounds, r.maximal_bounds), start=1):
                csv_rows.append([r.k, n, m, x, r.flagged_measure])
        _write_csv(ctx["trace_path"], ["k", "n", "markov_bound", "maximal_bound", "flagged_measure"], csv_rows)
    return {"reports": rows}, all(r["consistent"] and r["monotone"] for r in rows)


COMMANDS: dict[str, Callable[[dict, dict], tuple[dict, bool]]] = {
    "measure": cmd_measure,
    "integrate": cmd_integrate,
    "markov": cmd_markov,
    "vitali": cmd_vitali,
    "maximal": cmd_maximal,
    "urysohn": cmd_urysohn,
    "tietze": cmd_tietze,
    "lusin": cmd_lusin,
    "approx-l1": cmd_approx_l1,
    "egorov": cmd_egorov,
    "lebesgue-scan": cmd_lebesgue_scan,
    "ftc": cmd_ftc,
    "density": cmd_density,
    "ldt": cmd_ldt,
}


def _resolve(path: str | os.PathLike) -> Path:
    p = Path(path)
    base = os.environ.get(OUTPUT_ENV)
    if not p.is_absolute() and base:
        p = Path(base) / p
    return p


def _dump(report: dict, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def load_scenario(path: str | os.PathLike) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{path}: {e}") from None
    if not isinstance(data, dict) or "command" not in data:
        raise ScenarioError(f"{path}: expected an object with a 'command' field")
    return data


def run_scenario(data: dict, default_output: str | None = None) -> tuple[int, dict]:
    """Execute a parsed scenario; returns ``(exit_code, report)`` and writes the report."""
    command = data.get("command")
    if command not in COMMANDS:
        raise ValidationError(f"unknown command {command!r}")
    inputs = data.get("inputs", {})
    if not isinstance(inputs, dict):
        raise ValidationError("inputs must be an object")
    seed = data.get("seed", 0)
    _int(seed, "seed")
    ctx = {}
    if data.get("trace_path"):
        ctx["trace_path"] = _resolve(data["trace_path"])
    try:
        results, passed = COMMANDS[command](inputs, ctx)
    except ValidationError:
        raise
    except (ValueError, TypeError, KeyError, IndexError) as e:
        raise ValidationError(str(e)) from None
    report = {
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "results": results,
        "passed": passed,
        "version": __version__,
    }
    out = data.get("output_path", default_output)
    if out:
        _dump(report, _resolve(out))
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), report


# -- sweeps ------------------------------------------------------------------


def _sweep_markov(rng: random.Random) -> bool:
    f = random_step_function(rng)
    return all(markov_check(f, round(rng.uniform(0.01, 10), 3)).holds for _ in range(10))


def _sweep_vitali(rng: random.Random) -> bool:
    balls = random_balls(rng)
    sel = vitali_finite(balls)
    return verify_vitali(balls, sel).ok and tuple(sorted(sel)) in set(vitali_valid_subcollections(balls))


def _sweep_maximal(rng: random.Random) -> bool:
    f = random_step_function(rng)
    return all(maximal_inequality_check(f, Fraction(2) ** e).holds for e in range(-4, 5))


def _sweep_urysohn(rng: random.Random) -> bool:
    a, b = random_closed_pair(rng)
    props = urysohn_properties(a, b, urysohn_function(a, b))
    return all(props[k] for k in ("zero_on_A", "one_on_B", "range_ok", "lipschitz_ok"))


def _sweep_lusin(rng: random.Random) -> bool:
    f = random_step_function(rng)
    a = random_nonempty_interval_set(rng)
    eps = round(rng.uniform(0.001, 1), 3)
    k = lusin_compact(f, a, eps)
    return lusin_gap(a, k) < exact(eps) and all(b not in k for b in f.breakpoints)


def _sweep_approx(rng: random.Random) -> bool:
    f = random_step_function(rng)
    w = f.support_window()
    e_set = IntervalSet((Interval(exact(w.lo) - 1, exact(w.hi) + 1),))
    errs = []
    for n in (1, 2, 4, 8, 16, 32, 64):
        err = abs_diff_integral(f, continuous_approx_l1(f, n), e_set)
        if err != ramp_error(f, n) or err > ramp_error_bound(f, n):
            return False
        errs.append(err)
    return all(b <= a for a, b in zip(errs, errs[1:]))


def _sweep_regularity(rng: random.Random) -> bool:
    d = random_interval_set(rng)
    eps = round(rng.uniform(0.001, 0.999), 3)
    n = rng.randint(1, 50)
    u, v, k = outer_regularize(d, eps), inner_regularize(d, eps), compact_exhaustion(d, n)
    return (
        not (d - u) and not (v - d) and (u - d).measure() < exact(eps)
        and (d - v).measure() < exact(eps) and not (k - d)
        and d.measure() - k.measure() <= Fraction(1, n)
    )


def _sweep_measure(rng: random.Random) -> bool:
    s, t = random_interval_set(rng), random_interval_set(rng)
    w = Interval(-10, 10)
    ok = (s | t).measure() == s.measure() + t.measure() - (s & t).measure()
    ok &= (s | t).complement_within(w) == s.complement_within(w) & t.complement_within(w)
    return ok and normalize(s.pairs()) == s


SWEEPS: dict[str, Callable[[random.Random], bool]] = {
    "markov": _sweep_markov,
    "vitali": _sweep_vitali,
    "maximal": _sweep_maximal,
    "urysohn": _sweep_urysohn,
    "lusin": _sweep_lusin,
    "approx-l1": _sweep_approx,
    "regularity": _sweep_regularity,
    "measure": _sweep_measure,
}


def sweep(command: str, count: int, seed: int) -> dict:
    """Run ``count`` seeded random instances of a check and aggregate them."""
    if command not in SWEEPS:
        raise ValidationError(f"unknown sweep command {command!r}")
    if count < 1:
        raise ValidationError("count must be at least 1")
    rng = random.Random(seed)
    failures = [i for i in range(count) if not SWEEPS[command](rng)]
    return {
        "command": command,
        "count": count,
        "seed": seed,
        "holds": count - len(failures),
        "failures": failures,
        "passed": not failures,
        "version": __version__,
    }


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="ldtkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="action", required=True)
    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--out", help="report path when the scenario has no output_path")
    p_sweep = sub.add_parser("sweep", help="run a seeded random sweep")
    p_sweep.add_argument("command", choices=sorted(SWEEPS))
    p_sweep.add_argument("--count", type=int, default=100)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", help="report path")
    args = parser.parse_args(argv)

    if args.action == "run":
        try:
            data = load_scenario(args.scenario)
            code, report = run_scenario(data, args.out)
        except ScenarioError as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_PARSE
        except ValidationError as e:
            print(f"invalid scenario: {e}", file=sys.stderr)
            return EXIT_VALIDATION
        print(f"{report['command']}: {'pass' if report['passed'] else 'FAIL'}")
        return code

    try:
        report = sweep(args.command, args.count, args.seed)
    except ValidationError as e:
        print(f"invalid sweep: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.out:
        _dump(report, _resolve(args.out))
    print(f"{args.command}: {report['holds']}/{report['count']} hold")
    return EXIT_OK if report["passed"] else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
