"""Scatter experiments, bound tables, and the verification suites behind the CLI."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence

import numpy as np

from .bounds import FANNES_T_MAX, bound_report, extremal_pair, fannes_bound, sharp_bound, sharp_bound_curve
from .classical import (
    brute_force_max_diff,
    log_derivative_ratio,
    mirsky_brackets,
    staged_minimum,
    threshold_log_derivative_ratio,
)
from .entropy import trace_distance, von_neumann_entropy
from .errors import BoundViolationError
from .linalg import conjugate_by_unitary
from .sampling import Measure, SamplerConfig, sample_densities, sample_unitaries

VIOLATION_TOL = 1e-9
CHUNK = 5000


class ScatterRecord(NamedTuple):
    t: float
    delta: float


def _pair_batch(config: SamplerConfig, start: int, stop: int):
    idx = np.arange(start, stop, dtype=np.uint64)
    return sample_densities(config, 2 * idx), sample_densities(config, 2 * idx + 1)


def scatter_arrays(dim: int, samples: int, seed: int, measure=Measure.RANK_MIXTURE, start: int = 0):
    """``(t, delta)`` arrays for pairs ``start .. start + samples - 1``, without bound checks.

    Pair ``i`` is ``(rho, sigma)`` = density samples ``2i`` and ``2i + 1`` of the stream.
    """
    config = SamplerConfig(seed=seed, dim=dim, measure=measure)
    rho, sigma = _pair_batch(config, start, start + samples)
    t = np.atleast_1d(trace_distance(rho, sigma))
    delta = np.abs(np.atleast_1d(von_neumann_entropy(rho)) - np.atleast_1d(von_neumann_entropy(sigma)))
    return t, delta


def run_scatter(
    dim: int,
    samples: int,
    seed: int,
    measure=Measure.RANK_MIXTURE,
    *,
    tol: float = VIOLATION_TOL,
    inject_violation: Optional[int] = None,
) -> Iterator[ScatterRecord]:
    """Yield one :class:`ScatterRecord` per random pair, in index order.

    Raises :class:`BoundViolationError` at the first pair whose entropy gap
    exceeds the sharp bound by more than `tol`. ``inject_violation`` pushes the
    record at that index above the bound, to exercise the abort path.
    """
    if dim < 2:
        raise ValueError("run_scatter needs dim >= 2")
    if samples < 1:
        raise ValueError("run_scatter needs samples >= 1")
    measure = Measure(measure)
    for start in range(0, samples, CHUNK):
        stop = min(start + CHUNK, samples)
        t, delta = scatter_arrays(dim, stop - start, seed, measure, start=start)
        bound = sharp_bound_curve(dim, np.clip(t, 0.0, 1.0))
        if inject_violation is not None and start <= inject_violation < stop:
            k = inject_violation - start
            delta[k] = bound[k] + 10 * tol + 1e-3
        for k in range(stop - start):
            if delta[k] > bound[k] + tol:
                raise BoundViolationError(
                    dim=dim, measure=measure.value, seed=seed, index=start + k,
                    t=float(t[k]), delta=float(delta[k]), bound=float(bound[k]),
                )
            yield ScatterRecord(float(t[k]), float(delta[k]))


def fannes_violations(dim: int, records: Sequence[ScatterRecord], tol: float = VIOLATION_TOL) -> int:
    """Count records inside Fannes' validity range that exceed his bound."""
    return sum(
        1 for r in records
        if r.t <= FANNES_T_MAX and r.delta > fannes_bound(dim, r.t) + tol
    )


# -- output formats -------------------------------------------------------------


def format_value(x: float) -> str:
    """Positional decimal with 12 significant digits."""
    return np.format_float_positional(float(x), precision=12, unique=False, fractional=False, trim="-")


def scatter_csv(records) -> str:
    lines = ["t,delta"]
    lines.extend(f"{format_value(r.t)},{format_value(r.delta)}" for r in records)
    return "\n".join(lines) + "\n"


def emit_bound_table(dim: int, t_values) -> list:
    """Rows ``(t, fannes, fannes_weak, sharp)``; ``fannes`` is ``None`` past ``1/(2e)``."""
    if dim < 2:
        raise ValueError("emit_bound_table needs dim >= 2")
    rows = []
    for t in t_values:
        rep = bound_report(dim, t)
        rows.append((rep.t, rep.fannes, rep.fannes_weak, rep.sharp))
    return rows


def bound_table_csv(rows) -> str:
    lines = ["t,fannes,fannes_weak,sharp"]
    for t, fannes, weak, sharp in rows:
        f = "" if fannes is None else format_value(fannes)
        lines.append(f"{format_value(t)},{f},{format_value(weak)},{format_value(sharp)}")
    return "\n".join(lines) + "\n"


SVG_WIDTH, SVG_HEIGHT, SVG_MARGIN = 800, 600, 50


def scatter_svg(dim: int, records, curve_points: int = 400) -> str:
    """Static SVG: one ``<circle>`` per record, one ``<path>`` per bound curve.

    Axes are linear, ``t`` in ``[0, 1]`` and ``delta`` in ``[0, log2 d]`` (the
    peak of the sharp bound). The Fannes curve is drawn only on ``[0, 1/(2e)]``.
    """
    ymax = sharp_bound(dim, (dim - 1) / dim)
    ymax = max(ymax, fannes_bound(dim, FANNES_T_MAX))
    w = SVG_WIDTH - 2 * SVG_MARGIN
    h = SVG_HEIGHT - 2 * SVG_MARGIN

    def xy(t, y):
        return SVG_MARGIN + t * w, SVG_HEIGHT - SVG_MARGIN - (y / ymax) * h

    def path(ts, ys):
        pts = [xy(t, y) for t, y in zip(ts, ys)]
        return "M " + " L ".join(f"{x:.2f},{y:.2f}" for x, y in pts)

    ts = np.linspace(0.0, 1.0, curve_points)
    tf = np.linspace(0.0, FANNES_T_MAX, curve_points)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" '
        f'height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{w}" height="{h}" fill="none" stroke="black"/>',
        f'<text x="{SVG_WIDTH / 2}" y="{SVG_HEIGHT - 10}" text-anchor="middle">T (d={dim})</text>',
        f'<text x="15" y="{SVG_HEIGHT / 2}" transform="rotate(-90 15 {SVG_HEIGHT / 2})" '
        f'text-anchor="middle">|S(rho) - S(sigma)|, max {ymax:.4f}</text>',
        '<g fill="steelblue" fill-opacity="0.4">',
    ]
    for r in records:
        x, y = xy(r.t, r.delta)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1"/>')
    parts.append("</g>")
    parts.append(f'<path id="sharp" d="{path(ts, sharp_bound_curve(dim, ts))}" fill="none" stroke="red"/>')
    parts.append(
        f'<path id="fannes" d="{path(tf, [fannes_bound(dim, t) for t in tf])}" fill="none" stroke="black"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# -- verification suites ------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: str = ""


@dataclass
class VerifyReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, residual, tolerance, detail="", passed=None):
        ok = residual <= tolerance if passed is None else passed
        self.checks.append(Check(name, bool(ok), float(residual), float(tolerance), detail))

    def lines(self):
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            extra = f" ({c.detail})" if c.detail else ""
            yield f"{status} {c.name}: residual={c.residual:.3e} tol={c.tolerance:.1e}{extra}"

    def failures_json(self) -> str:
        return json.dumps([asdict(c) for c in self.checks if not c.passed], indent=2)


def t_grid(points: int = 101) -> np.ndarray:
    return np.linspace(0.0, 1.0, points)


def verify_saturation(report, dims=range(2, 9), points=101, tol=1e-12):
    worst_t = worst_gap = 0.0
    for d in dims:
        for t in t_grid(points):
            rho, sigma = extremal_pair(d, t)
            worst_t = max(worst_t, abs(trace_distance(rho, sigma) - t))
            gap = abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma))
            worst_gap = max(worst_gap, abs(gap - sharp_bound(d, t)))
    report.add("saturation: trace distance equals t", worst_t, tol)
    report.add("saturation: entropy gap equals sharp bound", worst_gap, tol)


def verify_staged(report, dims=range(2, 9), points=101, tol=1e-12):
    worst_id = 0.0
    worst_order = -math.inf
    for d in dims:
        for t in t_grid(points):
            sm = staged_minimum(d, t)
            worst_id = max(worst_id, abs(sm.minimum + sharp_bound(d, t)))
            if sm.v1 is not None:
                worst_order = max(worst_order, sm.v2 - sm.v1)
    report.add("staged: minimum equals -sharp_bound", worst_id, tol)
    if worst_order > -math.inf:
        report.add("staged: v2 <= v1", max(worst_order, 0.0), tol,
                   detail=f"max(v2 - v1) = {worst_order:.3e}", passed=worst_order <= tol)
    worst_ratio = 0.0
    below_one = True
    for d in dims:
        if d < 3:
            continue
        for p1 in np.linspace(0.01, 0.99, 99):
            t = (d - 2) * (1 - p1) / (d - 1)
            ratio = log_derivative_ratio(d, t, p1)
            worst_ratio = max(worst_ratio, abs(ratio - threshold_log_derivative_ratio(d, p1)))
            below_one &= ratio < 1.0
    report.add("staged: case (ii) slope ratio at threshold", worst_ratio, tol,
               detail="ratio < 1 everywhere" if below_one else "ratio >= 1 somewhere",
               passed=worst_ratio <= tol and below_one)


def verify_oracle(report, cases=((2, 0.0025), (3, 0.01)), t_values=(0.1, 0.25, 0.5, 0.75),
                  lower_tol=0.03, upper_tol=1e-9):
    for d, step in cases:
        for t in t_values:
            res = brute_force_max_diff(d, t, step)
            sb = sharp_bound(d, t)
            shortfall = sb - res.max_diff
            report.add(f"oracle d={d} t={t} step={step}: shortfall below sharp_bound(t)",
                       max(shortfall, 0.0), lower_tol, detail=f"max_diff={res.max_diff:.6f}, sharp={sb:.6f}")
            upper = sharp_bound(d, min(t + step, 1.0))
            report.add(f"oracle d={d} t={t} step={step}: max_diff <= sharp_bound(t + step)",
                       max(res.max_diff - upper, 0.0), upper_tol, detail=f"sharp(t+step)={upper:.6f}")
            band = np.linspace(max(t - step, 0.0), min(t + step, 1.0), 2001)
            envelope = float(np.max(sharp_bound_curve(d, band)))
            report.add(f"oracle d={d} t={t} step={step}: max_diff <= max sharp_bound over band",
                       max(res.max_diff - envelope, 0.0), upper_tol, detail=f"envelope={envelope:.6f}")


def verify_mirsky(report, dims=(2, 3, 4), pairs=10000, seed=2024, tol=1e-10):
    for d in dims:
        rho_cfg = SamplerConfig(seed=seed, dim=d, measure=Measure.RANK_MIXTURE)
        idx = np.arange(pairs, dtype=np.uint64)
        rho = sample_densities(rho_cfg, 2 * idx)
        sigma = conjugate_by_unitary(sample_densities(rho_cfg, 2 * idx + 1), sample_unitaries(rho_cfg, idx))
        t_min, t, t_max = mirsky_brackets(rho, sigma)
        excess = max(float(np.max(t_min - t)), float(np.max(t - t_max)), 0.0)
        report.add(f"mirsky d={d}: {pairs} pairs bracketed", excess, tol)


SUITES = {
    "saturation": verify_saturation,
    "staged": verify_staged,
    "oracle": verify_oracle,
    "mirsky": verify_mirsky,
}


def run_verify(suite: str = "all", **params) -> VerifyReport:
    """Run one suite (or ``"all"``) and collect a :class:`VerifyReport`.

    Keyword parameters are forwarded to the suite function; with ``"all"``
    only ``seed`` is forwarded (to the Mirsky suite).
    """
    if suite not in (*SUITES, "all"):
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)} or 'all'")
    report = VerifyReport(suite)
    if suite == "all":
        for name, fn in SUITES.items():
            extra = {"seed": params["seed"]} if name == "mirsky" and "seed" in params else {}
            fn(report, **extra)
    else:
        SUITES[suite](report, **params)
    return report
