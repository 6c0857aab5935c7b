"""Executable checks of the reduction from quantum states to probability vectors.

The sharp bound is the negated minimum of ``H(q) - H(p)`` over pairs of
probability vectors at total variation distance ``t``. The minimisation is
carried out in stages:

1. the positive part of ``p - q`` may be taken to sit on one coordinate
   (checked by :func:`rank1_delta_check`);
2. after the orthogonal parts are collapsed, the remaining objective in the
   weight ``s1`` is :func:`hs1_objective`, minimised in closed form by
   :func:`optimal_s1`;
3. the first coordinate ``p1`` is then chosen optimally, giving two candidate
   values of which the second is always smaller (:func:`staged_minimum`).

:func:`brute_force_max_diff` is an independent exhaustive search on a simplex
grid, and :func:`mirsky_bracket_check` covers the step that reduces
non-commuting pairs to commuting ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import sharp_bound
from .entropy import h_scalar, prob_vector, shannon_entropy, spectrum, trace_distance, tv_distance
from .errors import (
    DimensionMismatchError,
    GridTooFineError,
    InfeasibleDeltaMinusError,
    InvalidDimensionError,
    NotSortedError,
    OutOfRangeError,
)

RANGE_TOL = 1e-12
BRACKET_TOL = 1e-10
DEFAULT_PAIR_BUDGET = 10**8


# -- non-commuting to commuting ---------------------------------------------


def permutation_extremes(lam_rho, lam_sigma):
    """Smallest and largest trace distance reachable by rotating one spectrum.

    For fixed spectra the trace distance is smallest when both are sorted the
    same way and largest when one is reversed.
    """
    lam_rho = prob_vector(lam_rho)
    lam_sigma = prob_vector(lam_sigma)
    if lam_rho.shape != lam_sigma.shape or lam_rho.ndim != 1:
        raise DimensionMismatchError(f"spectra shapes differ: {lam_rho.shape} vs {lam_sigma.shape}")
    for name, lam in (("lam_rho", lam_rho), ("lam_sigma", lam_sigma)):
        if np.any(np.diff(lam) > 0.0):
            raise NotSortedError(f"{name} is not sorted non-increasing: {lam}")
    t_min = tv_distance(lam_rho, lam_sigma)
    t_max = tv_distance(lam_rho, lam_sigma[::-1])
    return t_min, t_max


def mirsky_bracket_check(rho, sigma) -> bool:
    """True iff ``trace_distance(rho, sigma)`` lies between the permutation extremes."""
    rho = np.asarray(rho, dtype=np.complex128)
    sigma = np.asarray(sigma, dtype=np.complex128)
    if rho.shape != sigma.shape:
        raise DimensionMismatchError(f"shapes differ: {rho.shape} vs {sigma.shape}")
    t_min, t_max = permutation_extremes(spectrum(rho), spectrum(sigma))
    t = trace_distance(rho, sigma)
    return bool(t_min - BRACKET_TOL <= t <= t_max + BRACKET_TOL)


def mirsky_brackets(rho, sigma):
    """Vectorised bracket for stacks ``(n, d, d)``: returns ``(t_min, t, t_max)`` arrays."""
    lam_r = spectrum(rho)
    lam_s = spectrum(sigma)
    t_min = 0.5 * np.abs(lam_r - lam_s).sum(axis=-1)
    t_max = 0.5 * np.abs(lam_r - lam_s[..., ::-1]).sum(axis=-1)
    return t_min, trace_distance(rho, sigma), t_max


# -- staged minimisation ------------------------------------------------------


def _in_range(name, x, lo, hi):
    if not (lo - RANGE_TOL <= x <= hi + RANGE_TOL):
        raise OutOfRangeError(f"{name}={x!r} outside [{lo}, {hi}]")
    return min(max(float(x), lo), hi)


def _h(x):
    # tolerate round-off just outside [0, 1] in composed arguments
    return h_scalar(min(max(x, 0.0), 1.0)) if -RANGE_TOL <= x <= 1.0 + RANGE_TOL else h_scalar(x)


def hs1_objective(dim: int, t: float, p1: float, s1: float) -> float:
    """Objective left after collapsing the orthogonal directions, as a function of ``s1``.

    ``H(1-p1-t) - H(1-p1-t(1-s1)) - t(1-s1) log2(d-2) - H(t(1-s1))``
    """
    if int(dim) != dim or dim < 3:
        raise OutOfRangeError(f"hs1_objective needs dim >= 3, got {dim!r}")
    t = _in_range("t", t, 0.0, 1.0)
    p1 = _in_range("p1", p1, 0.0, 1.0 - t)
    s1 = _in_range("s1", s1, 0.0, 1.0)
    moved = t * (1.0 - s1)
    return (
        _h(1.0 - p1 - t)
        - _h(1.0 - p1 - moved)
        - moved * math.log2(dim - 2)
        - _h(moved)
    )


def s1_threshold(dim: int, p1: float) -> float:
    """Value of ``t(1-s1)`` at the stationary point, ``(d-2)(1-p1)/(d-1)``."""
    return (dim - 2) * (1.0 - p1) / (dim - 1)


def optimal_s1(dim: int, t: float, p1: float):
    """Closed-form minimiser of :func:`hs1_objective` over ``s1 in [0, 1]``.

    Returns ``(s1_star, min_value)``. Below the threshold ``(d-2)(1-p1)/(d-1)``
    the stationary point is infeasible and the minimum sits at ``s1 = 0``;
    at or above it the stationary point itself is feasible.
    """
    if int(dim) != dim or dim < 3:
        raise OutOfRangeError(f"optimal_s1 needs dim >= 3, got {dim!r}")
    t = _in_range("t", t, 0.0, 1.0)
    if t <= 0.0:
        raise OutOfRangeError("optimal_s1 needs t > 0")
    p1 = _in_range("p1", p1, 0.0, 1.0 - t)
    x = s1_threshold(dim, p1)
    if t < x:
        return 0.0, -t * math.log2(dim - 2) - _h(t)
    s1_star = 1.0 - x / t
    value = (
        _h(1.0 - p1 - t)
        - _h((1.0 - p1) / (dim - 1))
        - x * math.log2(dim - 2)
        - _h(x)
    )
    return s1_star, value


def p1_objective(dim: int, t: float, p1: float) -> float:
    """``H(q) - H(p)`` after the optimal ``s1``, as a function of the first coordinate."""
    t = _in_range("t", t, 0.0, 1.0)
    p1 = _in_range("p1", p1, 0.0, 1.0 - t)
    head = _h(p1 + t) - _h(p1)
    if dim == 2:
        return head + _h(1.0 - p1 - t) - _h(1.0 - p1)
    if t == 0.0:
        return 0.0
    return head + optimal_s1(dim, t, p1)[1]


def log_derivative_ratio(dim: int, t: float, p1: float) -> float:
    """Argument of the logarithm giving the slope of the case (ii) objective in ``p1``."""
    return (dim - 1) * p1 * (1.0 - p1 - t) / ((1.0 - p1) * (p1 + t))


def threshold_log_derivative_ratio(dim: int, p1: float) -> float:
    """:func:`log_derivative_ratio` at ``t = (d-2)(1-p1)/(d-1)``, simplified.

    Equals ``(d-1) p1 / (d-2+p1)``, which is below 1 for every ``p1 < 1``.
    """
    return (dim - 1) * p1 / (dim - 2 + p1)


@dataclass(frozen=True)
class StagedMinimum:
    dim: int
    t: float
    v1: Optional[float]
    v2: float
    minimum: float


def staged_minimum(dim: int, t: float) -> StagedMinimum:
    """Minimum of ``H(q) - H(p)`` at distance ``t``, assembled stage by stage.

    ``v1`` is the best value when the orthogonal weight stays below the
    stationary point (only possible for ``d >= 3`` and ``t <= (d-2)/(d-1)``),
    attained at ``p1 = 1 - (d-1)t/(d-2)``. ``v2`` is the best value in the
    complementary case, attained at ``p1 = 1 - t``. Both are computed through
    :func:`p1_objective`, not from a closed form.
    """
    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"staged_minimum needs dim >= 2, got {dim!r}")
    dim = int(dim)
    t = _in_range("t", t, 0.0, 1.0)
    v1 = None
    if dim >= 3 and t <= (dim - 2) / (dim - 1):
        p1 = max(1.0 - (dim - 1) * t / (dim - 2), 0.0)
        v1 = _h(p1 + t) - _h(p1) - t * math.log2(dim - 2) - _h(t)
    v2 = p1_objective(dim, t, 1.0 - t)
    minimum = v2 if v1 is None else min(v1, v2)
    return StagedMinimum(dim=dim, t=t, v1=v1, v2=v2, minimum=minimum)


# -- rank-one positive part -----------------------------------------------------


def rank1_delta_check(p, delta_minus, trials: int = 1000, seed: int = 0, tol: float = 1e-10) -> bool:
    """Probe that ``H(p + delta_plus - delta_minus) - H(p)`` is minimised at a vertex.

    The feasible ``delta_plus`` form the simplex ``t * conv{e_k : delta_minus[k] = 0}``.
    The best vertex is compared against ``trials`` random interior points drawn
    uniformly (Dirichlet(1, ..., 1)) on that face.
    """
    p = prob_vector(p)
    dm = np.asarray(delta_minus, dtype=float)
    if dm.shape != p.shape:
        raise DimensionMismatchError(f"shapes differ: {p.shape} vs {dm.shape}")
    if np.any(dm < 0.0) or np.any(dm > p + RANGE_TOL):
        raise InfeasibleDeltaMinusError("delta_minus must satisfy 0 <= delta_minus <= p")
    free = np.nonzero(dm == 0.0)[0]
    if free.size == 0:
        raise InfeasibleDeltaMinusError("delta_minus has no zero coordinate for delta_plus")
    t = float(dm.sum())
    base = shannon_entropy(p)
    base_q = p - dm

    def objective(plus):
        q = np.clip(base_q + plus, 0.0, 1.0)
        return np.sum(h_scalar(q), axis=-1) - base

    vertices = np.zeros((free.size, p.size))
    vertices[np.arange(free.size), free] = t
    best_vertex = np.min(objective(vertices))
    if trials <= 0:
        return True
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(free.size), size=trials)
    interior = weights @ vertices
    return bool(best_vertex <= np.min(objective(interior)) + tol)


# -- brute-force oracle -------------------------------------------------------


@dataclass(frozen=True)
class OracleResult:
    """Best pair found by exhaustive search on the simplex grid.

    ``continuity_constant`` is ``C`` in the guarantee
    ``max_diff >= sharp_bound(d, t) - C * grid_step``: rounding the extremal
    pair to the grid moves each of its ``d`` coordinates by at most one cell,
    and one cell changes a term ``-x log2 x`` by at most ``omega``, the largest
    such change on the grid, so ``C = d * omega / grid_step``.
    """

    max_diff: float
    argmax_p: np.ndarray
    argmax_q: np.ndarray
    grid_step: float
    t: float
    continuity_constant: float
    pairs_evaluated: int


def simplex_grid(dim: int, n: int) -> np.ndarray:
    """All integer compositions of ``n`` into ``dim`` non-negative parts (lexicographic)."""
    if dim == 1:
        return np.array([[n]])
    rows = []
    for first in range(n + 1):
        rest = simplex_grid(dim - 1, n - first)
        rows.append(np.column_stack([np.full(len(rest), first), rest]))
    return np.vstack(rows)


def _cells(grid_step):
    n = round(1.0 / grid_step)
    if n < 1 or abs(n * grid_step - 1.0) > 1e-9:
        raise OutOfRangeError(f"grid_step {grid_step!r} must divide 1 into an integer number of cells")
    return n


def brute_force_max_diff(
    dim: int,
    t: float,
    grid_step: float,
    budget: int = DEFAULT_PAIR_BUDGET,
    chunk: int = 256,
) -> OracleResult:
    """Maximise ``|H(p) - H(q)|`` over grid pairs with ``|tv(p, q) - t| < grid_step``.

    Grid distances are multiples of ``grid_step``, so an on-grid ``t`` is
    matched exactly and an off-grid ``t`` by its two neighbouring grid values.

    Exhaustive over ordered pairs of grid points, in lexicographic order of
    their grid indices; ties keep the first pair found, so the result is
    deterministic.
    """
    if dim not in (2, 3):
        raise InvalidDimensionError(f"brute-force oracle supports dim 2 or 3, got {dim!r}")
    t = _in_range("t", t, 0.0, 1.0)
    n = _cells(grid_step)
    grid = simplex_grid(dim, n)
    m = len(grid)
    if m * m > budget:
        raise GridTooFineError(f"{m * m} pairs exceed the budget of {budget}")
    probs = grid / n
    ent = np.sum(h_scalar(probs), axis=1)
    # tv(p, q) = L1 / (2n) for integer grid vectors; |tv - t| < grid_step is |L1 - 2nt| < 2
    target = 2 * n * t

    best, best_i, best_j = -1.0, -1, -1
    for start in range(0, m, chunk):
        block = grid[start:start + chunk]
        l1 = np.abs(block[:, None, :] - grid[None, :, :]).sum(axis=2)
        ok = np.abs(l1 - target) < 2.0 - 1e-9
        gap = np.where(ok, np.abs(ent[start:start + chunk, None] - ent[None, :]), -1.0)
        flat = int(np.argmax(gap))
        value = gap.flat[flat]
        if value > best:
            best = float(value)
            best_i, best_j = start + flat // m, flat % m
    if best_i < 0:
        raise OutOfRangeError(f"no grid pair within {grid_step} of t={t}")

    step = 1.0 / n
    cell_moves = h_scalar(np.minimum(np.arange(n) * step + step, 1.0)) - h_scalar(np.arange(n) * step)
    omega = float(np.max(np.abs(cell_moves)))
    return OracleResult(
        max_diff=best,
        argmax_p=probs[best_i],
        argmax_q=probs[best_j],
        grid_step=grid_step,
        t=t,
        continuity_constant=dim * omega / step,
        pairs_evaluated=m * m,
    )


def oracle_lower_guarantee(result: OracleResult, dim: int) -> float:
    """``sharp_bound(d, t) - C * grid_step``; the oracle's value never falls below this."""
    return sharp_bound(dim, result.t) - result.continuity_constant * result.grid_step
