"""Continuity bounds for the von Neumann entropy and the states that saturate them.

All three bounds bound ``|S(rho) - S(sigma)|`` in bits for ``d``-dimensional
states at trace distance ``t``:

* :func:`fannes_bound`, ``2t log2 d - 2t log2(2t)``, valid only for ``t <= 1/(2e)``;
* :func:`fannes_weak_bound`, ``2t log2 d + 1/(e ln 2)``, valid for all ``t``;
* :func:`sharp_bound`, ``t log2(d-1) + H(t, 1-t)``, attained for every ``t``
  by :func:`extremal_pair`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .entropy import binary_entropy, h_scalar
from .errors import InvalidDimensionError, OutOfRangeError, OutOfValidityRangeError

FANNES_T_MAX = 1.0 / (2.0 * math.e)
WEAK_CONSTANT = 1.0 / (math.e * math.log(2.0))
T_TOL = 1e-12


def _check_t(t, upper=1.0):
    t = float(t)
    if not (-T_TOL <= t <= upper + T_TOL):
        raise OutOfRangeError(f"trace distance must lie in [0, {upper}], got {t!r}")
    return min(max(t, 0.0), upper)


def _check_dim(dim, t, minimum=1):
    if int(dim) != dim or dim < minimum:
        raise InvalidDimensionError(f"dimension must be an integer >= {minimum}, got {dim!r}")
    if dim == 1 and t > 0.0:
        raise InvalidDimensionError("a one-dimensional system only admits t = 0")
    return int(dim)


def fannes_bound(dim: int, t: float) -> float:
    """Fannes' original bound; raises :class:`OutOfValidityRangeError` past ``t = 1/(2e)``."""
    if float(t) > FANNES_T_MAX:
        raise OutOfValidityRangeError(
            f"Fannes' bound only holds for t <= 1/(2e) = {FANNES_T_MAX:.6f}; got {t!r}. "
            "Use fannes_weak_bound instead."
        )
    t = _check_t(t, FANNES_T_MAX)
    dim = _check_dim(dim, t)
    if t == 0.0:
        return 0.0
    return 2.0 * t * math.log2(dim) - 2.0 * t * math.log2(2.0 * t)


def fannes_weak_bound(dim: int, t: float) -> float:
    """The weaker Fannes-type bound that holds over the whole range ``0 <= t <= 1``."""
    t = _check_t(t)
    dim = _check_dim(dim, t)
    return 2.0 * t * math.log2(dim) + WEAK_CONSTANT


def sharp_bound(dim: int, t: float) -> float:
    """The sharp bound ``t log2(d-1) + H((t, 1-t))``.

    For ``d = 2`` this is exactly the binary entropy of ``t``. A one-dimensional
    system only admits ``t = 0`` and returns 0.
    """
    t = _check_t(t)
    dim = _check_dim(dim, t)
    if dim == 1:
        return 0.0
    return t * math.log2(dim - 1) + float(binary_entropy(t))


def sharp_bound_curve(dim: int, t) -> np.ndarray:
    """Vectorised :func:`sharp_bound` over an array of ``t`` values."""
    t = np.asarray(t, dtype=float)
    if np.any(t < -T_TOL) or np.any(t > 1.0 + T_TOL):
        raise OutOfRangeError("trace distances must lie in [0, 1]")
    if dim < 2:
        raise InvalidDimensionError("sharp_bound_curve needs dim >= 2")
    t = np.clip(t, 0.0, 1.0)
    return t * math.log2(dim - 1) + h_scalar(t) + h_scalar(1.0 - t)


def extremal_pair(dim: int, t: float):
    """Commuting states at trace distance ``t`` whose entropy gap equals :func:`sharp_bound`.

    Returns ``(rho, sigma)`` with ``rho = Diag(1-t, t/(d-1), ..., t/(d-1))`` and
    ``sigma = Diag(1, 0, ..., 0)``.
    """
    if int(dim) != dim or dim < 2:
        raise InvalidDimensionError(f"extremal_pair needs an integer dim >= 2, got {dim!r}")
    dim = int(dim)
    t = _check_t(t)
    rho_diag = np.full(dim, t / (dim - 1))
    rho_diag[0] = 1.0 - t
    sigma_diag = np.zeros(dim)
    sigma_diag[0] = 1.0
    return np.diag(rho_diag).astype(np.complex128), np.diag(sigma_diag).astype(np.complex128)


@dataclass(frozen=True)
class BoundReport:
    t: float
    dim: int
    fannes: Optional[float]
    fannes_weak: float
    sharp: float


def bound_report(dim: int, t: float) -> BoundReport:
    """Evaluate all three bounds at ``(dim, t)``; ``fannes`` is ``None`` past its range."""
    fannes = fannes_bound(dim, t) if t <= FANNES_T_MAX else None
    return BoundReport(
        t=float(t),
        dim=int(dim),
        fannes=fannes,
        fannes_weak=fannes_weak_bound(dim, t),
        sharp=sharp_bound(dim, t),
    )
