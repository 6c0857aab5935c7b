"""Entropies (in bits) and distances between states and distributions."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError, InvalidStateError, NegativeEigenvalueError, OutOfRangeError
from .linalg import PSD_TOL, TRACE_TOL, check_hermitian, eigvals_hermitian

PROB_NEG_TOL = 1e-12
PROB_SUM_TOL = 1e-10
SCALAR_TOL = 1e-12


class SignedDecomposition(NamedTuple):
    """Positive and negative parts of ``p - q``, with disjoint supports."""

    plus: np.ndarray
    minus: np.ndarray


def h_scalar(x):
    """``-x log2 x`` with the continuity convention ``h(0) = 0``.

    Accepts scalars or arrays. Values within 1e-12 outside ``[0, 1]`` are
    clamped; anything further out raises :class:`OutOfRangeError`.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -SCALAR_TOL) or np.any(arr > 1.0 + SCALAR_TOL) or np.any(np.isnan(arr)):
        raise OutOfRangeError(f"h_scalar argument outside [0, 1]: {x!r}")
    arr = np.clip(arr, 0.0, 1.0)
    safe = np.where(arr > 0.0, arr, 1.0)
    out = np.where(arr > 0.0, -arr * np.log2(safe), 0.0)
    return float(out) if out.ndim == 0 else out


def binary_entropy(t):
    """Shannon entropy of the two-point distribution ``(t, 1 - t)``."""
    return h_scalar(t) + h_scalar(1.0 - np.asarray(t, dtype=float))


def prob_vector(p):
    """Validate a probability vector (last axis) and return it with tiny negatives clamped."""
    p = np.asarray(p, dtype=float)
    if p.ndim == 0 or p.shape[-1] < 1:
        raise InvalidStateError("probability vector must have at least one entry")
    if not np.all(np.isfinite(p)):
        raise InvalidStateError("probability vector has non-finite entries")
    if np.any(p < -PROB_NEG_TOL) or np.any(p > 1.0 + PROB_NEG_TOL):
        raise InvalidStateError(f"probability vector entries outside [0, 1]: {p}")
    if np.any(np.abs(p.sum(axis=-1) - 1.0) > PROB_SUM_TOL):
        raise InvalidStateError(f"probability vector does not sum to 1: {p.sum(axis=-1)}")
    return np.clip(p, 0.0, 1.0)


def shannon_entropy(p):
    """Shannon entropy ``-sum p_i log2 p_i`` along the last axis.

    Terms are summed in sorted order, so the result is exactly invariant
    under permutations of ``p``.
    """
    p = np.sort(prob_vector(p), axis=-1)
    return np.sum(h_scalar(p), axis=-1) if p.ndim > 1 else float(np.sum(h_scalar(p)))


def spectrum(rho):
    """Clamped, non-increasing eigenvalues of a density matrix (or stack).

    Eigenvalues in ``[-1e-10, 0)`` are treated as solver noise and set to 0;
    anything more negative raises :class:`NegativeEigenvalueError`.
    """
    rho = check_hermitian(rho)
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.max(np.abs(tr.real - 1.0)) > TRACE_TOL or np.max(np.abs(tr.imag)) > TRACE_TOL:
        raise InvalidStateError(f"density matrix trace is not 1 (got {tr})")
    lam = eigvals_hermitian(rho)
    if np.min(lam) < -PSD_TOL:
        raise NegativeEigenvalueError(f"eigenvalue {np.min(lam):.3e} below -{PSD_TOL}")
    return np.clip(lam, 0.0, None)


def von_neumann_entropy(rho):
    """Von Neumann entropy ``-Tr[rho log2 rho]`` in bits.

    Computed as the Shannon entropy of the clamped spectrum. Stacks of shape
    ``(n, d, d)`` return an array of ``n`` entropies.
    """
    # ascending order matches the summation order of shannon_entropy
    lam = np.minimum(spectrum(rho)[..., ::-1], 1.0)
    ent = np.sum(h_scalar(lam), axis=-1)
    return float(ent) if ent.ndim == 0 else ent


def trace_distance(rho, sigma):
    """Half the trace norm of ``rho - sigma``, a number in ``[0, 1]``."""
    rho = np.asarray(rho, dtype=np.complex128)
    sigma = np.asarray(sigma, dtype=np.complex128)
    if rho.shape != sigma.shape:
        raise DimensionMismatchError(f"shapes differ: {rho.shape} vs {sigma.shape}")
    lam = eigvals_hermitian(rho - sigma)
    dist = 0.5 * np.sum(np.abs(lam), axis=-1)
    return float(dist) if dist.ndim == 0 else dist


def tv_distance(p, q):
    """Total variation distance ``(1/2) sum |p_i - q_i|``."""
    p = prob_vector(p)
    q = prob_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"shapes differ: {p.shape} vs {q.shape}")
    dist = 0.5 * np.sum(np.abs(p - q), axis=-1)
    return float(dist) if dist.ndim == 0 else dist


def signed_decompose(p, q) -> SignedDecomposition:
    """Split ``p - q`` into non-negative parts with ``p - q = plus - minus``."""
    p = prob_vector(p)
    q = prob_vector(q)
    if p.shape != q.shape:
        raise DimensionMismatchError(f"shapes differ: {p.shape} vs {q.shape}")
    delta = p - q
    return SignedDecomposition(np.maximum(delta, 0.0), np.maximum(-delta, 0.0))

