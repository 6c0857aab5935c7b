"""Small dense complex linear algebra for Hermitian matrices.

Matrices are plain ``complex128`` numpy arrays. Every routine that takes a
single ``(d, d)`` matrix also accepts a stack of shape ``(n, d, d)``, which is
how the scatter experiments push tens of thousands of states through the
eigensolver at once.

The eigensolver is a cyclic complex Jacobi method. Each matrix in a stack is
iterated independently, so a matrix gets bit-identical results whether it is
decomposed alone or as part of a larger batch.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidStateError,
    NoConvergenceError,
    NotHermitianError,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-10

JACOBI_TOL = 1e-13
MAX_SWEEPS = 100
MAX_DIM = 64


class EigenResult(NamedTuple):
    """Eigenvalues sorted non-increasing and the matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def _as_square(a, name="matrix"):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim not in (2, 3) or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatchError(
            f"{name} must be square (d, d) or a stack (n, d, d), got shape {a.shape}"
        )
    if a.shape[-1] < 1:
        raise DimensionMismatchError(f"{name} has zero dimension")
    if not np.all(np.isfinite(a)):
        raise InvalidStateError(f"{name} has non-finite entries")
    return a


def hermitian_defect(a):
    """Largest entry of ``|a - a*|``, per matrix for stacks."""
    a = np.asarray(a)
    diff = np.abs(a - np.swapaxes(a, -1, -2).conj())
    return diff.max(axis=(-2, -1))


def check_hermitian(a, tol=HERMITIAN_TOL):
    """Return ``a`` as a complex array, raising if it is not Hermitian within `tol`."""
    a = _as_square(a)
    defect = np.max(hermitian_defect(a))
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian: max |A - A*| = {defect:.3e}")
    return a


def check_unitary(u, tol=UNITARY_TOL):
    """Return ``u`` as a complex array, raising if ``u* u`` is not the identity."""
    u = _as_square(u, "unitary")
    d = u.shape[-1]
    gram = np.swapaxes(u, -1, -2).conj() @ u
    err = np.max(np.abs(gram - np.eye(d)))
    if err > tol:
        raise InvalidStateError(f"matrix is not unitary: max |U*U - 1| = {err:.3e}")
    return u


def check_density_matrix(rho):
    """Validate a density matrix (or stack) and return it as a complex array.

    Checks Hermiticity and unit trace to 1e-12 and positivity of the spectrum
    down to -1e-10.
    """
    rho = check_hermitian(rho)
    tr = np.trace(rho, axis1=-2, axis2=-1)
    if np.max(np.abs(tr.real - 1.0)) > TRACE_TOL or np.max(np.abs(tr.imag)) > TRACE_TOL:
        raise InvalidStateError(f"density matrix trace is not 1 (got {tr})")
    lam = eigvals_hermitian(rho)
    if np.min(lam) < -PSD_TOL:
        raise InvalidStateError(
            f"density matrix is not positive semidefinite: min eigenvalue {np.min(lam):.3e}"
        )
    return rho


def _off_norm(a, offdiag):
    return np.sqrt(np.sum(np.abs(a[:, offdiag]) ** 2, axis=1))


def _rotate(a, v, p, q):
    """Annihilate entry (p, q) of every matrix in the stack ``a`` in place."""
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    apq = a[:, p, q]
    mag = np.abs(apq)
    nz = mag > 0.0
    safe = np.where(nz, mag, 1.0)
    phase = np.where(nz, apq / safe, 1.0)
    tau = (aqq - app) / (2.0 * safe)
    t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
    t = np.where(nz, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # G = Diag(1, conj(phase)) @ [[c, s], [-s, c]] acting on coordinates (p, q)
    cph = phase.conj()
    g_pp = c[:, None]
    g_pq = s[:, None]
    g_qp = (-s * cph)[:, None]
    g_qq = (c * cph)[:, None]

    col_p = a[:, :, p].copy()
    col_q = a[:, :, q].copy()
    a[:, :, p] = col_p * g_pp + col_q * g_qp
    a[:, :, q] = col_p * g_pq + col_q * g_qq

    row_p = a[:, p, :].copy()
    row_q = a[:, q, :].copy()
    a[:, p, :] = row_p * g_pp.conj() + row_q * g_qp.conj()
    a[:, q, :] = row_p * g_pq.conj() + row_q * g_qq.conj()

    a[:, p, q] = np.where(nz, 0.0, a[:, p, q])
    a[:, q, p] = np.where(nz, 0.0, a[:, q, p])
    a[:, p, p] = np.where(nz, a[:, p, p].real, a[:, p, p])
    a[:, q, q] = np.where(nz, a[:, q, q].real, a[:, q, q])

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q].copy()
        v[:, :, p] = vp * g_pp + vq * g_qp
        v[:, :, q] = vp * g_pq + vq * g_qq


def _jacobi(a, want_vectors, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Run cyclic Jacobi sweeps on a stack of Hermitian matrices."""
    n, d, _ = a.shape
    a = 0.5 * (a + np.swapaxes(a, -1, -2).conj())
    v = np.broadcast_to(np.eye(d, dtype=np.complex128), a.shape).copy() if want_vectors else None
    offdiag = ~np.eye(d, dtype=bool)
    thresh = tol * np.linalg.norm(a.reshape(n, -1), axis=1)
    active = np.nonzero(_off_norm(a, offdiag) > thresh)[0]
    sweeps = 0
    while active.size:
        if sweeps >= max_sweeps:
            raise NoConvergenceError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"({active.size} matrices still off-diagonal)"
            )
        sub = a[active]
        vsub = v[active] if want_vectors else None
        for p in range(d - 1):
            for q in range(p + 1, d):
                _rotate(sub, vsub, p, q)
        a[active] = sub
        if want_vectors:
            v[active] = vsub
        sweeps += 1
        still = _off_norm(sub, offdiag) > thresh[active]
        active = active[still]
    values = np.diagonal(a, axis1=1, axis2=2).real.copy()
    return values, v


def _sorted_desc(values, vectors):
    # stable sort on the negated values keeps Jacobi order among ties
    order = np.argsort(-values, axis=-1, kind="stable")
    values = np.take_along_axis(values, order, axis=-1)
    if vectors is not None:
        vectors = np.take_along_axis(vectors, order[:, None, :], axis=-1)
    return values, vectors


def _prepare(a):
    a = check_hermitian(a)
    if a.shape[-1] > MAX_DIM:
        raise DimensionMismatchError(f"dimension {a.shape[-1]} exceeds the supported maximum {MAX_DIM}")
    single = a.ndim == 2
    return (a[None] if single else a), single


def eig_hermitian(a) -> EigenResult:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like, shape (d, d) or (n, d, d)
        Hermitian within 1e-12 entry-wise, ``d <= 64``.

    Returns
    -------
    EigenResult
        ``values`` sorted non-increasing and a unitary ``vectors`` whose
        columns are the eigenvectors, so ``a = V diag(values) V*``.

    Raises
    ------
    NotHermitianError
        If ``a`` is not Hermitian within tolerance.
    NoConvergenceError
        If the off-diagonal mass stays above ``1e-13 * ||a||_F`` after 100 sweeps.
    """
    stack, single = _prepare(a)
    values, vectors = _sorted_desc(*_jacobi(stack, want_vectors=True))
    if single:
        return EigenResult(values[0], vectors[0])
    return EigenResult(values, vectors)


def eigvals_hermitian(a) -> np.ndarray:
    """Eigenvalues only, sorted non-increasing. Skips eigenvector accumulation."""
    stack, single = _prepare(a)
    values, _ = _sorted_desc(*_jacobi(stack, want_vectors=False))
    return values[0] if single else values


def conjugate_by_unitary(a, u):
    """Return ``u @ a @ u*``; works on matching stacks too."""
    a = _as_square(a)
    u = check_unitary(u)
    if a.shape[-1] != u.shape[-1]:
        raise DimensionMismatchError(f"matrix dim {a.shape[-1]} != unitary dim {u.shape[-1]}")
    return u @ a @ np.swapaxes(u, -1, -2).conj()
