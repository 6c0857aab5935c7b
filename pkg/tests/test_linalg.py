import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropy_continuity.errors import DimensionMismatchError, InvalidStateError, NotHermitianError
from entropy_continuity.linalg import (
    check_density_matrix,
    check_unitary,
    conjugate_by_unitary,
    eig_hermitian,
    eigvals_hermitian,
)
from entropy_continuity.sampling import SamplerConfig, sample_unitaries

from conftest import random_hermitian


def charpoly_eigenvalues(a):
    """Roots of the characteristic polynomial; coefficients by Faddeev-LeVerrier."""
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    m = np.zeros_like(a)
    for k in range(1, n + 1):
        m = a @ m + coeffs[-1] * np.eye(n)
        coeffs.append(-np.trace(a @ m) / k)
    roots = np.roots(np.real(coeffs))
    return np.sort(roots.real)[::-1]


def test_identity():
    res = eig_hermitian(np.eye(3))
    np.testing.assert_array_equal(res.values, [1.0, 1.0, 1.0])
    np.testing.assert_allclose(res.vectors, np.eye(3))


def test_pauli_x():
    res = eig_hermitian([[0, 1], [1, 0]])
    np.testing.assert_allclose(res.values, [1.0, -1.0], atol=1e-15)


def test_against_characteristic_polynomial(rng):
    for _ in range(20):
        a = random_hermitian(rng, 4)
        np.testing.assert_allclose(eig_hermitian(a).values, charpoly_eigenvalues(a), atol=1e-8)


@pytest.mark.parametrize("d", [1, 2, 3, 5, 8, 16])
def test_invariants(rng, d):
    for _ in range(10):
        a = random_hermitian(rng, d)
        res = eig_hermitian(a)
        assert np.all(np.diff(res.values) <= 0)
        assert abs(res.values.sum() - np.trace(a).real) <= 1e-10
        det = np.linalg.det(a).real
        assert abs(np.prod(res.values) - det) <= 1e-8 * max(1.0, abs(det))
        assert np.abs(res.vectors.conj().T @ res.vectors - np.eye(d)).max() <= 1e-10
        recon = res.vectors @ np.diag(res.values) @ res.vectors.conj().T
        assert np.abs(recon - a).max() <= 1e-9 * np.abs(a).max()


def test_recovers_prescribed_spectrum(rng):
    lam = np.array([0.9, 0.4, 0.4, -0.3, -1.2])
    u = sample_unitaries(SamplerConfig(seed=5, dim=5), np.arange(50))
    for v in u:
        a = v @ np.diag(lam) @ v.conj().T
        np.testing.assert_allclose(eig_hermitian(a).values, lam, atol=1e-10)


def test_dimension_64(rng):
    a = random_hermitian(rng, 64)
    res = eig_hermitian(a)
    recon = res.vectors @ np.diag(res.values) @ res.vectors.conj().T
    assert np.abs(recon - a).max() <= 1e-9 * np.abs(a).max()


def test_rejects_oversize_and_non_hermitian(rng):
    with pytest.raises(DimensionMismatchError):
        eig_hermitian(np.eye(65))
    with pytest.raises(NotHermitianError):
        eig_hermitian([[0, 1], [0, 0]])
    with pytest.raises(DimensionMismatchError):
        eig_hermitian(np.zeros((2, 3)))


def test_deterministic_and_batch_independent(rng):
    stack = np.array([random_hermitian(rng, 4) for _ in range(7)])
    single = eig_hermitian(stack[3])
    again = eig_hermitian(stack[3])
    batch = eig_hermitian(stack)
    np.testing.assert_array_equal(single.values, again.values)
    np.testing.assert_array_equal(single.values, batch.values[3])
    np.testing.assert_array_equal(single.vectors, batch.vectors[3])
    np.testing.assert_array_equal(eigvals_hermitian(stack), batch.values)


def test_degenerate_ties_and_zero_matrix():
    res = eig_hermitian(np.diag([0.2, 0.5, 0.2]))
    np.testing.assert_array_equal(res.values, [0.5, 0.2, 0.2])
    np.testing.assert_array_equal(eig_hermitian(np.zeros((3, 3))).values, np.zeros(3))


def test_conjugate_identity_and_permutation(rng):
    a = random_hermitian(rng, 3)
    np.testing.assert_allclose(conjugate_by_unitary(a, np.eye(3)), a)
    swap = np.array([[0, 1], [1, 0]])
    np.testing.assert_allclose(conjugate_by_unitary(np.diag([1.0, 0.0]), swap), np.diag([0.0, 1.0]))


def test_conjugate_preserves_trace_and_hermiticity(rng):
    us = sample_unitaries(SamplerConfig(seed=9, dim=4), np.arange(100))
    for u in us:
        a = random_hermitian(rng, 4)
        b = conjugate_by_unitary(a, u)
        assert abs(np.trace(b) - np.trace(a)) <= 1e-12
        assert np.abs(b - b.conj().T).max() <= 1e-12


def test_conjugate_errors():
    with pytest.raises(DimensionMismatchError):
        conjugate_by_unitary(np.eye(2), np.eye(3))
    with pytest.raises(InvalidStateError):
        conjugate_by_unitary(np.eye(2), 2 * np.eye(2))


def test_validators():
    check_unitary(np.eye(4))
    check_density_matrix(np.eye(2) / 2)
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.eye(2))
    with pytest.raises(InvalidStateError):
        check_density_matrix(np.diag([1.5, -0.5]))
    with pytest.raises(InvalidStateError):
        eig_hermitian([[np.nan, 0], [0, 1]])


@settings(max_examples=60, deadline=None)
@given(
    d=st.integers(1, 6),
    entries=st.lists(st.floats(-10, 10, allow_nan=False), min_size=72, max_size=72),
)
def test_reconstruction_property(d, entries):
    x = np.array(entries[: 2 * d * d]).reshape(2, d, d)
    g = x[0] + 1j * x[1]
    a = 0.5 * (g + g.conj().T)
    res = eig_hermitian(a)
    scale = max(np.abs(a).max(), 1e-300)
    recon = res.vectors @ np.diag(res.values) @ res.vectors.conj().T
    assert np.abs(recon - a).max() <= 1e-9 * scale
    assert np.all(np.diff(res.values) <= 0)
