import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropy_continuity.bounds import extremal_pair
from entropy_continuity.entropy import (
    binary_entropy,
    h_scalar,
    shannon_entropy,
    signed_decompose,
    trace_distance,
    tv_distance,
    von_neumann_entropy,
)
from entropy_continuity.errors import (
    DimensionMismatchError,
    InvalidStateError,
    NegativeEigenvalueError,
    OutOfRangeError,
)
from entropy_continuity.linalg import conjugate_by_unitary
from entropy_continuity.sampling import SamplerConfig, sample_unitaries

from conftest import random_prob


def test_h_scalar_values():
    assert h_scalar(0.0) == 0.0
    assert h_scalar(1.0) == 0.0
    assert h_scalar(0.5) == 0.5
    assert h_scalar(-1e-13) == 0.0
    assert h_scalar(0.25) == 0.5


@pytest.mark.parametrize("x", [-1e-9, 1.0 + 1e-9, float("nan")])
def test_h_scalar_out_of_range(x):
    with pytest.raises(OutOfRangeError):
        h_scalar(x)


def test_shannon_entropy_values():
    assert shannon_entropy([1, 0, 0]) == 0.0
    assert shannon_entropy(np.full(4, 0.25)) == 2.0
    # mpmath (30 digits): 1.5
    assert shannon_entropy([0.5, 0.25, 0.25]) == pytest.approx(1.5, abs=1e-15)


@pytest.mark.parametrize("p", [[0.5, 0.6], [1.2, -0.2], [-1e-9, 1 + 1e-9], [np.nan, 1]])
def test_invalid_prob_vectors(p):
    with pytest.raises(InvalidStateError):
        shannon_entropy(p)


def test_tiny_negatives_are_clamped():
    assert shannon_entropy([1 + 5e-13, -5e-13]) == 0.0


def test_von_neumann_entropy_values(rng):
    pure = np.zeros((3, 3))
    pure[0, 0] = 1
    assert von_neumann_entropy(pure) == 0.0
    assert von_neumann_entropy(np.eye(3) / 3) == pytest.approx(math.log2(3), abs=1e-12)
    u = sample_unitaries(SamplerConfig(seed=1, dim=3), [0])[0]
    rho = conjugate_by_unitary(np.diag([0.5, 0.25, 0.25]), u)
    assert von_neumann_entropy(rho) == pytest.approx(1.5, abs=1e-10)


def test_von_neumann_unitary_invariance(rng):
    us = sample_unitaries(SamplerConfig(seed=4, dim=4), np.arange(100))
    for u in us:
        p = random_prob(rng, 4)
        s = von_neumann_entropy(np.diag(p))
        assert von_neumann_entropy(conjugate_by_unitary(np.diag(p), u)) == pytest.approx(s, abs=1e-10)
        assert s == pytest.approx(shannon_entropy(p), abs=1e-14)


def test_von_neumann_negative_eigenvalue():
    with pytest.raises(NegativeEigenvalueError):
        von_neumann_entropy(np.diag([1.1, -0.1]))
    # solver-noise sized negatives are clamped
    assert von_neumann_entropy(np.diag([1 + 1e-11, -1e-11])) == 0.0


def test_trace_distance_values():
    rho = np.diag([0.3, 0.7])
    assert trace_distance(rho, rho) == 0.0
    assert trace_distance(np.diag([1, 0]), np.diag([0, 1])) == 1.0
    r, s = extremal_pair(3, 0.5)
    assert trace_distance(r, s) == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(DimensionMismatchError):
        trace_distance(np.eye(2) / 2, np.eye(3) / 3)


def test_tv_distance_values(rng):
    assert tv_distance([0.2, 0.8], [0.2, 0.8]) == 0.0
    assert tv_distance([1, 0], [0.5, 0.5]) == 0.5
    for _ in range(50):
        p, q = random_prob(rng, 5), random_prob(rng, 5)
        assert tv_distance(p, q) == pytest.approx(trace_distance(np.diag(p), np.diag(q)), abs=1e-12)
    with pytest.raises(DimensionMismatchError):
        tv_distance([1, 0], [1, 0, 0])


def test_tv_is_a_metric(rng):
    for _ in range(200):
        p, q, r = (random_prob(rng, 4) for _ in range(3))
        assert tv_distance(p, q) == tv_distance(q, p)
        assert tv_distance(p, r) <= tv_distance(p, q) + tv_distance(q, r) + 1e-12


def test_signed_decompose(rng):
    dec = signed_decompose([0.3, 0.7], [0.3, 0.7])
    assert not dec.plus.any() and not dec.minus.any()
    dec = signed_decompose([0.7, 0.3], [0.2, 0.8])
    np.testing.assert_allclose(dec.plus, [0.5, 0.0])
    np.testing.assert_allclose(dec.minus, [0.0, 0.5])
    for _ in range(100):
        p, q = random_prob(rng, 6), random_prob(rng, 6)
        dec = signed_decompose(p, q)
        np.testing.assert_array_equal(p - q, dec.plus - dec.minus)
        assert np.all(dec.plus * dec.minus == 0)
        assert abs(dec.plus.sum() - tv_distance(p, q)) <= 1e-10
        assert abs(dec.minus.sum() - tv_distance(p, q)) <= 1e-10


def test_binary_entropy():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0


@pytest.mark.parametrize("y", [0.01, 0.1, 0.3, 0.6])
def test_gap_function_is_increasing_and_concave(y):
    # g(x) = h(x) - h(x + y) on [0, 1 - y]
    x = np.linspace(0.0, 1.0 - y, 2001)
    g = h_scalar(x) - h_scalar(x + y)
    slope = np.diff(g)
    assert slope.min() >= -1e-9
    assert np.diff(slope).max() <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(0.0, 1.0), min_size=1, max_size=8).filter(lambda v: sum(v) > 0), st.randoms())
def test_shannon_permutation_invariant_and_bounded(weights, rand):
    p = np.array(weights) / sum(weights)
    perm = p.copy()
    rand.shuffle(perm)
    h = shannon_entropy(p)
    hp = shannon_entropy(perm)
    assert h == hp
    assert -1e-15 <= h <= math.log2(len(p)) + 1e-12
