import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entropy_continuity.bounds import (
    FANNES_T_MAX,
    bound_report,
    extremal_pair,
    fannes_bound,
    fannes_weak_bound,
    sharp_bound,
    sharp_bound_curve,
)
from entropy_continuity.entropy import binary_entropy, shannon_entropy, trace_distance, von_neumann_entropy
from entropy_continuity.errors import InvalidDimensionError, OutOfRangeError, OutOfValidityRangeError

# reference values below were evaluated with mpmath at 30 digits
FANNES_D2_T01 = 0.664385618977472469574063885898
FANNES_D2_ENDPOINT = 0.898617286594485310128901127396
WEAK_CONSTANT = 0.530737845423042988533377357234
SHARP_D2_T025 = 0.811278124459132863909695792039
SHARP_D4_T05 = 1.79248125036057809072686947197


def test_fannes_values():
    assert fannes_bound(2, 0.0) == 0.0
    assert fannes_bound(7, 0.0) == 0.0
    assert fannes_bound(2, 0.1) == pytest.approx(FANNES_D2_T01, abs=1e-14)
    assert fannes_bound(2, 1 / (2 * math.e)) == pytest.approx(FANNES_D2_ENDPOINT, abs=1e-14)


def test_fannes_outside_validity_range():
    with pytest.raises(OutOfValidityRangeError):
        fannes_bound(2, FANNES_T_MAX + 1e-9)
    with pytest.raises(OutOfValidityRangeError):
        fannes_bound(3, 0.5)


def test_weak_fannes_values():
    assert fannes_weak_bound(1, 0.0) == pytest.approx(WEAK_CONSTANT, abs=1e-15)
    assert fannes_weak_bound(2, 0.5) == pytest.approx(1 + WEAK_CONSTANT, abs=1e-15)
    assert fannes_weak_bound(4, 0.25) == pytest.approx(1 + WEAK_CONSTANT, abs=1e-15)
    with pytest.raises(OutOfRangeError):
        fannes_weak_bound(2, 1.5)


def test_sharp_values():
    assert sharp_bound(2, 0.5) == 1.0
    assert sharp_bound(2, 0.25) == pytest.approx(SHARP_D2_T025, abs=1e-15)
    assert sharp_bound(4, 0.5) == pytest.approx(SHARP_D4_T05, abs=1e-15)
    assert sharp_bound(1, 0.0) == 0.0


def test_dimension_one():
    with pytest.raises(InvalidDimensionError):
        sharp_bound(1, 0.1)
    with pytest.raises(InvalidDimensionError):
        fannes_bound(1, 0.1)
    with pytest.raises(InvalidDimensionError):
        sharp_bound(0, 0.0)


@pytest.mark.parametrize("d", range(2, 9))
def test_sharp_endpoints_and_continuity(d):
    assert sharp_bound(d, 0.0) == 0.0
    assert sharp_bound(d, 1.0) == pytest.approx(math.log2(d - 1), abs=1e-15)
    for eps in (1e-6, 1e-9, 1e-12):
        assert sharp_bound(d, eps) == pytest.approx(0.0, abs=1e-4)
        assert sharp_bound(d, 1 - eps) == pytest.approx(math.log2(d - 1), abs=1e-4)


def test_sharp_d2_is_binary_entropy():
    for t in np.linspace(0, 1, 101):
        assert sharp_bound(2, t) == binary_entropy(t)


@pytest.mark.parametrize("d", range(2, 9))
def test_sharp_below_fannes(d):
    for t in np.linspace(0, FANNES_T_MAX, 500)[1:]:
        assert sharp_bound(d, t) < fannes_bound(d, t)


def test_curve_matches_scalar():
    ts = np.linspace(0, 1, 57)
    np.testing.assert_allclose(sharp_bound_curve(5, ts), [sharp_bound(5, t) for t in ts], rtol=0, atol=1e-15)


def test_bound_report():
    rep = bound_report(3, 0.1)
    assert rep.fannes == fannes_bound(3, 0.1)
    assert rep.sharp == sharp_bound(3, 0.1)
    assert bound_report(3, 0.5).fannes is None


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 64), st.floats(0.0, 1.0))
def test_bound_report_invariants(d, t):
    rep = bound_report(d, t)
    assert rep.sharp >= 0 and rep.fannes_weak >= 0
    assert rep.sharp <= rep.fannes_weak + 1e-12
    if rep.fannes is not None:
        assert rep.fannes >= 0
        if t > 0:
            assert rep.sharp <= rep.fannes + 1e-12


def test_extremal_pair_example():
    rho, sigma = extremal_pair(3, 0.5)
    np.testing.assert_allclose(np.diag(rho).real, [0.5, 0.25, 0.25])
    np.testing.assert_allclose(np.diag(sigma).real, [1.0, 0.0, 0.0])
    gap = von_neumann_entropy(rho) - von_neumann_entropy(sigma)
    assert gap == pytest.approx(shannon_entropy([0.5, 0.25, 0.25]), abs=1e-15)
    assert gap == pytest.approx(sharp_bound(3, 0.5), abs=1e-12)


def test_extremal_pair_edges():
    for d in (2, 5):
        rho, sigma = extremal_pair(d, 0.0)
        np.testing.assert_array_equal(rho, sigma)
    rho, sigma = extremal_pair(2, 1.0)
    np.testing.assert_array_equal(np.diag(rho).real, [0.0, 1.0])
    assert trace_distance(rho, sigma) == 1.0
    assert von_neumann_entropy(rho) == von_neumann_entropy(sigma) == sharp_bound(2, 1.0) == 0.0
    with pytest.raises(InvalidDimensionError):
        extremal_pair(1, 0.0)


@pytest.mark.parametrize("d", range(2, 9))
def test_saturation_sweep(d):
    for t in np.linspace(0, 1, 101):
        rho, sigma = extremal_pair(d, t)
        assert abs(trace_distance(rho, sigma) - t) <= 1e-12
        gap = abs(von_neumann_entropy(rho) - von_neumann_entropy(sigma))
        assert abs(gap - sharp_bound(d, t)) <= 1e-12
