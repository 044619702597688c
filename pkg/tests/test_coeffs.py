import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import binom

from rsfade.coeffs import (
    CheckStatus,
    FractionalOrder,
    GrunwaldSeq,
    grunwald_coeffs,
    check_coefficient_laws,
    wsgd_weights,
)
from rsfade.errors import DomainError

def _signed_binomial(gamma, k):
    """(-1)^k binom(gamma, k) by the product formula in 50-digit arithmetic."""
    with mpmath.workdps(50):
        out = mpmath.mpf(1)
        for j in range(k):
            out *= -(mpmath.mpf(gamma) - j) / (j + 1)
        return out


ORDERS = [round(0.1 * k, 1) for k in range(1, 10)] + [round(1 + 0.1 * k, 1) for k in range(1, 11)]


def test_grunwald_small_cases():
    assert grunwald_coeffs(0.5, 0).tolist() == [1.0]
    np.testing.assert_allclose(grunwald_coeffs(0.5, 2), [1.0, -0.5, -0.125], rtol=0, atol=1e-16)
    np.testing.assert_array_equal(grunwald_coeffs(2.0, 4), [1.0, -2.0, 1.0, 0.0, 0.0])


def test_wsgd_small_cases():
    np.testing.assert_allclose(wsgd_weights(0.5, 1), [0.25, 0.625], atol=1e-16)
    np.testing.assert_array_equal(wsgd_weights(2.0, 3), [1.0, -2.0, 1.0, 0.0])
    np.testing.assert_allclose(wsgd_weights(1.5, 2), [0.75, -0.875, -0.09375], atol=1e-15)


@pytest.mark.parametrize("gamma", [0.0, -0.3, 2.01, float("nan")])
def test_out_of_range_order(gamma):
    with pytest.raises(DomainError, match=r"\(0, 2\]"):
        grunwald_coeffs(gamma, 4)


def test_negative_count():
    with pytest.raises(DomainError):
        wsgd_weights(0.5, -1)


@settings(max_examples=60, deadline=None)
@given(st.floats(min_value=1e-3, max_value=2.0))
def test_recursion_matches_binomial(gamma):
    g = grunwald_coeffs(gamma, 30)
    for k in range(31):
        exact = _signed_binomial(gamma, k)
        if exact == 0:
            assert g[k] == 0
        else:
            assert abs(g[k] - float(exact)) <= 1e-12 * abs(float(exact))


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=1e-3, max_value=2.0), st.integers(min_value=1, max_value=60))
def test_weights_definition(gamma, n):
    g = grunwald_coeffs(gamma, n)
    w = wsgd_weights(gamma, n)
    assert w[0] == gamma / 2
    np.testing.assert_allclose(w[1:], gamma / 2 * g[1:] + (2 - gamma) / 2 * g[:-1], rtol=1e-15)


def test_fractional_order_regimes():
    assert FractionalOrder.advection(0.4).gamma == 0.4
    assert FractionalOrder.dispersion(2.0).gamma == 2.0
    for bad in (0.0, 1.0):
        with pytest.raises(DomainError):
            FractionalOrder.advection(bad)
    for bad in (1.0, 2.5):
        with pytest.raises(DomainError):
            FractionalOrder.dispersion(bad)
    assert FractionalOrder.infer(1.3).regime.value == "dispersion"


@pytest.mark.parametrize("gamma", ORDERS)
def test_laws_hold_on_grid(gamma):
    rep = check_coefficient_laws(GrunwaldSeq(gamma, 256))
    assert rep.ok, rep.failures()
    if gamma < 2.0:
        assert all(c.status is CheckStatus.PASS for c in rep.checks)


def test_law_examples():
    assert check_coefficient_laws(GrunwaldSeq(0.3, 64)).ok
    assert check_coefficient_laws(GrunwaldSeq(1.8, 64)).ok
    rep = check_coefficient_laws(GrunwaldSeq(2.0, 8))
    assert rep.ok
    assert rep.by_name("sum_{k<=m} w_k < 0 (m>=2)").status is CheckStatus.BOUNDARY
    assert rep.by_name("w3 <= 1").status is CheckStatus.PASS


def test_law_check_detects_violation():
    seq = GrunwaldSeq(0.5, 16)
    corrupted = seq.w.copy()
    corrupted[5] = 0.1
    object.__setattr__(seq, "w", corrupted)
    rep = check_coefficient_laws(seq)
    assert not rep.ok
    assert "w_k < 0 (k>=2)" in [c.name for c in rep.failures()]


def test_law_check_requires_four_terms():
    with pytest.raises(DomainError):
        check_coefficient_laws(GrunwaldSeq(0.5, 2))


@pytest.mark.parametrize("gamma", [g for g in ORDERS if g < 2.0])
def test_partial_sums_tend_to_zero(gamma):
    # S_n(gamma) = g_n(gamma - 1) exactly, and shrinks with n
    for n in (256, 4096):
        s_w = wsgd_weights(gamma, n).sum()
        s_g = grunwald_coeffs(gamma, n).sum()
        assert s_g == pytest.approx(binom(gamma - 1, n) * (-1) ** n, rel=1e-9)
        assert s_w == pytest.approx(s_g - (2 - gamma) / 2 * grunwald_coeffs(gamma, n)[-1], rel=1e-9)
    assert abs(wsgd_weights(gamma, 4096).sum()) < abs(wsgd_weights(gamma, 256).sum())
    assert abs(grunwald_coeffs(gamma, 4096).sum()) < abs(grunwald_coeffs(gamma, 256).sum())


def test_sequence_is_read_only():
    seq = GrunwaldSeq(0.5, 4)
    with pytest.raises(ValueError):
        seq.g[0] = 2.0
