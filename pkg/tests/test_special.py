import math

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from laguerre_geronimus.errors import DomainError, PoleError
from laguerre_geronimus.special import (
    bessel_j,
    bessel_j_normalized,
    bessel_k,
    bessel_k_asymptotic,
    bessel_k_asymptotic_coeff,
    kummer_u,
    log_gamma,
    pfq_2f2,
)


def test_log_gamma_domain():
    assert math.isclose(log_gamma(5.0), math.log(24.0))
    with pytest.raises(DomainError):
        log_gamma(0.0)


@given(st.floats(1.0, 600.0), st.floats(-0.99, 2.0), st.floats(0.05, 20.0))
def test_kummer_u_matches_mpmath(a, alpha, x):
    b = 1 - alpha
    ref = float(mp.log(mp.hyperu(a, b, x)))
    assert math.isclose(kummer_u(a, b, x).logmag, ref, rel_tol=1e-12, abs_tol=1e-12)


def test_kummer_u_exponential_integral():
    # U(1, 1, x) = e^x E1(x)
    assert math.isclose(kummer_u(1.0, 1.0, 1.0).to_float(), 0.59634736232319407434, rel_tol=1e-13)


def test_kummer_u_domain():
    with pytest.raises(DomainError):
        kummer_u(1.0, 1.0, -1.0)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.5, 2.0])
@pytest.mark.parametrize("z", [0.0, 0.3, 2.0, 10.0, -3.0, 1 + 2j, 45.0])
def test_bessel_j_normalized(nu, z):
    ref = complex(mp.hyp0f1(nu + 1, -z) / mp.gamma(nu + 1))
    assert abs(bessel_j_normalized(nu, z) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_bessel_j_normalized_at_zero_is_reciprocal_gamma():
    assert math.isclose(bessel_j_normalized(0.5, 0.0).real, 1 / math.gamma(1.5))
    assert bessel_j(0.0, 0.0) == 1.0


@pytest.mark.parametrize("nu,x", [(0.0, 1.0), (2.5, 30.0), (0.3, 900.0)])
def test_bessel_k_log_scaled(nu, x):
    ref = float(mp.log(mp.besselk(nu, x)))
    assert math.isclose(bessel_k(nu, x).logmag, ref, rel_tol=1e-13)


def test_bessel_k_asymptotic_improves_with_terms():
    exact = float(mp.besselk(2.5, 20.0))
    errs = [abs(bessel_k_asymptotic(2.5, 20.0, L) / exact - 1) for L in (1, 2, 3)]
    assert errs[0] > errs[1] > errs[2]
    # for half-integer order the expansion terminates
    assert errs[2] < 1e-14
    assert abs(bessel_k_asymptotic(0.3, 20.0, 6) / float(mp.besselk(0.3, 20.0)) - 1) < 1e-8


def test_pfq_terminating_matches_mpmath():
    v = pfq_2f2(-6, 1.7, 1.5, 0.7, 2.5)
    assert abs(v - complex(mp.hyp2f2(-6, 1.7, 1.5, 0.7, 2.5))) < 1e-12 * abs(v)


def test_pfq_pole_detected_and_cancellation_allowed():
    with pytest.raises(PoleError):
        pfq_2f2(-5, 1.0, -2.0, 1.0, 1.0)
    # numerator vanishes first: the series simply terminates
    assert pfq_2f2(-2, 1.0, -3.0, 1.0, 1.0) == pytest.approx(1 + (-2) / (-3) + 2 / (6 * 2))


def test_documented_examples():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(171.5) == pytest.approx(float(mp.loggamma(171.5)), rel=1e-15)
    assert bessel_j(1.0, 0.0) == 0.0
    assert abs(bessel_j(0.0, 2.4048255577)) < 1e-9
    assert bessel_k(0.5, 1.0).to_float() == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-1), rel=1e-14)
    assert bessel_k(0.0, 1.0).to_float() == pytest.approx(0.421024438240708, rel=1e-13)
    assert abs(bessel_k_asymptotic(0.0, 50.0, 4) / bessel_k(0.0, 50.0).to_float() - 1) < 1e-6
    assert kummer_u(2.0, 3.0, 3.0).to_float() == pytest.approx(1 / 9, rel=1e-13)
    assert pfq_2f2(0, 1.3, 2.0, 0.7, 5.0) == 1


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.3])
def test_bessel_k_coefficients(nu):
    assert bessel_k_asymptotic_coeff(nu, 0) == 1
    assert bessel_k_asymptotic_coeff(nu, 1) == pytest.approx((4 * nu * nu - 1) / 8)
    assert bessel_k_asymptotic_coeff(nu, 2) == pytest.approx((4 * nu * nu - 1) * (4 * nu * nu - 9) / 128)


def test_kummer_u_large_a():
    ref = float(mp.log(mp.hyperu(500, 0.5, 100)))
    assert kummer_u(500.0, 0.5, 100.0).logmag == pytest.approx(ref, rel=1e-12)
