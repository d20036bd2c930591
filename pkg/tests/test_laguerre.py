import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special

from laguerre_geronimus.errors import BranchError, DomainError
from laguerre_geronimus.laguerre import (
    eval_monic_laguerre,
    fejer_log_envelope,
    fejer_monic,
    laguerre_recurrence_coeffs,
    mehler_heine_laguerre,
    monic_laguerre,
    monic_laguerre_coeffs,
    monic_laguerre_table,
    monic_norm_sq,
    monic_to_standard,
    perron_monic,
    perron_ratio,
    ratio_pi,
    standard_to_monic,
    theta_n,
)

alphas = st.floats(-0.95, 3.0)


def mp_monic(n, a, z):
    return (-1) ** n * mp.factorial(n) * mp.laguerre(n, a, z)


def test_low_degrees():
    assert monic_laguerre(0, 0.5, 3.0).to_complex() == 1
    assert monic_laguerre(1, 0.5, 3.0).to_complex() == pytest.approx(1.5)
    # L_2 = z^2 - 2(alpha+2) z + (alpha+1)(alpha+2)
    z, a = 1.3, 0.7
    assert monic_laguerre(2, a, z).to_complex().real == pytest.approx(z * z - 2 * (a + 2) * z + (a + 1) * (a + 2))


@pytest.mark.parametrize("n,a,z", [(5, 0.0, -1.0), (12, 1.5, 2.5), (30, -0.5, 0.1), (40, 2.0, -7.0), (25, 0.3, 3 - 2j)])
def test_against_mpmath(n, a, z):
    ref = complex(mp_monic(n, a, z))
    assert abs(monic_laguerre(n, a, z).to_complex() - ref) <= 1e-11 * abs(ref)


def test_large_degree_log_magnitude():
    v = monic_laguerre(1000, 0.5, -2.0)
    ref = float(mp.log(abs(mp_monic(1000, 0.5, -2.0))))
    assert v.logmag == pytest.approx(ref, rel=1e-13)
    assert v.logmag > 700


def test_recurrence_constants():
    assert laguerre_recurrence_coeffs(3, 0.5) == (7.5, 10.5)


def test_sequence_residual_small():
    seq = eval_monic_laguerre(300, 1.0, -0.5 + 0.5j)
    assert seq.n == 300
    # log-magnitudes near 1440 carry absolute error ~1440 eps
    assert seq.recurrence_residual() < 1e-12


def test_table_matches_scipy():
    x = np.linspace(0.1, 20, 7)
    T = monic_laguerre_table(10, 0.5, x)
    for k in range(11):
        ref = special.eval_genlaguerre(k, 0.5, x) * (-1) ** k * math.factorial(k)
        np.testing.assert_allclose(T[k], ref, rtol=1e-10, atol=1e-10 * math.factorial(k))


@given(st.integers(0, 15), alphas, st.floats(-5, 5))
def test_coeffs_agree_with_recurrence(n, a, x):
    c = monic_laguerre_coeffs(n, a)
    assert c[-1] == 1.0
    poly = np.polynomial.polynomial.polyval(x, c)
    ref = monic_laguerre(n, a, x).to_complex().real
    scale = np.polynomial.polynomial.polyval(abs(x), np.abs(c))
    assert abs(poly - ref) <= 1e-12 * scale


def test_orthogonality_and_norm():
    a = 0.5
    x, w = special.roots_genlaguerre(30, a)
    T = monic_laguerre_table(8, a, x)
    G = (T * w) @ T.T
    for k in range(9):
        assert G[k, k] == pytest.approx(monic_norm_sq(k, a).to_float(), rel=1e-11)
        for j in range(k):
            assert abs(G[k, j]) < 1e-11 * math.sqrt(G[k, k] * G[j, j])


@given(st.integers(0, 170), st.floats(-1e3, 1e3).filter(lambda v: v == 0 or abs(v) > 1e-3))
def test_standard_monic_roundtrip(n, v):
    assert standard_to_monic(n, monic_to_standard(n, v)) == pytest.approx(v, rel=1e-12, abs=1e-300)


def test_standard_monic_log_scaled_beyond_factorial_range():
    v = monic_laguerre(500, 0.0, -1.0)
    back = standard_to_monic(500, monic_to_standard(500, v))
    assert back.logmag == pytest.approx(v.logmag, rel=1e-15)


def test_ratio_pi_and_perron():
    a, z, n = 0.5, -1.5, 400
    exact = ratio_pi(n - 1, a, z)
    ref = float(mp_monic(n, a, z) / mp_monic(n - 1, a, z))
    assert exact == pytest.approx(ref, rel=1e-12)
    assert abs(exact - perron_ratio(n, a, z)) < 1.0 / math.sqrt(n)


def test_perron_leading_order():
    errs = []
    for n in (100, 400, 1600):
        errs.append(abs((perron_monic(n, 0.0, -1.0) / monic_laguerre(n, 0.0, -1.0)).to_complex() - 1))
    assert errs[0] > errs[1] > errs[2]
    # O(n^-1/2): quadrupling n halves the error
    assert errs[1] / errs[2] == pytest.approx(2.0, rel=0.1)


def test_fejer_inner():
    n, a = 2000, 0.5
    for x in (0.7, 1.3, 2.2):
        exact = monic_laguerre(n, a, x)
        approx = fejer_monic(n, a, x)
        env = fejer_log_envelope(n, a, x)
        # compare on the envelope scale, since cos theta can vanish
        e = exact.phase.real * math.exp(exact.logmag - env)
        f = approx.sign * math.exp(approx.logmag - env)
        assert abs(e - f) < 2 / math.sqrt(n)
        assert f == pytest.approx((-1) ** n * math.cos(theta_n(n, a, x)))


def test_mehler_heine():
    for z in (0.5, 3.0):
        s, lim = mehler_heine_laguerre(4000, 0.5, z)
        assert abs(s - lim) < 2e-3


def test_domain_errors():
    with pytest.raises(DomainError):
        eval_monic_laguerre(3, -1.0, 0.5)
    with pytest.raises(BranchError):
        ratio_pi(4, 0.0, 2.0)
    with pytest.raises(DomainError):
        fejer_monic(10, 0.0, -1.0)


def test_documented_examples():
    assert laguerre_recurrence_coeffs(5, 0) == (11, 25)
    assert laguerre_recurrence_coeffs(0, 0.7) == (1.7, 0)
    assert laguerre_recurrence_coeffs(3, 2) == (9, 15)
    assert monic_laguerre(1, 0.0, 3.0).to_complex() == 2
    assert monic_laguerre(2, 0.0, 0.0).to_complex() == 2
    assert monic_to_standard(1, -1.5) == 1.5
    assert monic_norm_sq(0, 0.0).to_float() == 1.0
    assert monic_norm_sq(2, 1.0).to_float() == pytest.approx(12.0)
    assert ratio_pi(0, 0.5, -2.0) == -3.5
    assert ratio_pi(1, 0.0, -1.0) == pytest.approx(-3.5)
