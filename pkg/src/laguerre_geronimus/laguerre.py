"""Classical monic Laguerre polynomials: exact recurrences and large-n forms.

Monic polynomials satisfy

    z L_n(z) = L_{n+1}(z) + beta_n L_n(z) + gamma_n L_{n-1}(z),
    beta_n = 2n + alpha + 1,  gamma_n = n (n + alpha),

with L_0 = 1 and L_1 = z - alpha - 1.  They are the dominant solution of
this recurrence off [0, inf), so forward evaluation is stable.  (The same
recurrence run forward for the functions of the second kind is not; see
:mod:`laguerre_geronimus.second_kind`.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .scaled import ComplexPoint, LogComplex, LogScaled, log2_scale, pow2_normalize
from .special import bessel_j_normalized

# Rescale the recurrence mantissas once they exceed this magnitude.
_RESCALE = 2.0**400


def laguerre_recurrence_coeffs(n, alpha):
    """Return ``(beta_n, gamma_n) = (2n + alpha + 1, n (n + alpha))``."""
    return 2 * n + alpha + 1, n * (n + alpha)


def _check_alpha(alpha):
    if not alpha > -1:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")


def _as_number(z):
    z = complex(z)
    return z.real if z.imag == 0 else z


def laguerre_pair(n, alpha, z):
    """Scaled forward recurrence.

    Returns ``(m_prev, m, log_scale)`` with ``L_{n-1}(z) = m_prev * e^log_scale``
    and ``L_n(z) = m * e^log_scale`` (``m_prev = 0`` for n = 0).
    """
    z = _as_number(z)
    prev, cur, e = 0.0, 1.0, 0
    for k in range(n):
        beta, gamma = 2 * k + alpha + 1, k * (k + alpha)
        prev, cur = cur, (z - beta) * cur - gamma * prev
        if abs(cur) > _RESCALE:
            cur, de = pow2_normalize(cur)
            prev = prev * math.ldexp(1.0, -de)
            e += de
    return prev, cur, log2_scale(e)


@dataclass(frozen=True)
class LaguerreSequence:
    """Values L_0(z)..L_n(z) at a fixed point, stored log-scaled."""

    alpha: float
    z: complex
    values: tuple

    @property
    def n(self):
        return len(self.values) - 1

    def __getitem__(self, k):
        return self.values[k]

    def recurrence_residual(self):
        """Max over k of |z L_k - L_{k+1} - beta_k L_k - gamma_k L_{k-1}| / scale."""
        worst = 0.0
        for k in range(1, self.n):
            beta, gamma = laguerre_recurrence_coeffs(k, self.alpha)
            lk, lk1, lkm = self.values[k], self.values[k + 1], self.values[k - 1]
            ref = max(lk.logmag, lk1.logmag, lkm.logmag)
            # bring all terms to the common scale exp(ref)
            def mant(v):
                return 0j if v.is_zero else v.phase * math.exp(v.logmag - ref)
            terms = [self.z * mant(lk), -mant(lk1), -beta * mant(lk), -gamma * mant(lkm)]
            scale = max(abs(self.z * mant(lk)), abs(mant(lk1)), abs(beta * mant(lk)), abs(gamma * mant(lkm)))
            worst = max(worst, abs(sum(terms)) / scale)
        return worst


def eval_monic_laguerre(n, alpha, z):
    """All monic Laguerre values L_0(z)..L_n(z) as a :class:`LaguerreSequence`."""
    _check_alpha(alpha)
    if n < 0:
        raise DomainError("n must be non-negative")
    z = _as_number(z)
    vals = [LogComplex(1 + 0j, 0.0)]
    prev, cur, e = 0.0, 1.0, 0
    for k in range(n):
        beta, gamma = 2 * k + alpha + 1, k * (k + alpha)
        prev, cur = cur, (z - beta) * cur - gamma * prev
        if abs(cur) > _RESCALE:
            cur, de = pow2_normalize(cur)
            prev = prev * math.ldexp(1.0, -de)
            e += de
        vals.append(LogComplex.from_mantissa(cur, log2_scale(e)))
    return LaguerreSequence(alpha, complex(z), tuple(vals))


def monic_laguerre(n, alpha, z):
    """L_n(z) alone, log-scaled."""
    _, m, ls = laguerre_pair(n, alpha, z)
    return LogComplex.from_mantissa(m, ls)


def monic_laguerre_table(nmax, alpha, x):
    """Plain-float table ``T[k, j] = L_k(x_j)`` for k <= nmax (small nmax only)."""
    x = np.asarray(x)
    out = np.empty((nmax + 1,) + x.shape, dtype=np.result_type(x, float))
    out[0] = 1.0
    if nmax >= 1:
        out[1] = x - alpha - 1
    for k in range(1, nmax):
        beta, gamma = laguerre_recurrence_coeffs(k, alpha)
        out[k + 1] = (x - beta) * out[k] - gamma * out[k - 1]
    return out


def monic_laguerre_coeffs(n, alpha):
    """Ascending monomial coefficients of the monic L_n.

    From the 1F1 form L_n = (-1)^n (alpha+1)_n sum_k (-n)_k / ((alpha+1)_k k!) z^k.
    """
    c = np.empty(n + 1)
    # coefficient of z^n is 1; walk downwards using term ratios
    c[n] = 1.0
    for k in range(n, 0, -1):
        # t_{k-1} / t_k = k (alpha + k) / (-(n - k + 1))
        c[k - 1] = c[k] * k * (alpha + k) / (-(n - k + 1))
    return c


def monic_to_standard(n, value):
    """Multiply a monic value by (-1)^n / n! (log-scale for scaled inputs)."""
    if isinstance(value, (LogScaled, LogComplex)):
        f = LogScaled((-1) ** n, -math.lgamma(n + 1))
        return value * f
    return value * (-1) ** n / math.factorial(n) if n < 171 else value * (-1) ** n * math.exp(-math.lgamma(n + 1))


def standard_to_monic(n, value):
    """Inverse of :func:`monic_to_standard`."""
    if isinstance(value, (LogScaled, LogComplex)):
        f = LogScaled((-1) ** n, math.lgamma(n + 1))
        return value * f
    return value * (-1) ** n * math.factorial(n) if n < 171 else value * (-1) ** n * math.exp(math.lgamma(n + 1))


def monic_norm_sq(n, alpha):
    """||L_n||^2 = Gamma(n + alpha + 1) Gamma(n + 1) in the x^alpha e^-x inner product."""
    _check_alpha(alpha)
    return LogScaled(1, math.lgamma(n + alpha + 1) + math.lgamma(n + 1))


def ratio_pi_sequence(n, alpha, z):
    """[pi_0(z), ..., pi_n(z)] with pi_k = L_{k+1}(z) / L_k(z)."""
    z = _as_number(z)
    out = []
    p = z - alpha - 1
    out.append(p)
    for k in range(1, n + 1):
        if p == 0:
            raise PoleError(f"ratio_pi: L_{k}(z) vanished at z = {z!r}")
        beta, gamma = laguerre_recurrence_coeffs(k, alpha)
        p = z - beta - gamma / p
        out.append(p)
    return out


def ratio_pi(n, alpha, z):
    """pi_n(z) = L_{n+1}(z) / L_n(z) for z off [0, inf)."""
    _check_alpha(alpha)
    ComplexPoint.of(z).require_off_cut("ratio_pi")
    return ratio_pi_sequence(n, alpha, z)[-1]


def perron_ratio(n, alpha, z):
    """Large-n form of pi_{n-1}(z): -n - sqrt(-z n) + (2z - 2 alpha + 1)/4."""
    p = ComplexPoint.of(z).require_off_cut("perron_ratio")
    return _as_number(-n - p.sqrt_neg() * math.sqrt(n) + (2 * p.z - 2 * alpha + 1) / 4)


def perron_monic(n, alpha, z):
    """Leading Perron approximation of the monic L_n(z) off [0, inf), log-scaled.

    (-1)^n n! / (2 sqrt(pi)) e^{z/2} (-z)^{-alpha/2 - 1/4} n^{alpha/2 - 1/4} e^{2 sqrt(-n z)},
    relative error O(n^-1/2).
    """
    _check_alpha(alpha)
    p = ComplexPoint.of(z).require_off_cut("perron_monic")
    if n < 1:
        raise DomainError("perron_monic needs n >= 1")
    logv = (
        math.lgamma(n + 1)
        - math.log(2 * math.sqrt(math.pi))
        + p.z / 2
        + (-alpha / 2 - 0.25) * p.log_neg()
        + (alpha / 2 - 0.25) * math.log(n)
        + 2 * math.sqrt(n) * p.sqrt_neg()
    )
    v = LogComplex.from_log(logv)
    return -v if n % 2 else v


def theta_n(n, alpha, x):
    """Fejer phase 2 sqrt(n x) - (alpha/2 + 1/4) pi."""
    return 2 * math.sqrt(n * x) - (alpha / 2 + 0.25) * math.pi


def fejer_log_envelope(n, alpha, x):
    """log of n! n^{alpha/2-1/4} e^{x/2} pi^{-1/2} x^{-alpha/2-1/4}."""
    return (
        math.lgamma(n + 1)
        + (alpha / 2 - 0.25) * math.log(n)
        + x / 2
        - 0.5 * math.log(math.pi)
        - (alpha / 2 + 0.25) * math.log(x)
    )


def fejer_monic(n, alpha, x):
    """Fejer approximation of the monic L_n(x) for x in a compact subset of (0, inf)."""
    _check_alpha(alpha)
    if not x > 0:
        raise DomainError(f"fejer_monic requires x > 0, got {x!r}")
    c = math.cos(theta_n(n, alpha, x))
    if c == 0:
        return LogScaled.zero()
    sign = (-1) ** n * (1 if c > 0 else -1)
    return LogScaled(sign, fejer_log_envelope(n, alpha, x) + math.log(abs(c)))


def mehler_heine_laguerre(n, alpha, z, j=0):
    """Return ``(L_n^alpha(z/(n+j)) / n^alpha, z^{-alpha/2} J_alpha(2 sqrt z))``.

    ``L_n^alpha`` is the standard (not monic) polynomial; the limit is the
    entire function evaluated by :func:`bessel_j_normalized`.
    """
    _check_alpha(alpha)
    w = complex(z) / (n + j)
    lhat = monic_laguerre(n, alpha, _as_number(w))
    scaled = monic_to_standard(n, lhat) * LogScaled(1, -alpha * math.log(n))
    return scaled.to_complex(), bessel_j_normalized(alpha, z)
