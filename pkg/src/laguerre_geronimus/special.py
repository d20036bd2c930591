"""Background special functions: Gamma, Bessel J/K, Kummer U, terminating 2F2."""

import cmath
import math

from scipy import special as sc

from .errors import DomainError, NonConvergenceError, PoleError
from .quadrature import tanh_sinh
from .scaled import LogComplex, LogScaled


def log_gamma(x):
    """Natural log of Gamma(x) for real x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def log_pochhammer(a, k):
    """log |(a)_k| for a > 0."""
    return math.lgamma(a + k) - math.lgamma(a)


def bessel_j(nu, x):
    """Bessel function of the first kind J_nu(x) for nu > -1, x >= 0."""
    if not (nu > -1 and x >= 0):
        raise DomainError(f"bessel_j requires nu > -1 and x >= 0, got nu={nu!r}, x={x!r}")
    return float(sc.jv(nu, x))


def bessel_j_normalized(nu, z, tol=1e-17):
    """The entire function ``z**(-nu/2) * J_nu(2*sqrt(z))``.

    Evaluated by its power series sum_k (-z)^k / (k! Gamma(k+nu+1)), which
    removes the branch point and the 0/0 at z = 0.  For real z > 30 the
    series cancels badly and scipy's J is used instead.
    """
    z = complex(z)
    if z.imag == 0 and z.real > 30:
        x = z.real
        return complex(x ** (-nu / 2) * sc.jv(nu, 2 * math.sqrt(x)))
    term = 1.0 / math.gamma(nu + 1) if nu + 1 < 171 else math.exp(-math.lgamma(nu + 1))
    total = term
    k = 0
    while True:
        k += 1
        term *= -z / (k * (k + nu))
        total += term
        if abs(term) <= tol * abs(total) and k > abs(z):
            return total
        if k > 2000:
            raise NonConvergenceError("bessel_j_normalized series did not converge")


def bessel_k(nu, x):
    """Modified Bessel function K_nu(x) for x > 0, returned log-scaled.

    A complex ``x`` with positive real part is accepted and gives a
    :class:`LogComplex`.
    """
    if isinstance(x, complex) and x.imag != 0:
        if not x.real > 0:
            raise DomainError(f"bessel_k requires Re x > 0, got {x!r}")
        kv = complex(sc.kve(nu, x))
        return LogComplex.from_log(cmath.log(kv) - x)
    x = float(x.real if isinstance(x, complex) else x)
    if not x > 0:
        raise DomainError(f"bessel_k requires x > 0, got {x!r}")
    kv = float(sc.kve(nu, x))
    return LogScaled(1, math.log(kv) - x)


def bessel_k_asymptotic_coeff(nu, ell):
    """a_ell(nu) = prod_{j=1..ell} (4 nu^2 - (2j-1)^2) / (8^ell ell!)."""
    a = 1.0
    mu = 4.0 * nu * nu
    for j in range(1, ell + 1):
        a *= (mu - (2 * j - 1) ** 2) / (8.0 * j)
    return a


def bessel_k_asymptotic(nu, x, L):
    """Large-argument expansion of K_nu(x) truncated after ``L`` terms."""
    if not x > 0:
        raise DomainError(f"bessel_k_asymptotic requires x > 0, got {x!r}")
    if L < 1:
        raise DomainError("bessel_k_asymptotic needs L >= 1")
    s = sum(bessel_k_asymptotic_coeff(nu, ell) / x**ell for ell in range(L))
    return math.sqrt(math.pi / (2 * x)) * math.exp(-x) * s


def kummer_u(a, b, x, rtol=1e-13):
    """Kummer U(a, b, x) for a > 0, x > 0, returned log-scaled.

    Uses U = 1/Gamma(a) * int_0^inf exp(-x t) t^(a-1) (1+t)^(b-a-1) dt.  The
    integrand is divided by its value at the peak before integrating and
    the quadrature is centred on the peak, so a in the hundreds is fine.
    """
    if not (a > 0 and x > 0):
        raise DomainError(f"kummer_u requires a > 0 and x > 0, got a={a!r}, x={x!r}")
    am1 = a - 1.0
    c = b - a - 1.0

    def g(t):
        return -x * t + am1 * math.log(t) + c * math.log1p(t)

    # stationary point of g: x t^2 + (x - b + 2) t - (a - 1) = 0
    p = x - b + 2.0
    disc = p * p + 4.0 * x * am1
    t_star = (-p + math.sqrt(disc)) / (2.0 * x) if disc > 0 else 0.0
    if t_star > 0:
        g_ref = g(t_star)
        scale = t_star
    else:
        g_ref = 0.0
        scale = min(1.0, 1.0 / x)

    def integrand(t):
        return math.exp(g(t) - g_ref)

    try:
        val, _ = tanh_sinh(integrand, tol=rtol, rel=True, scale=scale)
    except NonConvergenceError as exc:
        raise NonConvergenceError(f"kummer_u({a}, {b}, {x}): {exc}", exc.estimate) from exc
    if not val > 0:
        raise NonConvergenceError(f"kummer_u({a}, {b}, {x}): non-positive quadrature result")
    return LogScaled(1, math.log(val) + g_ref - math.lgamma(a))


def _is_nonpos_int(v):
    return v <= 0 and float(v).is_integer()


def pfq_2f2(a1, a2, b1, b2, z, nterms=None):
    """Truncated or terminating 2F2(a1, a2; b1, b2; z).

    The series terminates when ``a1`` is a non-positive integer; otherwise
    ``nterms`` must be given.  A denominator Pochhammer symbol that vanishes
    before the numerator one raises :class:`PoleError`.
    """
    if _is_nonpos_int(a1):
        kmax = int(-a1)
        if nterms is not None:
            kmax = min(kmax, nterms - 1)
    elif nterms is None:
        raise DomainError("pfq_2f2: nterms required when a1 is not a non-positive integer")
    else:
        kmax = nterms - 1
    z = complex(z)
    term = 1.0 + 0j
    total = term
    for k in range(kmax):
        num = (a1 + k) * (a2 + k)
        den = (b1 + k) * (b2 + k) * (k + 1)
        if den == 0:
            if num == 0:
                break
            raise PoleError(f"pfq_2f2: denominator Pochhammer vanishes at k={k}")
        term = term * num / den * z
        total += term
    return total
