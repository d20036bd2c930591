"""Laguerre functions of the second kind and their ratios.

    F_n(z) = int_0^inf L_n(t) t^alpha e^-t / (t - z) dt
           = (-1)^n n! Gamma(n+alpha+1) U(n+1, 1-alpha, z e^{+-pi i})

F_n is the minimal solution of the monic Laguerre recurrence off [0, inf):
it decays like e^{-2 sqrt(-zn)} relative to L_n.  Forward recursion
therefore amplifies any seed error by roughly e^{4 sqrt(-zn)}, and F_n is
computed instead from the ratios r_n = F_{n+1}/F_n, obtained by running
the continued fraction r_{k-1} = gamma_k / (z - beta_k - r_k) backwards
from a deep, asymptotically seeded tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError
from .laguerre import _as_number, _check_alpha, monic_laguerre_table
from .quadrature import exp_sinh_rule, tanh_sinh
from .scaled import ComplexPoint, LogComplex, LogScaled
from .special import bessel_k, kummer_u

MAX_DEPTH = 2**18


@dataclass(frozen=True)
class TailSeed:
    """Starting value for the backward continued fraction.

    ``value`` estimates r_{n_start} with the three-term large-n form
    -(k) + sqrt(-z k) + (2z - 2 alpha + 1)/4 at k = n_start + 1.
    """

    n_start: int
    value: complex
    order: int = 3


def tail_seed(n_start, alpha, z):
    k = n_start + 1
    p = ComplexPoint.of(z)
    v = -k + p.sqrt_neg() * math.sqrt(k) + (2 * p.z - 2 * alpha + 1) / 4
    return TailSeed(n_start, _as_number(v))


def ratio_r_asymptotic(n, alpha, z):
    """Large-n form of r_{n-1}(z): -n + sqrt(-z n) + (2z - 2 alpha + 1)/4."""
    p = ComplexPoint.of(z).require_off_cut("ratio_r_asymptotic")
    return _as_number(-n + p.sqrt_neg() * math.sqrt(n) + (2 * p.z - 2 * alpha + 1) / 4)


def _backward_sweep(nmax, alpha, z, depth):
    r = tail_seed(depth, alpha, z).value
    out = [0.0] * (nmax + 1)
    for k in range(depth, 0, -1):
        beta = 2 * k + alpha + 1
        gamma = k * (k + alpha)
        r = gamma / (z - beta - r)
        if k <= nmax + 1:
            out[k - 1] = r
    return out


def ratio_r_sequence(nmax, alpha, z, tol=1e-14):
    """[r_0(z), ..., r_nmax(z)] by the backward continued fraction.

    The seed depth starts at ``max(2 nmax, nmax + 64)`` and is doubled until
    two successive sweeps agree to relative ``tol`` at every index <= nmax.
    """
    _check_alpha(alpha)
    p = ComplexPoint.of(z).require_off_cut("ratio_r_cf")
    z = _as_number(p.z)
    depth = max(2 * nmax, nmax + 64)
    prev = _backward_sweep(nmax, alpha, z, depth)
    while True:
        depth *= 2
        if depth > MAX_DEPTH:
            raise NonConvergenceError(
                f"ratio_r_cf: no agreement to {tol:g} at n={nmax}, z={z!r} by depth {MAX_DEPTH}"
            )
        cur = _backward_sweep(nmax, alpha, z, depth)
        diff = max(abs(a - b) / abs(a) for a, b in zip(cur, prev))
        if diff <= tol:
            return cur
        prev = cur


def ratio_r_cf(n, alpha, z, tol=1e-14):
    """r_n(z) = F_{n+1}(z) / F_n(z)."""
    return ratio_r_sequence(n, alpha, z, tol)[n]


def f0_second_kind(alpha, c):
    """F_0(c) = Gamma(alpha+1) U(1, 1-alpha, -c) for c < 0."""
    _check_alpha(alpha)
    if not c < 0:
        raise DomainError(f"f0_second_kind requires c < 0, got {c!r}")
    return math.gamma(alpha + 1) * kummer_u(1.0, 1.0 - alpha, -c).to_float()


def second_kind_sequence(nmax, alpha, c, tol=1e-14):
    """Log-scaled F_0(c)..F_nmax(c) together with the ratios used.

    Returns ``(values, ratios)``; ``values[k]`` is a :class:`LogScaled`.
    """
    if not c < 0:
        raise DomainError(f"second kind functions are evaluated at c < 0, got {c!r}")
    f0 = f0_second_kind(alpha, c)
    ratios = ratio_r_sequence(max(nmax - 1, 0), alpha, c, tol) if nmax > 0 else []
    logs = [math.log(f0)]
    acc = logs[0]
    for k in range(nmax):
        acc += math.log(abs(ratios[k]))
        logs.append(acc)
    values = [LogScaled((-1) ** k, logs[k]) for k in range(nmax + 1)]
    return values, ratios


def eval_second_kind(n, alpha, c, tol=1e-14):
    """F_n(c) for c < 0 as F_0(c) * prod_{k<n} r_k(c), log-scaled; sign (-1)^n."""
    if n < 0:
        raise DomainError("n must be non-negative")
    values, _ = second_kind_sequence(n, alpha, c, tol)
    return values[n]


def second_kind_quadrature_oracle(n, alpha, c, tol=1e-12):
    """F_n(c) by direct quadrature of the Stieltjes integral (oracle only, n <= 30).

    ``c`` may be complex off [0, inf).  ``tol`` is relative; it is floored at
    the rounding level set by cancellation in the oscillating integrand.
    """
    _check_alpha(alpha)
    if n > 30:
        raise DomainError("quadrature oracle limited to n <= 30")
    p = ComplexPoint.of(c).require_off_cut("second_kind_quadrature_oracle")
    z = p.z

    def weight(t):
        return math.exp(alpha * math.log(t) - t) if t < 800 else 0.0

    def lhat(t):
        return float(monic_laguerre_table(n, alpha, t)[n]) if t < 800 else 0.0

    scale = max(1.0, float(n))
    # size of int |integrand|, which sets the cancellation floor
    t, w = exp_sinh_rule(1 / 32, scale)
    mag = sum(abs(lhat(x)) * weight(x) / abs(x - z) * wx for x, wx in zip(t, w))
    floor = 64 * 2.2e-16 * mag
    parts = []
    for part in (lambda v: v.real, lambda v: v.imag)[: 2 if z.imag != 0 else 1]:
        f = (lambda x, part=part: part(lhat(x) * weight(x) / (x - z)))
        v, _ = tanh_sinh(f, tol=max(floor, tol * 1e-3 * mag), scale=scale, max_levels=14)
        parts.append(v)
    if len(parts) == 1:
        return parts[0]
    return complex(parts[0], parts[1])


def asymp_f_coeffs(alpha, z):
    """Coefficients e_0, e_1, e_2 of the large-n expansion of F_n(z) (z, not -z)."""
    a = alpha
    e1 = (12 * a * a - 3 + 24 * z * (1 + a) - 4 * z * z) / 48
    e2 = (
        16 * z**4
        - 192 * (1 + a) * z**3
        + 24 * (20 * a * a + 48 * a + 13) * z**2
        + 144 * (a + 1) * (2 * a + 1) * (2 * a + 3) * z
        + 9 * (4 * a * a - 1) * (4 * a * a - 9)
    ) / 4608
    return 1.0, e1, e2


def asymp_second_kind(n, alpha, z, order=0):
    """Large-n approximation of F_n(z) truncated after ``order + 1`` terms.

    (-1)^n sqrt(pi) (-z)^{alpha/2-1/4} e^{-z/2 - 2 sqrt(-zn)} Gamma(n+alpha+1)
    n^{-alpha/2-1/4} [e_0 + e_1/sqrt(-zn) + e_2/(-zn)].
    """
    _check_alpha(alpha)
    if order not in (0, 1, 2):
        raise DomainError("order must be 0, 1 or 2")
    p = ComplexPoint.of(z).require_off_cut("asymp_second_kind")
    w = p.sqrt_neg() * math.sqrt(n)
    e = asymp_f_coeffs(alpha, p.z)
    bracket = e[0]
    if order >= 1:
        bracket += e[1] / w
    if order >= 2:
        bracket += e[2] / (w * w)
    logv = (
        0.5 * math.log(math.pi)
        + (alpha / 2 - 0.25) * p.log_neg()
        - p.z / 2
        - 2 * w
        + math.lgamma(n + alpha + 1)
        - (alpha / 2 + 0.25) * math.log(n)
    )
    v = LogComplex.from_log(logv) * complex(bracket)
    return -v if n % 2 else v


@dataclass(frozen=True)
class WatsonExpansion:
    """Taylor coefficients d_m of f(tau) = e^{x mu(tau)} (tau/(1-e^-tau))^{1-alpha}.

    ``x`` is the Kummer argument (x = -z for the functions of the second kind).
    """

    alpha: float
    M: int = 4

    def d(self, m, x):
        a = self.alpha
        if m == 0:
            return 1.0
        if m == 1:
            return (6 * (1 - a) - x) / 12
        if m == 2:
            return (x * x - 12 * (1 - a) * x + 12 * (a - 1) * (3 * a - 2)) / 288
        if m == 3:
            return (
                -5 * x**3 + 90 * (1 - a) * x**2 - 36 * (15 * a * a - 25 * a + 8) * x - 1080 * a * (a - 1) ** 2
            ) / 51840
        raise DomainError("d_m hardcoded for m <= 3 only")

    def coeffs(self, x):
        return [self.d(m, x) for m in range(self.M)]


def watson_d_coeffs(alpha):
    return WatsonExpansion(alpha)


def watson_taylor_oracle(alpha, x, M=4, radius=1.0, points=64):
    """Taylor coefficients of f(tau) from a discrete Cauchy integral on |tau| = radius.

    Independent of the hardcoded d_m; f is analytic for |tau| < 2 pi.
    """
    b = 1 - alpha
    tau = radius * np.exp(2j * np.pi * np.arange(points) / points)
    mu = 1 / tau - 1 / np.expm1(tau) - 0.5
    f = np.exp(x * mu) * (tau / -np.expm1(-tau)) ** b
    c = np.fft.fft(f) / points
    return [complex(c[m]) / radius**m for m in range(M)]


def _mu(tau):
    return 1 / tau - 1 / math.expm1(tau) - 0.5


def phi_m(m, n, alpha, z):
    """Watson asymptotic sequence at a = n + 1, b = 1 - alpha, argument z e^{+-pi i}.

    (2 e^{zeta/2} / n!) (zeta/(n+1))^{(m+alpha)/2} K_{m+alpha}(2 sqrt((n+1) zeta)),
    zeta = z e^{+-pi i}, log-scaled.
    """
    p = ComplexPoint.of(z).require_off_cut("phi_m")
    zeta = p.rotated()
    log_zeta = p.log_neg()
    arg = 2 * math.sqrt(n + 1) * p.sqrt_neg()
    if arg.real <= 0:
        raise DomainError("phi_m: Bessel argument must have positive real part")
    nu = m + alpha
    k = bessel_k(nu, arg if arg.imag != 0 else arg.real)
    log_k = k.to_complex().log() if isinstance(k, LogComplex) else complex(k.logmag, 0.0)
    logv = math.log(2) + zeta / 2 - math.lgamma(n + 1) + (nu / 2) * (log_zeta - math.log(n + 1)) + log_k
    return LogComplex.from_log(logv)


def watson_second_kind(n, alpha, z, M=4):
    """F_n(z) ~ (-1)^n n! Gamma(n+alpha+1) sum_{m<M} d_m(alpha, zeta) phi_m."""
    p = ComplexPoint.of(z).require_off_cut("watson_second_kind")
    zeta = p.rotated()
    w = WatsonExpansion(alpha, M)
    total = LogComplex(0j, -math.inf)
    for m in range(M):
        total = total + phi_m(m, n, alpha, p.z) * complex(w.d(m, zeta))
    pref = LogScaled((-1) ** n, math.lgamma(n + 1) + math.lgamma(n + alpha + 1))
    return total * pref


def forward_second_kind(nmax, alpha, c, f0, f1):
    """Run the recurrence forward from seeds (F_0, F_1); unstable, kept for the regression check."""
    out = [f0, f1]
    for k in range(1, nmax):
        beta = 2 * k + alpha + 1
        gamma = k * (k + alpha)
        out.append((c - beta) * out[-1] - gamma * out[-2])
    return out
