"""Large-n formulas for Lambda_n and Q_n, and the convergence-order harness.

Every formula with a two-valued sign takes ``sign`` explicitly (default:
+1 when N > 0, -1 when N = 0), so both branches run through the same code.
Throughout, ``s`` is that sign, so e.g. Lambda_n ~ n + s sqrt(-c n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DegenerateError, DomainError
from .geronimus import eval_Q, lambda_sequence, perturbed_recurrence
from .laguerre import (
    eval_monic_laguerre,
    fejer_log_envelope,
    laguerre_pair,
    monic_laguerre,
    monic_to_standard,
    perron_ratio,
    ratio_pi_sequence,
    theta_n,
)
from .scaled import ComplexPoint, LogComplex, LogScaled
from .second_kind import asymp_second_kind, eval_second_kind, ratio_r_asymptotic, ratio_r_sequence, second_kind_sequence
from .special import bessel_j_normalized

DEFAULT_GRID = tuple(100 * 2**k for k in range(7))


def _sign(params, sign):
    if sign is None:
        return params.sign
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    return sign


def lambda_asymptotic(n, params, sign=None):
    """n + s sqrt(-c n) + (2 alpha - 2c - 1)/4."""
    if n < 1:
        raise DomainError("lambda_asymptotic needs n >= 1")
    s = _sign(params, sign)
    return n + s * math.sqrt(-params.c * n) + (2 * params.alpha - 2 * params.c - 1) / 4


@dataclass(frozen=True)
class CrossoverInfo:
    """``D`` and the first n with N D e^{4 sqrt(-c n)} > 1 (None when N = 0)."""

    D: float
    n_star: int | None


def crossover(params):
    """Where the mass term N L_{n-1}^2 overtakes L_{n-1} F_{n-1} in the Lambda denominator.

    The ratio of the two terms behaves like N D e^{4 sqrt(-c n)} with
    D = e^c (-c)^{-alpha} / (2 pi).
    """
    a, c, N = params.alpha, params.c, params.N
    D = math.exp(c) * (-c) ** (-a) / (2 * math.pi)
    if N == 0:
        return CrossoverInfo(D, None)
    t = math.log(1 / (N * D))
    if t < 0:
        return CrossoverInfo(D, 1)
    n = math.floor((t / (4 * math.sqrt(-c))) ** 2) + 1
    # guard the boundary against rounding in the closed form
    while n > 1 and N * D * math.exp(4 * math.sqrt(-c * (n - 1))) > 1:
        n -= 1
    while N * D * math.exp(4 * math.sqrt(-c * n)) <= 1:
        n += 1
    return CrossoverInfo(D, n)


def strong_outer_Q(n, params, z, sign=None):
    """(-1)^n n!/(2 sqrt pi) e^{z/2 + 2 sqrt(-nz)} (-z)^{-alpha/2-1/4} n^{alpha/2-3/4} (sqrt(-z) - s sqrt(-c))."""
    s = _sign(params, sign)
    p = ComplexPoint.of(z).require_off_cut("strong_outer_Q")
    a = params.alpha
    factor = p.sqrt_neg() - s * math.sqrt(-params.c)
    logv = (
        math.lgamma(n + 1)
        - math.log(2 * math.sqrt(math.pi))
        + p.z / 2
        + 2 * math.sqrt(n) * p.sqrt_neg()
        + (-a / 2 - 0.25) * p.log_neg()
        + (a / 2 - 0.75) * math.log(n)
    )
    v = LogComplex.from_log(logv) * factor
    return -v if n % 2 else v


def relative_Q(n, params, z, sign=None):
    """Two-term ratio Q_n/L_n ~ w/sqrt(n) - w^2/(2n), w = sqrt(-z) - s sqrt(-c)."""
    s = _sign(params, sign)
    p = ComplexPoint.of(z).require_off_cut("relative_Q")
    w = p.sqrt_neg() - s * math.sqrt(-params.c)
    v = w / math.sqrt(n) - w * w / (2 * n)
    return v.real if isinstance(z, (int, float)) else v


def exact_ratio_Q_L(n, params, z):
    """Q_n(z)/L_n(z) = 1 + Lambda_n L_{n-1}(z)/L_n(z), exact at z = c as well."""
    if complex(z) == params.c:
        v = (eval_Q(n, params, z) / monic_laguerre(n, params.alpha, z)).to_complex()
    else:
        lam = lambda_sequence(n, params)[n]
        m_prev, m, _ = laguerre_pair(n, params.alpha, z)
        v = 1 + lam * m_prev / m
    return v.real if isinstance(v, complex) and isinstance(z, (int, float)) else v


def inner_log_envelope(n, alpha, x):
    """log of n! n^{alpha/2-3/4} e^{x/2} pi^{-1/2} x^{-alpha/2-1/4}."""
    return fejer_log_envelope(n, alpha, x) - 0.5 * math.log(n)


def inner_bracket(n, params, x, sign=None):
    s = _sign(params, sign)
    th = theta_n(n, params.alpha, x)
    return math.sqrt(x) * math.sin(th) + s * math.sqrt(-params.c) * math.cos(th)


def inner_Q(n, params, x, sign=None):
    """(-1)^{n+1} n! n^{alpha/2-3/4} e^{x/2} pi^{-1/2} x^{-alpha/2-1/4} [sqrt(x) sin theta + s sqrt(-c) cos theta]."""
    if not x > 0:
        raise DomainError(f"inner_Q requires x > 0, got {x!r}")
    b = inner_bracket(n, params, x, sign)
    if b == 0:
        return LogScaled.zero()
    sgn = (-1) ** (n + 1) * (1 if b > 0 else -1)
    return LogScaled(sgn, inner_log_envelope(n, params.alpha, x) + math.log(abs(b)))


def inner_normalized_exact(n, params, x):
    """(-1)^{n+1} Q_n(x) divided by the inner envelope; compare with :func:`inner_bracket`."""
    q = eval_Q(n, params, x)
    if q.is_zero:
        return 0.0
    v = q.phase.real * math.exp(q.logmag - inner_log_envelope(n, params.alpha, x))
    return -v if n % 2 == 0 else v


def mehler_heine_Q(n, params, z, sign=None):
    """Return ``(scaled, limit)``.

    scaled = (-1)^n / n! Q_n(z/n) / n^{alpha - 1/2};
    limit = -s sqrt(-c) z^{-alpha/2} J_alpha(2 sqrt z).
    """
    s = _sign(params, sign)
    a = params.alpha
    q = eval_Q(n, params, complex(z) / n)
    scaled = monic_to_standard(n, q) * LogScaled(1, -(a - 0.5) * math.log(n))
    limit = -s * math.sqrt(-params.c) * bessel_j_normalized(a, z)
    return scaled.to_complex(), limit


def recurrence_coeff_asymptotic(n, params, sign=None):
    """(1 - 1/(2n) - s sqrt(-c)/(4 n^{3/2}), 1 + 1/n - s sqrt(-c)/(2 n^{3/2}))."""
    s = _sign(params, sign)
    r = math.sqrt(-params.c)
    return 1 - 1 / (2 * n) - s * r / (4 * n**1.5), 1 + 1 / n - s * r / (2 * n**1.5)


@dataclass(frozen=True)
class OrderFit:
    """Least-squares fit of log(error) = log(C) - p log(n)."""

    n_grid: tuple
    errors: tuple
    p_hat: float
    r2: float
    log_C: float
    monotone: bool

    @property
    def reliable(self):
        return self.monotone and self.r2 > 0.98

    def within(self, p_claimed, band=0.15, r2_min=0.98):
        return abs(self.p_hat - p_claimed) <= band and self.r2 > r2_min

    def as_dict(self):
        return {
            "n_grid": list(self.n_grid),
            "errors": list(self.errors),
            "p_hat": self.p_hat,
            "r2": self.r2,
            "monotone": self.monotone,
        }


def estimate_order(n_grid, errors):
    """Fit the decay order p of ``errors`` ~ C n^{-p}."""
    n_grid = tuple(int(n) for n in n_grid)
    errors = tuple(float(e) for e in errors)
    if len(n_grid) != len(errors):
        raise DomainError("n_grid and errors differ in length")
    if len(n_grid) < 4:
        raise DegenerateError("estimate_order needs at least 4 points")
    if any(not (e > 0 and math.isfinite(e)) for e in errors):
        raise DegenerateError("estimate_order needs positive finite errors")
    x = np.log(n_grid)
    y = np.log(errors)
    if np.ptp(y) == 0:
        return OrderFit(n_grid, errors, 0.0, 0.0, float(y[0]), False)
    res = stats.linregress(x, y)
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    return OrderFit(n_grid, errors, float(-res.slope), float(res.rvalue**2), float(res.intercept), monotone)


# error sequences ------------------------------------------------------------


def lambda_errors(params, grid=DEFAULT_GRID):
    lam = lambda_sequence(max(grid), params)
    return [abs(lam[n] - lambda_asymptotic(n, params)) for n in grid]


def outer_errors(params, z, grid=DEFAULT_GRID):
    out = []
    for n in grid:
        exact = eval_Q(n, params, z)
        approx = strong_outer_Q(n, params, z)
        out.append(abs((approx / exact).to_complex() - 1))
    return out


def relative_errors(params, z, grid=DEFAULT_GRID):
    return [abs(exact_ratio_Q_L(n, params, z) - relative_Q(n, params, z)) for n in grid]


def inner_errors(params, x, grid=DEFAULT_GRID, samples=64):
    """Sup over one oscillation period starting at x of |Q/envelope - bracket|."""
    out = []
    for n in grid:
        period = math.pi * math.sqrt(x / n)
        worst = 0.0
        for j in range(samples):
            xj = x + period * j / samples
            worst = max(worst, abs(inner_normalized_exact(n, params, xj) - inner_bracket(n, params, xj)))
        out.append(worst)
    return out


def asymp_f_errors(alpha, z, order, grid=DEFAULT_GRID):
    out = []
    for n in grid:
        exact = eval_second_kind(n, alpha, z)
        approx = asymp_second_kind(n, alpha, z, order)
        out.append(abs((approx / exact).to_complex() - 1))
    return out


def ratio_pi_errors(alpha, z, grid=DEFAULT_GRID):
    pis = ratio_pi_sequence(max(grid), alpha, z)
    return [abs(pis[n - 1] - perron_ratio(n, alpha, z)) for n in grid]


def ratio_r_errors(alpha, z, grid=DEFAULT_GRID):
    rs = ratio_r_sequence(max(grid), alpha, z)
    return [abs(rs[n - 1] - ratio_r_asymptotic(n, alpha, z)) for n in grid]


def beta_profile_errors(params, grid=DEFAULT_GRID, sign=None):
    """beta~_n/beta_n - (1 - 1/(2n)): the n^{-3/2} coefficient is -s sqrt(-c)/4."""
    rec = perturbed_recurrence(max(grid) + 1, params)
    a = params.alpha
    return [rec.beta_t[n] / (2 * n + a + 1) - (1 - 1 / (2 * n)) for n in grid]


def gamma_profile_errors(params, grid=DEFAULT_GRID):
    """gamma~_n/gamma_{n-1} - (1 + 1/n): the n^{-3/2} coefficient is -s sqrt(-c)/2."""
    rec = perturbed_recurrence(max(grid) + 1, params)
    a = params.alpha
    return [rec.gamma_t[n] / ((n - 1) * (n - 1 + a)) - (1 + 1 / n) for n in grid]


def casoratian_product_errors(alpha, c, grid=DEFAULT_GRID):
    """Relative error of L_{n-1} F_{n-1} against Gamma(n) Gamma(n+alpha) / (2 sqrt(-c n))."""
    out = []
    lseq = eval_monic_laguerre(max(grid), alpha, c)
    fseq, _ = second_kind_sequence(max(grid), alpha, c)
    for n in grid:
        prod = abs(lseq[n - 1]) * abs(fseq[n - 1])
        ref = math.lgamma(n) + math.lgamma(n + alpha) - math.log(2 * math.sqrt(-c * n))
        out.append(abs(math.expm1(prod.logmag - ref)))
    return out
