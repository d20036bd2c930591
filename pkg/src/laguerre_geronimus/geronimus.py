"""Laguerre-Geronimus polynomials.

The monic polynomials Q_n orthogonal with respect to

    <p, q> = int_0^inf p q x^alpha e^-x / (x - c) dx + N p(c) q(c),  c < 0, N >= 0,

are given by the connection formula Q_n = L_n + Lambda_n L_{n-1}.  Writing
orthogonality of Q_n against the constant polynomial gives

    Lambda_n = -(F_n(c) + N L_n(c)) / (F_{n-1}(c) + N L_{n-1}(c))
             = -Gamma(n) Gamma(n+alpha) / (L_{n-1} F_{n-1} + N L_{n-1}^2) - pi_{n-1}(c),

where the second form follows from the Casoratian of (L, F).  Both products
in the denominator are positive (L_k(c) and F_k(c) share the sign (-1)^k),
so Lambda_n > 0 and no cancellation occurs.  For N = 0 the first form
reduces to Lambda_n = -r_{n-1}(c).

By convention ``Lambda_0 = 0`` (harmless since L_{-1} = 0); with it the
perturbed recurrence coefficient beta~_0 = alpha + 1 - Lambda_1 fits the
general formula beta~_n = beta_n + Lambda_n - Lambda_{n+1}.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_genlaguerre

from .errors import DegenerateError, DomainError, MeasureError, PoleError
from .laguerre import (
    eval_monic_laguerre,
    laguerre_pair,
    laguerre_recurrence_coeffs,
    monic_laguerre_coeffs,
    monic_laguerre_table,
    ratio_pi_sequence,
)
from .quadrature import exp_sinh_rule
from .scaled import LogComplex, LogScaled, pow2_normalize
from .second_kind import f0_second_kind, ratio_r_sequence, second_kind_sequence

MAX_INNER_DEGREE = 60
MAX_GRAM_N = 12


@dataclass(frozen=True)
class GeronimusParams:
    """Parameters of the perturbed measure: alpha > -1, c < 0, N >= 0."""

    alpha: float
    c: float
    N: float

    def __post_init__(self):
        for name in ("alpha", "c", "N"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise DomainError(f"{name} must be a finite real number, got {v!r}")
        if not self.alpha > -1:
            raise DomainError(f"alpha must exceed -1, got {self.alpha!r}")
        if not self.c < 0:
            raise DomainError(f"c must be negative (the mass point lies left of the support), got {self.c!r}")
        if not self.N >= 0:
            raise DomainError(f"N must be non-negative, got {self.N!r}")

    @property
    def sign(self):
        """+1 for the N > 0 branch, -1 for N = 0 (the upper/lower asymptotic sign)."""
        return 1 if self.N > 0 else -1


class Branch(str, Enum):
    N_POSITIVE = "N_positive"
    N_ZERO = "N_zero"


@dataclass(frozen=True)
class LambdaValue:
    n: int
    value: float
    branch: Branch


def _branch(params):
    return Branch.N_POSITIVE if params.N > 0 else Branch.N_ZERO


def _compute_lambdas(nmax, params):
    """[Lambda_0 = 0, Lambda_1, ..., Lambda_nmax]."""
    a, c, N = params.alpha, params.c, params.N
    lam = np.zeros(nmax + 1)
    if nmax == 0:
        return lam
    if N == 0:
        r = ratio_r_sequence(nmax - 1, a, c)
        lam[1:] = [-x for x in r[:nmax]]
        return lam
    lseq = eval_monic_laguerre(nmax - 1, a, c)
    fseq, _ = second_kind_sequence(nmax - 1, a, c)
    pis = ratio_pi_sequence(nmax - 1, a, c)
    log_n = math.log(N)
    for n in range(1, nmax + 1):
        k = n - 1
        lk, fk = lseq[k], fseq[k]
        # both carry the sign (-1)^k at c < 0, so every term below is positive
        if lk.is_zero or fk.is_zero or lk.phase.real * fk.sign <= 0:
            raise DegenerateError(f"lambda_n: L_{k}(c) F_{k}(c) is not positive at n={n}")
        log_lf = lk.logmag + fk.logmag
        log_nl2 = log_n + 2 * lk.logmag
        hi, lo = max(log_lf, log_nl2), min(log_lf, log_nl2)
        log_den = hi + math.log1p(math.exp(lo - hi))
        if not math.isfinite(log_den):
            raise DegenerateError(f"lambda_n: denominator not finite at n={n}")
        lam[n] = -math.exp(math.lgamma(n) + math.lgamma(n + a) - log_den) - pis[k]
    return lam


class _LambdaCache:
    """Per-parameter Lambda sequences; readers share, one writer extends."""

    def __init__(self, maxsize=64):
        self._data = {}
        self._lock = threading.Lock()
        self._maxsize = maxsize

    def get(self, nmax, params):
        seq = self._data.get(params)
        if seq is not None and len(seq) > nmax:
            return seq
        with self._lock:
            seq = self._data.get(params)
            if seq is None or len(seq) <= nmax:
                size = nmax if seq is None else max(nmax, 2 * (len(seq) - 1))
                seq = _compute_lambdas(size, params)
                seq.setflags(write=False)
                if len(self._data) >= self._maxsize:
                    self._data.pop(next(iter(self._data)))
                self._data[params] = seq
            return seq

    def clear(self):
        with self._lock:
            self._data.clear()


_CACHE = _LambdaCache()


def lambda_sequence(nmax, params):
    """Read-only array ``lam`` with ``lam[n] = Lambda_n`` for 0 <= n <= nmax (lam[0] = 0)."""
    if nmax < 0:
        raise DomainError("nmax must be non-negative")
    return _CACHE.get(nmax, params)[: nmax + 1]


def lambda_n(n, params):
    """Lambda_n for n >= 1."""
    if n < 1:
        raise DomainError(f"lambda_n needs n >= 1, got {n}")
    return LambdaValue(n, float(lambda_sequence(n, params)[n]), _branch(params))


def lambda_direct_ratio(n, params):
    """Lambda_n from -(F_n + N L_n)/(F_{n-1} + N L_{n-1}) at c (small n oracle)."""
    a, c, N = params.alpha, params.c, params.N
    fseq, _ = second_kind_sequence(n, a, c)
    lseq = eval_monic_laguerre(n, a, c)

    def s(k):
        return fseq[k].to_float() + N * lseq[k].to_complex().real

    return -s(n) / s(n - 1)


def eval_Q(n, params, z):
    """Q_n(z) = L_n(z) + Lambda_n L_{n-1}(z), log-scaled.

    At z = c the cancellation-free :func:`Q_at_mass_point` is used.  Close
    to (but not at) c the two terms still nearly cancel, and the absolute
    error is about eps |L_n(z)| rather than eps |Q_n(z)|.
    """
    if n < 0:
        raise DomainError("n must be non-negative")
    if n == 0:
        return LogComplex(1 + 0j, 0.0)
    if complex(z) == params.c:
        return LogComplex.from_scaled(Q_at_mass_point(n, params))
    lam = lambda_sequence(n, params)[n]
    m_prev, m, ls = laguerre_pair(n, params.alpha, z)
    return LogComplex.from_mantissa(m + lam * m_prev, ls)


def Q_at_mass_point(n, params):
    """Q_n(c) = -Gamma(n) Gamma(n+alpha) / (F_{n-1}(c) + N L_{n-1}(c)), log-scaled.

    The connection formula cancels almost completely at z = c (Lambda_n is
    close to -pi_{n-1}(c)); this form has no cancellation.
    """
    if n == 0:
        return LogScaled(1, 0.0)
    a, c, N = params.alpha, params.c, params.N
    fseq, _ = second_kind_sequence(n - 1, a, c)
    f = fseq[n - 1]
    den = f
    if N > 0:
        lk = eval_monic_laguerre(n - 1, a, c)[n - 1]
        den = f + LogScaled(f.sign, math.log(N) + lk.logmag)
    return -LogScaled(1, math.lgamma(n) + math.lgamma(n + a)) / den


def eval_Q_float(n, params, z):
    """Plain complex value of Q_n(z) (raises OverflowError when out of range)."""
    return eval_Q(n, params, z).to_complex()


def Q_coeffs(n, params):
    """Ascending monomial coefficients of Q_n."""
    c = monic_laguerre_coeffs(n, params.alpha)
    if n >= 1:
        c[:n] += lambda_sequence(n, params)[n] * monic_laguerre_coeffs(n - 1, params.alpha)
    return c


def inner_product_nu(p, q, params):
    """<p, q> for polynomials given by ascending coefficients.

    p q = (x - c) s + p(c) q(c), so <p, q> = int s x^alpha e^-x dx + p(c) q(c) (F_0(c) + N).
    s is sampled at the Gauss-Laguerre nodes as (pq(x) - pq(c)) / (x - c),
    which is well conditioned because the nodes stay at distance >= |c|
    from c; ceil((deg+2)/2) + 5 nodes integrate s exactly.
    """
    P = np.polynomial.Polynomial(np.atleast_1d(np.asarray(p, dtype=float)))
    Qp = np.polynomial.Polynomial(np.atleast_1d(np.asarray(q, dtype=float)))
    deg = P.degree() + Qp.degree()
    if deg > MAX_INNER_DEGREE:
        raise DomainError(f"inner_product_nu: deg p + deg q = {deg} exceeds {MAX_INNER_DEGREE}")
    c = params.c
    rc = P(c) * Qp(c)
    m = math.ceil((deg + 2) / 2) + 5
    x, w = roots_genlaguerre(m, params.alpha)
    s = (P(x) * Qp(x) - rc) / (x - c)
    return math.fsum(w * s) + rc * (f0_second_kind(params.alpha, c) + params.N)


@dataclass(frozen=True)
class GramResult:
    matrix: np.ndarray = field(repr=False)
    offdiag_max: float
    quad_change: float


def _gram_at(nmax, params, h, scale):
    t, w = exp_sinh_rule(h, scale)
    keep = t < 800.0  # e^-t underflows beyond this
    t, w = t[keep], w[keep]
    a, c = params.alpha, params.c
    lam = lambda_sequence(max(nmax, 1), params)
    L = monic_laguerre_table(nmax, a, t)
    Q = L.copy()
    Q[1:] = L[1:] + lam[1 : nmax + 1, None] * L[:-1]
    with np.errstate(under="ignore"):
        wt = w * np.exp(a * np.log(t) - t) / (t - c)
    qc = np.array([eval_Q(k, params, c).to_complex().real for k in range(nmax + 1)])
    G = np.empty((nmax + 1, nmax + 1))
    for i in range(nmax + 1):
        for j in range(i, nmax + 1):
            v = math.fsum(Q[i] * Q[j] * wt) + params.N * qc[i] * qc[j]
            G[i, j] = G[j, i] = v
    return G


def normalized_offdiag_max(G):
    d = np.sqrt(np.diag(G))
    R = G / np.outer(d, d)
    np.fill_diagonal(R, 0.0)
    return float(np.max(np.abs(R))) if len(G) > 1 else 0.0


def gram_matrix(nmax, params, h=1 / 64):
    """Gram matrix G_ij = <Q_i, Q_j> for i, j <= nmax.

    The rational weight is integrated with a fixed double-exponential rule at
    step h and again at h/2; ``quad_change`` is the normalized difference.
    """
    if nmax > MAX_GRAM_N:
        raise DomainError(f"gram_matrix: nmax={nmax} exceeds {MAX_GRAM_N}")
    if nmax < 0:
        raise DomainError("nmax must be non-negative")
    G1 = _gram_at(nmax, params, h, 1.0)
    G2 = _gram_at(nmax, params, h / 2, 1.0)
    d = np.sqrt(np.abs(np.diag(G2)))
    change = float(np.max(np.abs(G1 - G2) / np.outer(d, d)))
    if np.any(np.diag(G2) <= 0):
        raise MeasureError("gram_matrix: non-positive diagonal entry")
    return GramResult(G2, normalized_offdiag_max(G2), change)


@dataclass(frozen=True)
class PerturbedRecurrence:
    """z Q_n = Q_{n+1} + beta_t[n] Q_n + gamma_t[n] Q_{n-1}, 0 <= n <= nmax.

    ``gamma_t[0]`` is 0 by convention.
    """

    nmax: int
    beta_t: np.ndarray = field(repr=False)
    gamma_t: np.ndarray = field(repr=False)
    lambdas: np.ndarray = field(repr=False)


def perturbed_recurrence(nmax, params):
    """beta~_n = beta_n + Lambda_n - Lambda_{n+1}; gamma~_n = (Lambda_n / Lambda_{n-1}) gamma_{n-1}.

    gamma~_1 (where Lambda_0 carries no information) comes from the closure
    relation gamma_1 + Lambda_1 beta_0 = beta~_1 Lambda_1 + gamma~_1.
    """
    if nmax < 1:
        raise DomainError("perturbed_recurrence needs nmax >= 1")
    a = params.alpha
    lam = np.array(lambda_sequence(nmax + 1, params))
    k = np.arange(nmax + 1)
    beta = 2 * k + a + 1
    gamma = k * (k + a)
    bt = beta + lam[: nmax + 1] - lam[1 : nmax + 2]
    gt = np.zeros(nmax + 1)
    gt[1] = gamma[1] + lam[1] * beta[0] - bt[1] * lam[1]
    if nmax >= 2:
        gt[2:] = lam[2 : nmax + 1] / lam[1:nmax] * gamma[1:nmax]
    if np.any(gt[1:] <= 0):
        bad = int(np.argmax(gt[1:] <= 0)) + 1
        raise MeasureError(f"perturbed_recurrence: gamma~_{bad} = {gt[bad]!r} is not positive")
    return PerturbedRecurrence(nmax, bt, gt, lam)


def closure_residual(n, params):
    """Relative residual of gamma_n + Lambda_n beta_{n-1} = beta~_n Lambda_n + gamma~_n."""
    rec = perturbed_recurrence(n + 1, params)
    beta_prev, _ = laguerre_recurrence_coeffs(n - 1, params.alpha)
    _, gamma_n = laguerre_recurrence_coeffs(n, params.alpha)
    lam = rec.lambdas[n]
    lhs = gamma_n + lam * beta_prev
    rhs = rec.beta_t[n] * lam + rec.gamma_t[n]
    scale = max(abs(gamma_n), abs(lam * beta_prev), abs(rec.beta_t[n] * lam), abs(rec.gamma_t[n]))
    return abs(lhs - rhs) / scale


def lambda_recursion_residual(n, lambdas, alpha):
    """|Lambda_{n+1} - Lambda_n + gamma_n/Lambda_n - gamma_{n-1}/Lambda_{n-1} - 2|."""
    l0, l1, l2 = lambdas[n - 1], lambdas[n], lambdas[n + 1]
    if l0 == 0 or l1 == 0:
        raise PoleError(f"lambda_recursion_residual: zero Lambda near n={n}")
    g1 = n * (n + alpha)
    g0 = (n - 1) * (n - 1 + alpha)
    return abs(l2 - l1 + g1 / l1 - g0 / l0 - 2)


def lambda_nonlinear_route(nmax, params):
    """Lambda_{n+1} = -n(n+alpha)/Lambda_n + 2(n-1) + gamma_1/Lambda_1 + Lambda_2, from direct Lambda_1, Lambda_2."""
    a = params.alpha
    direct = lambda_sequence(2, params)
    lam = np.zeros(nmax + 1)
    lam[1], lam[2] = direct[1], direct[2]
    K = (1 + a) / lam[1] + lam[2]
    for n in range(2, nmax):
        lam[n + 1] = -n * (n + a) / lam[n] + 2 * (n - 1) + K
    return lam


def lambda_rho_route(nmax, params):
    """Lambda_n = rho_n / rho_{n-1} with rho_{n+1} = (2(n-1) + K) rho_n - gamma_n rho_{n-1}.

    rho_0 = 1, rho_1 = Lambda_1, K = gamma_1/Lambda_1 + Lambda_2; the sequence is
    carried with power-of-two rescaling so factorial growth cannot overflow.
    """
    a = params.alpha
    direct = lambda_sequence(2, params)
    K = (1 + a) / direct[1] + direct[2]
    lam = np.zeros(nmax + 1)
    prev, cur = 1.0, direct[1]
    lam[1] = cur
    for n in range(1, nmax):
        prev, cur = cur, (2 * (n - 1) + K) * cur - n * (n + a) * prev
        lam[n + 1] = cur / prev
        cur, e = pow2_normalize(cur)
        prev = math.ldexp(prev, -e)
    return lam


def rho_route_abscissa(params):
    """The rho recursion is the monic Laguerre recurrence at x = alpha + 3 - K, which equals c."""
    direct = lambda_sequence(2, params)
    K = (1 + params.alpha) / direct[1] + direct[2]
    return params.alpha + 3 - K


@dataclass(frozen=True)
class HypergeomRep:
    """Q_n = C 2F2(-n, 1+e; alpha+1, e; z) with C = (1 - Lambda/(n+alpha)) (-1)^n (alpha+1)_n."""

    n: int
    alpha: float
    lam: float
    C: LogScaled
    e: float

    def evaluate(self, z):
        """Sum the terminating series with (1+e)_k/(e)_k replaced by (k+e)/e.

        C/e = (-1)^n (alpha+1)_n Lambda / (n (n+alpha)) is used directly, so
        negative-integer e causes no trouble.  The alternating sum is formed
        in exact rational arithmetic from the double inputs, which removes
        the cancellation error of the series itself.
        """
        n = self.n
        a, e = Fraction(self.alpha), Fraction(self.e)
        z = complex(z)
        zr, zi = Fraction(z.real), Fraction(z.imag)
        tr, ti = Fraction(1), Fraction(0)
        sr, si = e, Fraction(0)
        for k in range(n):
            f = Fraction(k - n) / ((a + 1 + k) * (k + 1))
            tr, ti = f * (tr * zr - ti * zi), f * (tr * zi + ti * zr)
            sr += tr * (k + 1 + e)
            si += ti * (k + 1 + e)
        pref = (-1) ** n * math.exp(math.lgamma(self.alpha + 1 + n) - math.lgamma(self.alpha + 1))
        pref *= self.lam / (n * (n + self.alpha))
        return pref * complex(float(sr), float(si))


def hypergeom_rep(n, params):
    if n < 1:
        raise DomainError("hypergeom_rep needs n >= 1")
    a = params.alpha
    lam = lambda_n(n, params).value
    if lam == 0:
        raise DegenerateError(f"hypergeom_rep: Lambda_{n} = 0, e undefined")
    if lam == n + a:
        raise DegenerateError(f"hypergeom_rep: Lambda_{n} = n + alpha, C vanishes")
    C = LogScaled.from_float(1 - lam / (n + a)) * LogScaled((-1) ** n, math.lgamma(a + 1 + n) - math.lgamma(a + 1))
    e = n * (n + a - lam) / lam
    return HypergeomRep(n, a, lam, C, e)


def ode_coefficients(n, params, z):
    """R(z), S(z) of the second-order equation y'' + R y' + S y = 0."""
    a = params.alpha
    lam = lambda_n(n, params).value
    z = complex(z)
    den = z * lam + (n - lam) * (n + a - lam)
    if z == 0 or den == 0:
        raise PoleError(f"ode_residuals: z={z!r} is a pole of R or S")
    R = -lam / den + (a + 1) / z - 1
    S = (z * lam + (n - lam) * (n + a)) / (z * den) + (n - 1) / z
    return R, S


def ode_residuals(n, params, z):
    """Scaled residuals (res2, res3) of Q_n in the second- and third-order equations.

    Each residual is divided by the sum of the moduli of its terms.
    """
    if n < 1:
        raise DomainError("ode_residuals needs n >= 1")
    R, S = ode_coefficients(n, params, z)
    z = complex(z)
    P = np.polynomial.Polynomial(Q_coeffs(n, params))
    y, y1, y2, y3 = (complex(P.deriv(k)(z)) if k else complex(P(z)) for k in range(4))
    t2 = [y2, R * y1, S * y]
    res2 = sum(t2) / sum(abs(t) for t in t2)
    e = hypergeom_rep(n, params).e
    a = params.alpha
    t3 = [
        z * z * y3,
        -z * (z - e - a - 2) * y2,
        -((e - n + 2) * z - (a + 1) * e) * y1,
        n * (e + 1) * y,
    ]
    res3 = sum(t3) / sum(abs(t) for t in t3)
    return res2, res3


def zeros_Q(n, params):
    """Zeros of Q_n from the symmetric tridiagonal Jacobi matrix, ascending."""
    if not 1 <= n <= 60:
        raise DomainError("zeros_Q supports 1 <= n <= 60")
    rec = perturbed_recurrence(n, params)
    d = rec.beta_t[:n]
    off = np.sqrt(rec.gamma_t[1:n])
    if n == 1:
        return np.array([d[0]])
    return eigh_tridiagonal(d, off, eigvals_only=True)


def interlaces(inner, outer, tol=None):
    """True when each gap of ``outer`` contains exactly one point of ``inner``.

    Comparisons allow a slack ``tol`` (default 16 eps max|outer|, the
    eigenvalue accuracy): the zero next to c converges to c exponentially
    fast, so consecutive degrees can share it to machine precision.
    """
    inner, outer = np.sort(inner), np.sort(outer)
    if len(outer) != len(inner) + 1:
        return False
    if tol is None:
        tol = 16 * np.finfo(float).eps * float(np.max(np.abs(outer)))
    return bool(np.all(outer[:-1] < inner + tol) and np.all(inner < outer[1:] + tol))
