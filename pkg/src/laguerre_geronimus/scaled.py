"""Overflow-safe number representations and branch bookkeeping.

Factorial-scale quantities such as Gamma(n+alpha+1) Gamma(n+1) overflow a
double long before n reaches the sizes used by the asymptotic checks, so
values are carried as a sign (or unit phase) times ``exp(logmag)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BranchError, DomainError

# |logmag| below this converts to a finite double with room to spare.
SAFE_LOG = 700.0

_LN2 = math.log(2.0)


def _log_add(la, lb):
    """log(exp(la) + exp(lb)) without overflow."""
    if la < lb:
        la, lb = lb, la
    if lb == -math.inf:
        return la
    return la + math.log1p(math.exp(lb - la))


@dataclass(frozen=True)
class LogScaled:
    """A real number stored as ``sign * exp(logmag)``.

    ``sign`` is -1, 0 or +1; ``logmag`` is ignored when ``sign == 0``.
    """

    sign: int
    logmag: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign!r}")

    @classmethod
    def from_float(cls, x):
        x = float(x)
        if x == 0.0:
            return cls(0, -math.inf)
        if not math.isfinite(x):
            raise DomainError(f"cannot encode non-finite value {x!r}")
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_log(cls, logmag, sign=1):
        return cls(int(sign), float(logmag))

    @classmethod
    def zero(cls):
        return cls(0, -math.inf)

    @property
    def is_zero(self):
        return self.sign == 0

    @property
    def is_safe(self):
        """True when the value converts to a double without over/underflow."""
        return self.sign == 0 or abs(self.logmag) < SAFE_LOG

    def to_float(self):
        if self.sign == 0:
            return 0.0
        if self.logmag > 709.78:
            return math.copysign(math.inf, self.sign)
        return self.sign * math.exp(self.logmag)

    __float__ = to_float

    def __neg__(self):
        return LogScaled(-self.sign, self.logmag)

    def __abs__(self):
        return LogScaled(abs(self.sign), self.logmag)

    def __mul__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("division of LogScaled by zero")
        if self.sign == 0:
            return LogScaled.zero()
        return LogScaled(self.sign * other.sign, self.logmag - other.logmag)

    def __rtruediv__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __add__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            return LogScaled(self.sign, _log_add(self.logmag, other.logmag))
        # opposite signs: the larger magnitude keeps its sign
        big, small = (self, other) if self.logmag >= other.logmag else (other, self)
        d = small.logmag - big.logmag
        if d == 0.0:
            return LogScaled.zero()
        return LogScaled(big.sign, big.logmag + math.log(-math.expm1(d)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_real(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __pow__(self, p):
        if self.sign == 0:
            return LogScaled.zero() if p > 0 else LogScaled(1, 0.0)
        if isinstance(p, int):
            return LogScaled(self.sign**p if p >= 0 else self.sign ** (-p), p * self.logmag)
        if self.sign < 0:
            raise DomainError("non-integer power of a negative LogScaled")
        return LogScaled(1, p * self.logmag)

    def to_complex(self):
        return LogComplex.from_scaled(self)


def _coerce_real(x):
    if isinstance(x, LogScaled):
        return x
    if isinstance(x, (int, float)):
        return LogScaled.from_float(x)
    return NotImplemented


@dataclass(frozen=True)
class LogComplex:
    """A complex number stored as ``phase * exp(logmag)`` with ``|phase| = 1``.

    ``phase == 0`` encodes zero.
    """

    phase: complex
    logmag: float

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        if z == 0:
            return cls(0j, -math.inf)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"cannot encode non-finite value {z!r}")
        r = abs(z)
        return cls(z / r, math.log(r))

    @classmethod
    def from_log(cls, logz):
        """Encode ``exp(logz)`` for a complex logarithm ``logz``."""
        logz = complex(logz)
        return cls(cmath.exp(1j * logz.imag), logz.real)

    @classmethod
    def from_scaled(cls, x):
        if x.sign == 0:
            return cls(0j, -math.inf)
        return cls(complex(x.sign), x.logmag)

    @classmethod
    def from_mantissa(cls, m, log_scale):
        """Encode ``m * exp(log_scale)`` for a moderate complex mantissa ``m``."""
        m = complex(m)
        if m == 0:
            return cls(0j, -math.inf)
        r = abs(m)
        return cls(m / r, math.log(r) + log_scale)

    @property
    def is_zero(self):
        return self.phase == 0

    @property
    def is_safe(self):
        return self.is_zero or abs(self.logmag) < SAFE_LOG

    def to_complex(self):
        if self.is_zero:
            return 0j
        if self.logmag > 709.78:
            raise OverflowError("LogComplex magnitude exceeds double range")
        return self.phase * math.exp(self.logmag)

    __complex__ = to_complex

    def log(self):
        """Principal-branch-free complex log: ``logmag + i*arg(phase)``."""
        if self.is_zero:
            raise DomainError("log of zero")
        return complex(self.logmag, cmath.phase(self.phase))

    def __neg__(self):
        return LogComplex(-self.phase, self.logmag)

    def __abs__(self):
        if self.is_zero:
            return LogScaled.zero()
        return LogScaled(1, self.logmag)

    def __mul__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return LogComplex(0j, -math.inf)
        ph = self.phase * other.phase
        return LogComplex(ph / abs(ph), self.logmag + other.logmag)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division of LogComplex by zero")
        if self.is_zero:
            return self
        ph = self.phase / other.phase
        return LogComplex(ph / abs(ph), self.logmag - other.logmag)

    def __rtruediv__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __add__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        big, small = (self, other) if self.logmag >= other.logmag else (other, self)
        m = big.phase + small.phase * math.exp(small.logmag - big.logmag)
        return LogComplex.from_mantissa(m, big.logmag)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_complex(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)


def _coerce_complex(x):
    if isinstance(x, LogComplex):
        return x
    if isinstance(x, LogScaled):
        return LogComplex.from_scaled(x)
    if isinstance(x, (int, float, complex)):
        return LogComplex.from_complex(x)
    return NotImplemented


def pow2_normalize(m):
    """Split ``m`` into ``(m * 2**-e, e)`` so the mantissa has modulus in [0.5, 1).

    Scaling by a power of two is exact, which keeps scaled recurrences
    bit-reproducible.
    """
    if isinstance(m, complex):
        a = max(abs(m.real), abs(m.imag))
    else:
        a = abs(m)
    if a == 0 or not math.isfinite(a):
        return m, 0
    e = math.frexp(a)[1]
    if isinstance(m, complex):
        return complex(math.ldexp(m.real, -e), math.ldexp(m.imag, -e)), e
    return math.ldexp(m, -e), e


def log2_scale(e):
    return e * _LN2


@dataclass(frozen=True)
class ComplexPoint:
    """A point of the cut plane C minus [0, inf) with branch bookkeeping."""

    re: float
    im: float

    @classmethod
    def of(cls, z):
        if isinstance(z, ComplexPoint):
            return z
        z = complex(z)
        return cls(z.real, z.imag)

    @property
    def z(self):
        return complex(self.re, self.im)

    @property
    def arg(self):
        """Argument in (-pi, pi]."""
        a = math.atan2(self.im, self.re)
        # atan2 returns -pi for (negative, -0.0); keep the half-open convention
        return math.pi if a == -math.pi else a

    @property
    def on_cut(self):
        return self.im == 0 and self.re >= 0

    def require_off_cut(self, what="operation"):
        if self.on_cut:
            raise BranchError(f"{what} requires z off [0, inf); got z = {self.z!r}")
        return self

    @property
    def rotation_sign(self):
        """+1 selects z*e^{+pi i} (when -pi < arg z <= 0), -1 selects z*e^{-pi i}."""
        return 1 if self.arg <= 0 else -1

    @property
    def rotated_arg(self):
        return self.arg + self.rotation_sign * math.pi

    def rotated(self):
        """``z * e^{+-pi i}`` as a complex number; its principal argument is ``rotated_arg``."""
        return -self.z

    def log_neg(self):
        """Principal log of -z (equal to the log of the rotated point)."""
        w = -self.z
        return complex(math.log(abs(w)), self.rotated_arg)

    def neg_pow(self, p):
        """Principal ``(-z)**p``."""
        return cmath.exp(p * self.log_neg())

    def sqrt_neg(self):
        """Principal square root of -z (positive real part off the cut)."""
        return cmath.exp(0.5 * self.log_neg())
