"""Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

Every constant appearing in the explicit G2 matrices (1/(2*sqrt2),
1/(2*sqrt6), sqrt3, ...) lives in this field, so exact-mode computations
never leave it.  Elements are stored as

    c0 + c1*sqrt2 + c2*sqrt3 + c3*sqrt6

with arbitrary-precision rational coefficients (gmpy2.mpq).
"""
from __future__ import annotations

from fractions import Fraction
import math

from gmpy2 import mpq

_SQRT2 = math.sqrt(2.0)
_SQRT3 = math.sqrt(3.0)
_SQRT6 = math.sqrt(6.0)


def _to_mpq(value) -> mpq:
    if isinstance(value, mpq.__class__) or type(value).__name__ == "mpq":
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"cannot coerce {value!r} to an exact rational")


class QuadScalar:
    """An element c0 + c1*sqrt2 + c2*sqrt3 + c3*sqrt6 of Q(sqrt2, sqrt3)."""

    __slots__ = ("c0", "c1", "c2", "c3")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        self.c0 = _to_mpq(c0)
        self.c1 = _to_mpq(c1)
        self.c2 = _to_mpq(c2)
        self.c3 = _to_mpq(c3)

    @classmethod
    def rational(cls, p, q=1) -> "QuadScalar":
        return cls(mpq(p, q))

    def coeffs(self):
        return (self.c0, self.c1, self.c2, self.c3)

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadScalar(self.c0 + other.c0, self.c1 + other.c1,
                          self.c2 + other.c2, self.c3 + other.c3)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadScalar(self.c0 - other.c0, self.c1 - other.c1,
                          self.c2 - other.c2, self.c3 - other.c3)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a0, a1, a2, a3 = self.c0, self.c1, self.c2, self.c3
        b0, b1, b2, b3 = other.c0, other.c1, other.c2, other.c3
        # sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3, sqrt3*sqrt6 = 3*sqrt2
        return QuadScalar(
            a0 * b0 + 2 * a1 * b1 + 3 * a2 * b2 + 6 * a3 * b3,
            a0 * b1 + a1 * b0 + 3 * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * quad_inv(other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * quad_inv(self)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = QS_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash(self.coeffs())

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0 and self.c3 == 0

    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0 and self.c3 == 0

    # -- Galois conjugates (used for inversion) ----------------------------

    def conj_sqrt2(self):
        """Field automorphism sqrt2 -> -sqrt2."""
        return QuadScalar(self.c0, -self.c1, self.c2, -self.c3)

    def conj_sqrt3(self):
        """Field automorphism sqrt3 -> -sqrt3."""
        return QuadScalar(self.c0, self.c1, -self.c2, -self.c3)

    # -- conversions --------------------------------------------------------

    def __float__(self):
        return (float(self.c0) + float(self.c1) * _SQRT2
                + float(self.c2) * _SQRT3 + float(self.c3) * _SQRT6)

    def to_json(self):
        return {"c0": _fmt(self.c0), "c1": _fmt(self.c1),
                "c2": _fmt(self.c2), "c3": _fmt(self.c3)}

    @classmethod
    def from_json(cls, data):
        return cls(*(mpq(data[k]) for k in ("c0", "c1", "c2", "c3")))

    def __repr__(self):
        return (f"QuadScalar({self.c0}, {self.c1}, {self.c2}, {self.c3})")


def _fmt(q: mpq) -> str:
    return f"{q.numerator}/{q.denominator}"


def _coerce(value):
    if isinstance(value, QuadScalar):
        return value
    if isinstance(value, (int, Fraction)) or type(value).__name__ == "mpq":
        return QuadScalar(_to_mpq(value))
    return NotImplemented


QS_ZERO = QuadScalar(0)
QS_ONE = QuadScalar(1)
SQRT2 = QuadScalar(0, 1)
SQRT3 = QuadScalar(0, 0, 1)
SQRT6 = QuadScalar(0, 0, 0, 1)


def quad_mul(u: QuadScalar, v: QuadScalar) -> QuadScalar:
    return u * v


def quad_inv(u: QuadScalar) -> QuadScalar:
    """Exact inverse: rationalize through the three Galois conjugates."""
    if u.is_zero():
        raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3)")
    conj_prod = u.conj_sqrt2() * u.conj_sqrt3() * u.conj_sqrt2().conj_sqrt3()
    norm = u * conj_prod  # the field norm; always rational
    assert norm.is_rational()
    n = norm.c0
    return QuadScalar(conj_prod.c0 / n, conj_prod.c1 / n,
                      conj_prod.c2 / n, conj_prod.c3 / n)


def embed(u: QuadScalar) -> float:
    return float(u)


def quad_sqrt(u: QuadScalar) -> QuadScalar:
    """Square root of u, when it exists in the field as q, q*sqrt2, q*sqrt3
    or q*sqrt6 with q rational.  Raises ValueError otherwise.

    This covers every normalization constant needed in exact mode
    (e.g. sqrt(a^2+b^2) for moduli like (3,4) or (1,1)).
    """
    if u.is_zero():
        return QS_ZERO
    if u.is_rational():
        r = _rat_sqrt(u.c0)
        if r is not None:
            return QuadScalar(r)
        for radical, square in ((SQRT2, 2), (SQRT3, 3), (SQRT6, 6)):
            r = _rat_sqrt(u.c0 / square)
            if r is not None:
                return radical * QuadScalar(r)
    raise ValueError(f"{u!r} has no square root in Q(sqrt2, sqrt3)")


def _rat_sqrt(q: mpq):
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = math.isqrt(num)
    rd = math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return mpq(rn, rd)
    return None


class QuadComplex:
    """Complex number with QuadScalar real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, QuadScalar) else QuadScalar(_to_mpq(re))
        self.im = im if isinstance(im, QuadScalar) else QuadScalar(_to_mpq(im))

    def __add__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QuadComplex(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        return QuadComplex(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        d = quad_inv(other.re * other.re + other.im * other.im)
        return QuadComplex((self.re * other.re + self.im * other.im) * d,
                           (self.im * other.re - self.re * other.im) * d)

    def __eq__(self, other):
        other = _coerce_c(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return QuadComplex(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QuadComplex({self.re!r}, {self.im!r})"


def _coerce_c(value):
    if isinstance(value, QuadComplex):
        return value
    if isinstance(value, QuadScalar):
        return QuadComplex(value)
    if isinstance(value, (int, Fraction)) or type(value).__name__ == "mpq":
        return QuadComplex(QuadScalar(_to_mpq(value)))
    return NotImplemented


QC_ZERO = QuadComplex()
QC_ONE = QuadComplex(1)
QC_I = QuadComplex(0, 1)
