"""Exact scalars: rationals, Gaussian rationals Q(i), and pi-graded scalars.

``Rational`` is :class:`fractions.Fraction`; everything above it is exact
and immutable.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class GaussianRational:
    """Exact element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _frac(re)
        self.im = _frac(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls(x, 0)

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return not self.im

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational(a * c, 0)
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussianRational(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_imag_str(abs(self.im))})"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


def _coerce_or_none(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return None


I = GaussianRational(0, 1)
ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def gq_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Field arithmetic in Q(i); ``op`` is one of add, sub, mul, div."""
    a = GaussianRational.coerce(a)
    b = GaussianRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


class MixedPiPowerError(ArithmeticError):
    """Raised when adding scalars that carry different powers of pi."""


class PiScalar:
    """A Gaussian rational times ``pi**pi_power``."""

    __slots__ = ("coeff", "pi_power")

    def __init__(self, coeff=0, pi_power: int = 0):
        if pi_power < 0:
            raise ValueError("pi_power must be non-negative")
        self.coeff = GaussianRational.coerce(coeff) if not isinstance(coeff, GaussianRational) else coeff
        self.pi_power = int(pi_power)

    def is_zero(self) -> bool:
        return self.coeff.is_zero()

    def __add__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        # zero is the identity in every grade
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.pi_power != other.pi_power:
            raise MixedPiPowerError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} terms"
            )
        return PiScalar(self.coeff + other.coeff, self.pi_power)

    def __neg__(self):
        return PiScalar(-self.coeff, self.pi_power)

    def __sub__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff * other.coeff, self.pi_power + other.pi_power)
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return PiScalar(self.coeff * o, self.pi_power)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PiScalar):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.coeff == other.coeff and self.pi_power == other.pi_power

    def __hash__(self):
        return hash((self.coeff, self.pi_power)) if not self.is_zero() else 0

    def __repr__(self):
        return f"PiScalar({self.coeff}, pi^{self.pi_power})"

    def __str__(self):
        if self.pi_power == 0:
            return str(self.coeff)
        p = "pi" if self.pi_power == 1 else f"pi^{self.pi_power}"
        return f"{self.coeff}*{p}"


def pi_scale(s: PiScalar, t: PiScalar) -> PiScalar:
    return s * t


def format_fraction(x: Fraction) -> str:
    """Exact string form used in reports, e.g. ``-44/3`` or ``8``."""
    x = _frac(x)
    return str(x)
