"""Exact first-part densities and unit-ball volume coefficients.

Every constant that shows up while convolving the density of a squared
uniform variable is a single monomial ``q * pi**k`` with ``q`` rational.
:class:`PiScaled` carries those values without rounding, so the convolution
route, the even/odd closed forms and the gamma-function formula can be
compared for exact equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Context, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational

import mpmath

__all__ = [
    "PiScaled",
    "HalfInt",
    "MonomialPdf",
    "beta_half",
    "gamma_half",
    "pdf_first_part",
    "unit_volume_exact",
    "unit_volume_closed",
    "unit_volume_gamma",
    "surface_area_unit",
    "volume",
    "evaluate_scaled",
    "p_hyper",
    "p2_second_part",
    "GUARD_DIGITS",
]

GUARD_DIGITS = 10

_RENDER_RE = re.compile(
    r"^\s*(?P<num>[+-]?\d+)\s*/\s*(?P<den>\d+)\s*(?:·|\*)\s*pi\s*\^\s*(?P<k>\d+)\s*$"
)


@dataclass(frozen=True)
class PiScaled:
    """Exact value ``coefficient * pi**pi_power``."""

    coefficient: Fraction
    pi_power: int = 0

    def __post_init__(self):
        coeff = Fraction(self.coefficient)
        power = int(self.pi_power)
        if power < 0:
            raise ValueError(f"pi_power must be non-negative, got {power}")
        if coeff == 0:
            power = 0
        object.__setattr__(self, "coefficient", coeff)
        object.__setattr__(self, "pi_power", power)

    @classmethod
    def pi(cls, power: int = 1) -> "PiScaled":
        return cls(Fraction(1), power)

    @classmethod
    def parse(cls, text: str) -> "PiScaled":
        """Inverse of ``str()``: reads ``"a/b·pi^k"`` (``*`` accepted for ``·``)."""
        m = _RENDER_RE.match(text)
        if m is None:
            raise ValueError(f"not a rendered PiScaled value: {text!r}")
        den = int(m["den"])
        if den == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return cls(Fraction(int(m["num"]), den), int(m["k"]))

    def _coerce(self, other):
        if isinstance(other, PiScaled):
            return other
        if isinstance(other, (int, Rational)):
            return PiScaled(Fraction(other), 0)
        return None

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PiScaled(self.coefficient * other.coefficient, self.pi_power + other.pi_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.coefficient == 0:
            raise ZeroDivisionError("division by zero PiScaled")
        if self.coefficient == 0:
            return PiScaled(Fraction(0))
        power = self.pi_power - other.pi_power
        if power < 0:
            raise ValueError("quotient would carry a negative power of pi")
        return PiScaled(self.coefficient / other.coefficient, power)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.coefficient == 0:
            return other
        if other.coefficient == 0:
            return self
        if self.pi_power != other.pi_power:
            raise ValueError(
                f"cannot add pi^{self.pi_power} and pi^{other.pi_power} monomials"
            )
        return PiScaled(self.coefficient + other.coefficient, self.pi_power)

    __radd__ = __add__

    def __neg__(self):
        return PiScaled(-self.coefficient, self.pi_power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return PiScaled(self.coefficient**exponent, self.pi_power * exponent)

    def __float__(self) -> float:
        return float(self.to_decimal(17))

    def __str__(self) -> str:
        q = self.coefficient
        return f"{q.numerator}/{q.denominator}·pi^{self.pi_power}"

    def __repr__(self) -> str:
        return f"PiScaled({str(self)!r})"

    def to_decimal(self, precision: int = 10) -> Decimal:
        """Round to ``precision`` significant digits, half-even."""
        if precision < 1:
            raise ValueError("precision must be at least 1")
        if self.coefficient == 0:
            return Decimal(0)
        work = precision + GUARD_DIGITS + len(str(self.pi_power))
        with localcontext(Context(prec=work)):
            value = _pi_decimal(work) ** self.pi_power
            value *= Decimal(self.coefficient.numerator)
            value /= Decimal(self.coefficient.denominator)
        return Context(prec=precision, rounding=ROUND_HALF_EVEN).plus(value)


@lru_cache(maxsize=32)
def _pi_decimal(digits: int) -> Decimal:
    with mpmath.workdps(digits + 5):
        text = mpmath.nstr(mpmath.pi, digits + 5, strip_zeros=False)
    return Decimal(text)


@dataclass(frozen=True, order=True)
class HalfInt:
    """A multiple of one half, stored as ``doubled / 2``."""

    doubled: int

    @classmethod
    def of(cls, value) -> "HalfInt":
        q = Fraction(value)
        if (2 * q).denominator != 1:
            raise ValueError(f"{value!r} is not a multiple of 1/2")
        return cls(int(2 * q))

    @property
    def is_integer(self) -> bool:
        return self.doubled % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfInt(2 * other)
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.doubled + other.doubled)

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfInt(2 * other)
        if not isinstance(other, HalfInt):
            return NotImplemented
        return HalfInt(self.doubled - other.doubled)

    def __float__(self) -> float:
        return self.doubled / 2

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"


@dataclass(frozen=True)
class MonomialPdf:
    """``coeff * z**exponent`` on ``0 <= z <= 1``; the first part of p_n."""

    n: int
    coeff: PiScaled
    exponent: HalfInt

    def __post_init__(self):
        if self.exponent.doubled != self.n - 2:
            raise ValueError(f"exponent of p_{self.n} must be ({self.n}-2)/2")

    def mass(self) -> PiScaled:
        """Integral over [0, 1]."""
        return self.coeff * Fraction(2, self.n)

    def __call__(self, z: float) -> float:
        if not 0 <= z <= 1:
            raise ValueError("first part is defined on [0, 1] only")
        return float(self.coeff) * z ** float(self.exponent)

    def __str__(self) -> str:
        return f"({self.coeff})·z^({self.exponent})"


def _positive(n, name="n", minimum=1):
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int")
    if n < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {n}")


def beta_half(a: HalfInt) -> PiScaled:
    """B(a, 1/2) = integral of t**(a-1) * (1-t)**(-1/2) over [0, 1].

    Only half-integer ``a >= 1/2`` is supported; smaller ``a`` diverges.
    """
    if a.doubled < 1:
        raise ValueError(f"B(a, 1/2) diverges for a = {a}")
    if a.is_integer:
        m = a.doubled // 2
        return PiScaled(Fraction(factorial(m - 1) * factorial(m) * 4**m, factorial(2 * m)))
    m = (a.doubled - 1) // 2
    return PiScaled(Fraction(factorial(2 * m), 4**m * factorial(m) ** 2), 1)


def gamma_half(x: HalfInt) -> tuple[Fraction, int]:
    """Gamma at a positive half-integer as ``(q, h)`` meaning ``q * pi**(h/2)``.

    ``h`` is 0 for integer arguments and 1 otherwise.
    """
    if x.doubled < 1:
        raise ValueError(f"gamma_half needs a positive argument, got {x}")
    if x.is_integer:
        return Fraction(factorial(x.doubled // 2 - 1)), 0
    m = (x.doubled - 1) // 2
    # Gamma(m + 1/2) = (2m)! sqrt(pi) / (4^m m!)
    return Fraction(factorial(2 * m), 4**m * factorial(m)), 1


_FIRST_PARTS: list[MonomialPdf] = [MonomialPdf(1, PiScaled(Fraction(1, 2)), HalfInt(-1))]


def pdf_first_part(n: int) -> MonomialPdf:
    """Density of the sum of ``n`` squared U(-1, 1) variables on [0, 1].

    Built by convolving with p_1 = z**(-1/2) / 2 one dimension at a time:
    ``K z**(a-1) * p_1`` gives ``K * B(a, 1/2) / 2 * z**(a-1/2)``.
    """
    _positive(n)
    while len(_FIRST_PARTS) < n:
        prev = _FIRST_PARTS[-1]
        j = prev.n
        coeff = prev.coeff * Fraction(1, 2) * beta_half(HalfInt(j))
        _FIRST_PARTS.append(MonomialPdf(j + 1, coeff, HalfInt(j - 1)))
    return _FIRST_PARTS[n - 1]


def p_hyper(n: int) -> PiScaled:
    """Probability that a uniform point of [-1, 1]^n lands in the unit ball."""
    return pdf_first_part(n).mass()


def unit_volume_exact(n: int) -> PiScaled:
    """C_n from the convolution route: 2**n times the mass of p_n below 1."""
    return p_hyper(n) * 2**n


def unit_volume_closed(n: int) -> PiScaled:
    """C_n from the separate even and odd closed forms (n >= 2)."""
    _positive(n, minimum=2)
    if n % 2 == 0:
        return PiScaled(Fraction(1, factorial(n // 2)), n // 2)
    odd_product = 1
    for k in range(3, n + 1, 2):
        odd_product *= k
    return PiScaled(Fraction(2 ** ((n + 1) // 2), odd_product), (n - 1) // 2)


def _pi_half_over_gamma(numerator_half_power: int, x: HalfInt, scale=1) -> PiScaled:
    q, h = gamma_half(x)
    half_power = numerator_half_power - h
    # the sqrt(pi) factors always cancel for the arguments used here
    assert half_power % 2 == 0 and half_power >= 0
    return PiScaled(Fraction(scale) / q, half_power // 2)


def unit_volume_gamma(n: int) -> PiScaled:
    """C_n = pi**(n/2) / Gamma(n/2 + 1), evaluated exactly."""
    _positive(n)
    return _pi_half_over_gamma(n, HalfInt(n + 2))


def surface_area_unit(n: int) -> PiScaled:
    """Surface measure of the unit sphere in R^n: 2 pi**(n/2) / Gamma(n/2)."""
    _positive(n)
    return _pi_half_over_gamma(n, HalfInt(n), scale=2)


def volume(n: int, r=1, precision: int = 10) -> Decimal:
    """V_n(r) = C_n r**n to ``precision`` significant digits."""
    _positive(n)
    return evaluate_scaled(unit_volume_exact(n), r, n, precision)


def evaluate_scaled(c: PiScaled, r, power: int, precision: int = 10) -> Decimal:
    """``c * r**power`` to ``precision`` significant digits, half-even."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    radius = r if isinstance(r, Decimal) else Decimal(str(r))
    if not radius.is_finite() or radius < 0:
        raise ValueError(f"radius must be a non-negative number, got {r!r}")
    if radius == 0 or c.coefficient == 0:
        return Decimal(0)
    work = precision + GUARD_DIGITS + len(str(power))
    with localcontext(Context(prec=work)):
        value = c.to_decimal(work) * radius**power
    return Context(prec=precision, rounding=ROUND_HALF_EVEN).plus(value)


def p2_second_part(z: float) -> float:
    """p_2 on [1, 2]: arcsin((1 - z/2) / (z/2)) / 2."""
    if not 1 <= z <= 2:
        raise ValueError(f"second branch of p_2 lives on [1, 2], got z = {z}")
    ratio = (1 - z / 2) / (z / 2)
    return 0.5 * math.asin(min(ratio, 1.0))
