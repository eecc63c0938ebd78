"""Exact scalar types used by the symbol algebra and Gram assembly.

Three small value classes cover everything the exact code paths need:

* :class:`ExactComplex` -- a complex number with ``fractions.Fraction``
  real and imaginary parts.
* :class:`PiScalar` -- an :class:`ExactComplex` times an integer power of
  pi.  Monomial moments on a disk are rational multiples of pi, and inner
  products on a product of two disks are rational multiples of pi**2, so
  carrying the exponent keeps every intermediate value exact.
* :class:`SqrtScaled` -- an :class:`ExactComplex` times the square root of
  a nonnegative integer, for quantities like projection coefficients whose
  squares are rational.

All three are immutable and hashable.
"""

from __future__ import annotations

from fractions import Fraction
from math import pi, sqrt
from typing import Union

RationalLike = Union[int, Fraction]
NumberLike = Union[int, float, complex, Fraction, "ExactComplex"]


def _to_fraction(x: RationalLike | float) -> Fraction:
    # Fraction(float) is exact: binary floats are dyadic rationals.
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


class ExactComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike | float = 0, im: RationalLike | float = 0):
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ExactComplex is immutable")

    @staticmethod
    def from_number(x: NumberLike) -> "ExactComplex":
        if isinstance(x, ExactComplex):
            return x
        if isinstance(x, complex):
            return ExactComplex(x.real, x.imag)
        return ExactComplex(_to_fraction(x))

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    def __add__(self, other: NumberLike) -> "ExactComplex":
        o = ExactComplex.from_number(other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: NumberLike) -> "ExactComplex":
        o = ExactComplex.from_number(other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: NumberLike) -> "ExactComplex":
        return ExactComplex.from_number(other) - self

    def __mul__(self, other: NumberLike) -> "ExactComplex":
        o = ExactComplex.from_number(other)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: NumberLike) -> "ExactComplex":
        o = ExactComplex.from_number(other)
        d = o.abs2()
        if not d:
            raise ZeroDivisionError("division by zero ExactComplex")
        return ExactComplex((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float, complex, Fraction, ExactComplex)):
            o = ExactComplex.from_number(other)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"ExactComplex({self.re!r}, {self.im!r})"


class PiScalar:
    """Exact value of the form ``coeff * pi**power``.

    Addition requires matching powers (zero is compatible with any power);
    multiplication adds powers.  This is all the moment calculus needs.
    """

    __slots__ = ("coeff", "power")

    def __init__(self, coeff: NumberLike = 0, power: int = 0):
        c = ExactComplex.from_number(coeff)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "power", 0 if c.is_zero else int(power))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PiScalar is immutable")

    @staticmethod
    def zero() -> "PiScalar":
        return PiScalar(0, 0)

    @property
    def is_zero(self) -> bool:
        return self.coeff.is_zero

    def conjugate(self) -> "PiScalar":
        return PiScalar(self.coeff.conjugate(), self.power)

    def __add__(self, other: "PiScalar") -> "PiScalar":
        if not isinstance(other, PiScalar):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.power != other.power:
            raise ValueError(f"incompatible pi powers {self.power} and {other.power}")
        return PiScalar(self.coeff + other.coeff, self.power)

    def __sub__(self, other: "PiScalar") -> "PiScalar":
        return self + (-other)

    def __neg__(self) -> "PiScalar":
        return PiScalar(-self.coeff, self.power)

    def __mul__(self, other: "PiScalar | NumberLike") -> "PiScalar":
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff * other.coeff, self.power + other.power)
        return PiScalar(self.coeff * ExactComplex.from_number(other), self.power)

    __rmul__ = __mul__

    def __truediv__(self, other: "PiScalar | NumberLike") -> "PiScalar":
        if isinstance(other, PiScalar):
            return PiScalar(self.coeff / other.coeff, self.power - other.power)
        return PiScalar(self.coeff / ExactComplex.from_number(other), self.power)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PiScalar):
            return self.coeff == other.coeff and self.power == other.power
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeff, self.power))

    def __complex__(self) -> complex:
        return complex(self.coeff) * pi**self.power

    def __float__(self) -> float:
        if self.coeff.im:
            raise ValueError("PiScalar has nonzero imaginary part")
        return float(self.coeff.re) * pi**self.power

    def __repr__(self) -> str:
        return f"PiScalar({self.coeff!r}, {self.power})"


def _square_free(n: int) -> tuple[int, int]:
    """Split ``n >= 0`` as ``s*s*r`` with ``r`` square-free; returns ``(s, r)``."""
    if n in (0, 1):
        return 1, n
    s, r, m, d = 1, 1, n, 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            s *= d ** (e // 2)
            if e % 2:
                r *= d
        d += 1 if d == 2 else 2
    return s, r * m  # leftover m is 1 or prime


class SqrtScaled:
    """Exact value ``coeff * sqrt(radicand)`` with integer ``radicand >= 0``.

    The stored radicand is square-free; square factors are absorbed into the
    rational coefficient on construction.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff: NumberLike, radicand: int = 1):
        if radicand < 0:
            raise ValueError("radicand must be nonnegative")
        c = ExactComplex.from_number(coeff)
        s, r = _square_free(int(radicand))
        c = c * s
        if c.is_zero or r == 0:
            c, r = ExactComplex(0), 1
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "radicand", r)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SqrtScaled is immutable")

    @property
    def is_zero(self) -> bool:
        return self.coeff.is_zero

    def abs2(self) -> Fraction:
        return self.coeff.abs2() * self.radicand

    def __mul__(self, other: "SqrtScaled | NumberLike") -> "SqrtScaled":
        if isinstance(other, SqrtScaled):
            return SqrtScaled(self.coeff * other.coeff, self.radicand * other.radicand)
        return SqrtScaled(self.coeff * ExactComplex.from_number(other), self.radicand)

    __rmul__ = __mul__

    def __neg__(self) -> "SqrtScaled":
        return SqrtScaled(-self.coeff, self.radicand)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SqrtScaled):
            return self.coeff == other.coeff and self.radicand == other.radicand
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeff, self.radicand))

    def __complex__(self) -> complex:
        return complex(self.coeff) * sqrt(self.radicand)

    def __repr__(self) -> str:
        return f"SqrtScaled({self.coeff!r}, {self.radicand})"
