"""Exact number helpers: memoized factorials and signed square roots of rationals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Union[int, Fraction]


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _sign(x: Rational) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Radical:
    """The real number ``sign * sqrt(square)`` with ``square`` a nonnegative rational.

    Every unitary-type quantity in this package has a rational square, so
    products and magnitude comparisons stay exact.
    """

    sign: int
    square: Fraction

    def __post_init__(self):
        sq = Fraction(self.square)
        object.__setattr__(self, "square", sq)
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, got {self.sign}")
        if sq < 0:
            raise ValueError("square must be nonnegative")
        if (self.sign == 0) != (sq == 0):
            raise ValueError("sign is 0 exactly when square is 0")

    @classmethod
    def from_rational(cls, x: Rational) -> "Radical":
        x = Fraction(x)
        return cls(_sign(x), x * x)

    @classmethod
    def sqrt(cls, x: Rational, sign: int = 1) -> "Radical":
        """``sign * sqrt(x)`` for a nonnegative rational ``x``."""
        x = Fraction(x)
        if x == 0:
            return cls(0, Fraction(0))
        return cls(sign, x)

    @classmethod
    def zero(cls) -> "Radical":
        return cls(0, Fraction(0))

    @classmethod
    def one(cls) -> "Radical":
        return cls(1, Fraction(1))

    def __mul__(self, other):
        if isinstance(other, Radical):
            return Radical(self.sign * other.sign, self.square * other.square)
        if isinstance(other, (int, Fraction)):
            return self * Radical.from_rational(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Radical.from_rational(other)
        if not isinstance(other, Radical):
            return NotImplemented
        if other.sign == 0:
            raise ZeroDivisionError("division by zero radical")
        return Radical(self.sign * other.sign, self.square / other.square)

    def __neg__(self):
        return Radical(-self.sign, self.square)

    def __abs__(self):
        return Radical(abs(self.sign), self.square)

    def __float__(self):
        return self.sign * math.sqrt(self.square)

    def rational(self) -> Fraction | None:
        """The exact value if it is rational, else None."""
        num, den = self.square.numerator, self.square.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return self.sign * Fraction(rn, rd)
        return None

    def with_sign(self, sign: int) -> "Radical":
        if self.sign == 0:
            return self
        return Radical(sign, self.square)

    def format(self, digits: int = 15) -> str:
        """``sign*sqrt(p/q)`` followed by a decimal approximation."""
        return f"{self.sign}*sqrt({self.square}) {format_decimal(self, digits)}"

    def __str__(self):
        return f"{self.sign}*sqrt({self.square})"


def format_decimal(value, digits: int = 15) -> str:
    """Decimal rendering with ``digits`` significant digits, computed exactly."""
    with localcontext() as ctx:
        ctx.prec = digits + 10
        if isinstance(value, Radical):
            if value.sign == 0:
                return "0"
            sq = value.square
            d = (Decimal(sq.numerator) / Decimal(sq.denominator)).sqrt()
            if value.sign < 0:
                d = -d
        else:
            x = Fraction(value)
            if x == 0:
                return "0"
            d = Decimal(x.numerator) / Decimal(x.denominator)
        ctx.prec = digits
        return format(+d, f".{digits}g")
