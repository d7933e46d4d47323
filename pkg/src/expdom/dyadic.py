"""Exact dyadic rationals, i.e. numbers of the form ``a / 2**b``.

Every weight and matrix entry in the torus problems is dyadic, so sums and
products stay exact without the cost of general rational arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering
from numbers import Rational

_TEXT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*2\^(\d+))?\s*$")


@total_ordering
class DyadicRational:
    """Value ``numerator / 2**exponent`` with ``exponent >= 0``.

    Canonical form: the exponent is zero or the numerator is odd, so two
    equal values always have identical fields.
    """

    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        numerator = int(numerator)
        exponent = int(exponent)
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        elif exponent:
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        self.numerator = numerator
        self.exponent = exponent

    @classmethod
    def power_of_half(cls, k: int) -> DyadicRational:
        """(1/2)**k for any integer k (negative k gives 2**-k)."""
        if k <= 0:
            return cls(1 << -k, 0)
        return cls(1, k)

    @classmethod
    def coerce(cls, value) -> DyadicRational:
        if isinstance(value, DyadicRational):
            return value
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, Rational):
            num, den = value.numerator, value.denominator
        elif isinstance(value, float):
            num, den = value.as_integer_ratio()
        elif isinstance(value, str):
            return cls.parse(value)
        else:
            raise TypeError(f"cannot convert {type(value).__name__} to DyadicRational")
        if den & (den - 1):
            raise ValueError(f"{value!r} is not dyadic")
        return cls(num, den.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> DyadicRational:
        """Parse ``"p"`` or ``"p/2^q"``."""
        match = _TEXT.match(text)
        if match is None:
            raise ValueError(f"not a dyadic literal: {text!r}")
        return cls(int(match.group(1)), int(match.group(2) or 0))

    def _align(self, other: DyadicRational) -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        a, b, e = self._align(other)
        return DyadicRational(a + b, e)

    __radd__ = __add__

    def __neg__(self):
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return DyadicRational(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.numerator == other.numerator and self.exponent == other.exponent

    def __lt__(self, other):
        try:
            other = DyadicRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        a, b, _ = self._align(other)
        return a < b

    def __hash__(self):
        return hash(self.to_fraction())

    def __bool__(self):
        return self.numerator != 0

    def __float__(self):
        return float(self.to_fraction())

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def __str__(self):
        if self.exponent == 0:
            return str(self.numerator)
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self):
        return f"DyadicRational({self.numerator}, {self.exponent})"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)
