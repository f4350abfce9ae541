"""Exact scalar arithmetic for the calculus.

Two conventions hold throughout the package:

* Coordinates and measures are ``fractions.Fraction`` values counted in pi
  units: the fraction ``q`` stands for the real number ``q*pi``.  A floating
  point pi only ever appears in the numeric oracle, never on exact paths.
* Spectrum coefficients live in the real quadratic field ``Q(sqrt 2)`` and are
  represented exactly by :class:`QuadReal`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

# Alias used in signatures for "rational number of pi units".
RatPi = Fraction

_SQRT2 = math.sqrt(2.0)


def as_fraction(x) -> Fraction:
    """Coerce an int or Fraction; floats are rejected to keep paths exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True)
class QuadReal:
    """Exact element ``a + b*sqrt(2)`` with rational a, b.

    The representation is unique, so dataclass equality and hashing agree
    with field equality.  Sums, differences and products stay in the type;
    1/sqrt(2) is ``QuadReal(0, Fraction(1, 2))``.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", as_fraction(self.a))
        object.__setattr__(self, "b", as_fraction(self.b))

    def __add__(self, other: "QuadReal") -> "QuadReal":
        other = _coerce(other)
        return QuadReal(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: "QuadReal") -> "QuadReal":
        other = _coerce(other)
        return QuadReal(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> "QuadReal":
        return _coerce(other) - self

    def __mul__(self, other) -> "QuadReal":
        other = _coerce(other)
        return QuadReal(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def __neg__(self) -> "QuadReal":
        return QuadReal(-self.a, -self.b)

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def sign(self) -> int:
        """Exact sign, decided without floating point.

        When a and b have opposite signs the sign matches the sign of
        ``a**2 - 2*b**2`` (times the sign of a), since sqrt(2) is irrational
        and the norm cannot vanish on nonzero rational pairs.
        """
        a, b = self.a, self.b
        if a == 0 and b == 0:
            return 0
        if a >= 0 and b >= 0:
            return 1
        if a <= 0 and b <= 0:
            return -1
        norm = a * a - 2 * b * b
        if a > 0:
            return 1 if norm > 0 else -1
        return -1 if norm > 0 else 1

    def __lt__(self, other) -> bool:
        return (self - _coerce(other)).sign() < 0

    def __le__(self, other) -> bool:
        return (self - _coerce(other)).sign() <= 0

    def __gt__(self, other) -> bool:
        return (self - _coerce(other)).sign() > 0

    def __ge__(self, other) -> bool:
        return (self - _coerce(other)).sign() >= 0

    def __abs__(self) -> "QuadReal":
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        return self.a.numerator / self.a.denominator + (
            self.b.numerator / self.b.denominator
        ) * _SQRT2

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt2"
        op = "+" if self.b > 0 else "-"
        return f"{self.a} {op} {abs(self.b)}*sqrt2"

    def __repr__(self) -> str:
        return f"QuadReal({self.a!r}, {self.b!r})"

    @classmethod
    def parse(cls, text: str) -> "QuadReal":
        """Parse the value grammar ``p/q``, ``p/q*sqrt2``, or ``p/q +- p'/q'*sqrt2``."""
        s = text.strip()
        m = _BOTH_RE.fullmatch(s)
        if m:
            b = Fraction(m.group("b"))
            if m.group("op") == "-":
                b = -b
            return cls(Fraction(m.group("a")), b)
        m = _SQRT_RE.fullmatch(s)
        if m:
            coeff = m.group("b")
            if coeff in ("", "+", "-"):
                coeff += "1"
            return cls(Fraction(0), Fraction(coeff))
        m = _RAT_RE.fullmatch(s)
        if m:
            return cls(Fraction(s), Fraction(0))
        raise ValueError(f"cannot parse field value {text!r}")


def _coerce(x) -> QuadReal:
    if isinstance(x, QuadReal):
        return x
    return QuadReal(as_fraction(x), Fraction(0))


_RAT = r"[+-]?\d+(?:/\d+)?"
_RAT_RE = re.compile(_RAT)
_SQRT_RE = re.compile(rf"(?P<b>{_RAT}|[+-]?)\s*\*?\s*sqrt2")
_BOTH_RE = re.compile(rf"(?P<a>{_RAT})\s*(?P<op>[+-])\s*(?P<b>\d+(?:/\d+)?)\s*\*?\s*sqrt2")


QR_ZERO = QuadReal()
QR_ONE = QuadReal(Fraction(1))
QR_SQRT2 = QuadReal(Fraction(0), Fraction(1))
QR_INV_SQRT2 = QuadReal(Fraction(0), Fraction(1, 2))
