"""Normalized finite unions of half-open intervals with exact endpoints.

Endpoints are Fractions in pi units (see :mod:`wavesets.scalars`).  Every set
is kept in normal form: parts sorted, pairwise disjoint and non-adjacent, so
set equality is equality of normal forms, which for finite interval unions
coincides with equality modulo null sets.  Single points are null and never
represented.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .scalars import as_fraction


class ParseError(ValueError):
    """Malformed interval-set text; ``position`` is the zero-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(message)
        self.position = position


@dataclass(frozen=True, order=True)
class Interval:
    """Half-open interval [lo, hi) in pi units, lo < hi."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi})"


class IntervalSet:
    """Immutable normalized union of half-open intervals."""

    __slots__ = ("parts",)

    def __init__(self, intervals: Iterable = ()):
        items = []
        for iv in intervals:
            if not isinstance(iv, Interval):
                iv = Interval(*iv)
            items.append(iv)
        items.sort()
        merged: list[Interval] = []
        for iv in items:
            if merged and iv.lo <= merged[-1].hi:
                last = merged[-1]
                if iv.hi > last.hi:
                    merged[-1] = Interval(last.lo, iv.hi)
            else:
                merged.append(iv)
        self.parts: tuple[Interval, ...] = tuple(merged)

    # -- queries ---------------------------------------------------------

    def is_empty(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def measure(self) -> Fraction:
        """Total length in pi units."""
        return sum((iv.length for iv in self.parts), Fraction(0))

    def inf(self) -> Fraction:
        if not self.parts:
            raise ValueError("empty set has no inf")
        return self.parts[0].lo

    def sup(self) -> Fraction:
        if not self.parts:
            raise ValueError("empty set has no sup")
        return self.parts[-1].hi

    def diameter(self) -> Fraction:
        """sup - inf, or 0 for the empty set."""
        if not self.parts:
            return Fraction(0)
        return self.sup() - self.inf()

    def contains_point(self, x) -> bool:
        x = as_fraction(x)
        return any(iv.lo <= x < iv.hi for iv in self.parts)

    def contains_set(self, other: "IntervalSet") -> bool:
        return other.subtract(self).is_empty()

    def endpoints(self) -> list[Fraction]:
        out = []
        for iv in self.parts:
            out.append(iv.lo)
            out.append(iv.hi)
        return out

    # -- algebra ---------------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        a, b = self.parts, other.parts
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(Interval(lo, hi))
            if a[i].hi <= b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        b = other.parts
        start = 0
        for iv in self.parts:
            while start < len(b) and b[start].hi <= iv.lo:
                start += 1
            cur = iv.lo
            k = start
            while k < len(b) and b[k].lo < iv.hi:
                if b[k].lo > cur:
                    out.append(Interval(cur, b[k].lo))
                cur = max(cur, b[k].hi)
                if cur >= iv.hi:
                    break
                k += 1
            if cur < iv.hi:
                out.append(Interval(cur, iv.hi))
        return IntervalSet(out)

    def translate(self, t) -> "IntervalSet":
        t = as_fraction(t)
        return IntervalSet(Interval(iv.lo + t, iv.hi + t) for iv in self.parts)

    def dilate(self, power: int) -> "IntervalSet":
        """Scale by 2**power (power may be negative)."""
        f = Fraction(2) ** power
        return IntervalSet(Interval(iv.lo * f, iv.hi * f) for iv in self.parts)

    # -- protocol --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return format_interval_set(self)

    def __repr__(self) -> str:
        return f"IntervalSet({format_interval_set(self)!r})"


EMPTY = IntervalSet()

_INTERVAL_TOKEN = re.compile(
    r"\[\s*(-?\d+(?:\s*/\s*\d+)?)\s*,\s*(-?\d+(?:\s*/\s*\d+)?)\s*\)"
)


def parse_interval_set(text: str) -> IntervalSet:
    """Parse the canonical grammar, e.g. ``[-8/7,-4/7) [4/7,6/7) [24/7,32/7)``.

    Endpoints are integers or ``p/q`` fractions in pi units; intervals are
    separated by whitespace.  The empty set reads as ``(empty)`` or ``""``.
    """
    if text.strip() in ("", "(empty)"):
        return EMPTY
    parts = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _INTERVAL_TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"expected '[lo,hi)' at column {pos + 1}", pos)
        lo = Fraction(m.group(1).replace(" ", ""))
        hi = Fraction(m.group(2).replace(" ", ""))
        if lo >= hi:
            raise ParseError(
                f"interval at column {pos + 1} is empty or reversed", pos
            )
        parts.append(Interval(lo, hi))
        pos = m.end()
    return IntervalSet(parts)


def format_interval_set(s: IntervalSet) -> str:
    if not s.parts:
        return "(empty)"
    return " ".join(str(iv) for iv in s.parts)


def dyadic_floor(x: Fraction) -> int:
    """The integer j with 2**j <= x < 2**(j+1), for exact x > 0."""
    x = as_fraction(x)
    if x <= 0:
        raise ValueError("dyadic_floor requires x > 0")
    j = x.numerator.bit_length() - x.denominator.bit_length()
    two = Fraction(2)
    while two**j > x:
        j -= 1
    while two ** (j + 1) <= x:
        j += 1
    return j


def dyadic_span(sets: Sequence[IntervalSet], margin: int = 2) -> int:
    """Search bound for dyadic scaling between the given sets.

    Takes the spread of dyadic_floor over all nonzero endpoint magnitudes and
    adds a safety margin; scaling by more than 2**bound cannot move one set's
    endpoints into another's range.
    """
    floors = [
        dyadic_floor(abs(p))
        for s in sets
        for p in s.endpoints()
        if p != 0
    ]
    if not floors:
        return margin
    return (max(floors) - min(floors)) + margin
