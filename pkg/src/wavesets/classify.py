"""Translation-invariance order of a spectrum support.

A support E is partially self-similar with respect to a shift alpha when
E and E - alpha overlap in positive measure.  The order classifier probes
shifts that are odd multiples of 2**j pi: the smallest level j that admits
such an overlap pins the class M(j-1); if no level does, the class is Minf,
which coincides with the single-tiling-set (MSF) case.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intervals import IntervalSet
from .scalars import as_fraction


@dataclass(frozen=True)
class WaveletClass:
    """Invariance class tag: M(n) for n >= 0, or Minf (``index`` is None)."""

    index: int | None

    def __post_init__(self):
        if self.index is not None and self.index < 0:
            raise ValueError("class index must be >= 0")

    @property
    def finite(self) -> bool:
        return self.index is not None

    def __str__(self) -> str:
        return "Minf" if self.index is None else f"M{self.index}"

    @classmethod
    def parse(cls, text: str) -> "WaveletClass":
        s = text.strip()
        if s.lower() in ("minf", "minfinity"):
            return cls(None)
        if s[:1] in ("M", "m") and s[1:].isdigit():
            return cls(int(s[1:]))
        raise ValueError(f"cannot parse class tag {text!r}")


M_INF = WaveletClass(None)


def overlap_measure(e: IntervalSet, alpha) -> Fraction:
    """Exact measure of e meeting its own translate: lambda(e & (e - alpha)).

    Positive exactly when e is partially self-similar with respect to alpha;
    symmetric in +-alpha.
    """
    alpha = as_fraction(alpha)
    return e.intersect(e.translate(-alpha)).measure()


def self_similar_at_level(e: IntervalSet, j: int) -> bool:
    """True when some odd multiple of 2**j pi produces positive overlap.

    Only shifts below the diameter of e can overlap, which makes the search
    finite; only positive multiples are probed (symmetry covers the rest).
    """
    span = e.diameter()
    step = Fraction(2) ** j
    m = 1
    while m * step < span:
        if overlap_measure(e, m * step) > 0:
            return True
        m += 2
    return False


def order_at_least(e: IntervalSet, n: int) -> bool:
    """Support-level test for invariance order >= n.

    Holds when no level j = 1..n admits partial self-similarity.  Callers
    are expected to pass genuine spectrum supports; for arbitrary sets the
    result is a statement about the set only.
    """
    return all(not self_similar_at_level(e, j) for j in range(1, n + 1))


def classify(e: IntervalSet) -> WaveletClass:
    """Full classification of a support into M(n) or Minf.

    Levels j with 2**j pi at or beyond the diameter cannot contribute, so
    Minf is decidable for bounded supports.
    """
    span = e.diameter()
    j = 1
    levels = []
    while Fraction(2) ** j < span:
        levels.append(j)
        j += 1
    for j in levels:
        if self_similar_at_level(e, j):
            return WaveletClass(j - 1)
    return M_INF
