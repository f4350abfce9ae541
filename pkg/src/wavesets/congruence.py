"""Translation congruence and dyadic tiling.

Covers reduction to the base window [0, 2pi), piecewise 2pi-shift maps,
congruence of a set onto the base window, the dyadic dilation covering test
against the fundamental domain [-2pi,-pi) u [pi,2pi), the wavelet-set
verifier built from the two, and the construction of a tiling representative
subset of a spectrum support.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .intervals import (
    EMPTY,
    Interval,
    IntervalSet,
    dyadic_floor,
    format_interval_set,
)
from .scalars import as_fraction

# Residues of tau live in [0, 2pi); dyadic reduction lands in D.
BASE_WINDOW = IntervalSet([(0, 2)])
FUNDAMENTAL_DOMAIN = IntervalSet([(-2, -1), (1, 2)])


class NotCongruent(ValueError):
    """The 2pi-translates of the set fail to tile the base window."""

    def __init__(self, gaps: IntervalSet, overlaps: IntervalSet):
        super().__init__(
            f"not congruent to [0,2): gaps {format_interval_set(gaps)}, "
            f"overlaps {format_interval_set(overlaps)}"
        )
        self.gaps = gaps
        self.overlaps = overlaps


class ContainsOrigin(ValueError):
    """A part's closure contains 0, so its dyadic split is infinite."""

    def __init__(self, part: Interval):
        super().__init__(f"interval {part} touches the origin")
        self.part = part


class NotSurjective(ValueError):
    """Some residues of the base window are hit by no 2pi-translate."""

    def __init__(self, missing: IntervalSet):
        super().__init__(f"residues never reached: {format_interval_set(missing)}")
        self.missing = missing


def tau_reduce(x) -> tuple[Fraction, int]:
    """Reduce x (pi units) into [0, 2): returns (residue, k) with residue = x + 2k."""
    x = as_fraction(x)
    k = -int(x // 2)
    return x + 2 * k, k


def residue_fragments(s: IntervalSet) -> list[tuple[Interval, int]]:
    """Split s at even integers: pieces (fragment, m) with fragment inside [2m, 2m+2).

    The residue of the fragment is fragment - 2m, i.e. tau shifts it by
    k = -m.
    """
    out = []
    for iv in s.parts:
        m = int(iv.lo // 2)
        while 2 * m < iv.hi:
            lo = max(iv.lo, Fraction(2 * m))
            hi = min(iv.hi, Fraction(2 * (m + 1)))
            if lo < hi:
                out.append((Interval(lo, hi), m))
            m += 1
    return out


@dataclass(frozen=True)
class ShiftMap:
    """Piecewise map x -> x + 2k (pi units) on pairwise disjoint domains.

    ``pieces`` holds (domain, k) pairs with one entry per distinct k.  When
    ``bijective`` the images are pairwise disjoint as well, so the map can be
    inverted.
    """

    pieces: tuple[tuple[IntervalSet, int], ...]
    bijective: bool = False

    @classmethod
    def make(cls, pairs, bijective: bool = False) -> "ShiftMap":
        by_k: dict[int, IntervalSet] = {}
        for dom, k in pairs:
            if dom.is_empty():
                continue
            by_k[k] = by_k.get(k, EMPTY).union(dom)
        pieces = tuple(sorted(((dom, k) for k, dom in by_k.items()), key=lambda p: p[1]))
        seen = EMPTY
        for dom, _ in pieces:
            if not seen.intersect(dom).is_empty():
                raise ValueError("shift-map domains overlap")
            seen = seen.union(dom)
        if bijective:
            seen = EMPTY
            for dom, k in pieces:
                img = dom.translate(2 * k)
                if not seen.intersect(img).is_empty():
                    raise ValueError("shift-map images overlap; map is not injective")
                seen = seen.union(img)
        return cls(pieces, bijective)

    def domain(self) -> IntervalSet:
        out = EMPTY
        for dom, _ in self.pieces:
            out = out.union(dom)
        return out

    def image(self) -> IntervalSet:
        out = EMPTY
        for dom, k in self.pieces:
            out = out.union(dom.translate(2 * k))
        return out

    def apply(self, s: IntervalSet) -> IntervalSet:
        """Image of s intersected with the domain."""
        out = EMPTY
        for dom, k in self.pieces:
            out = out.union(dom.intersect(s).translate(2 * k))
        return out

    def inverse(self) -> "ShiftMap":
        if not self.bijective:
            raise ValueError("only bijective maps invert")
        return ShiftMap.make(
            ((dom.translate(2 * k), -k) for dom, k in self.pieces), bijective=True
        )

    def restrict(self, s: IntervalSet) -> "ShiftMap":
        return ShiftMap.make(
            ((dom.intersect(s), k) for dom, k in self.pieces), bijective=self.bijective
        )

    def shift_on(self, s: IntervalSet) -> int | None:
        """The unique k shifting all of s, or None if s is split or uncovered."""
        for dom, k in self.pieces:
            if dom.contains_set(s):
                return k
        return None

    def agrees(self, dom: IntervalSet, k: int) -> bool:
        """True if the map shifts every point of dom by exactly 2k."""
        for piece_dom, piece_k in self.pieces:
            if piece_k == k:
                return piece_dom.contains_set(dom)
        return dom.is_empty()


def congruence_map(w: IntervalSet) -> ShiftMap:
    """The piecewise tau-map w -> [0, 2pi), required to tile exactly.

    Raises :class:`NotCongruent` with the offending residues when the images
    overlap or leave gaps.
    """
    frags = residue_fragments(w)
    union = EMPTY
    overlaps = EMPTY
    for frag, m in frags:
        img = IntervalSet([frag]).translate(-2 * m)
        overlaps = overlaps.union(img.intersect(union))
        union = union.union(img)
    gaps = BASE_WINDOW.subtract(union)
    extra = union.subtract(BASE_WINDOW)  # impossible by construction, kept as a guard
    if gaps or overlaps or extra:
        raise NotCongruent(gaps, overlaps.union(extra))
    return ShiftMap.make(
        ((IntervalSet([frag]), -m) for frag, m in frags), bijective=True
    )


def dilation_reduce(w: IntervalSet) -> IntervalSet:
    """Subset of the fundamental domain covered by the dyadic dilates of w.

    Each part is split at signed dyadic boundaries and every fragment is
    scaled into D = [-2,-1) u [1,2).  The dilates of w cover the line (mod
    null) exactly when the result equals D.  Parts whose closure contains 0
    raise :class:`ContainsOrigin`.
    """
    for iv in w.parts:
        if iv.lo <= 0 <= iv.hi:
            raise ContainsOrigin(iv)
    covered = []
    for iv in w.parts:
        if iv.lo > 0:
            for lo, hi in _reduce_magnitudes(iv.lo, iv.hi):
                covered.append(Interval(lo, hi))
        else:
            # Mirror to magnitudes; the endpoint flip is null so the
            # half-open normal form is unaffected.
            for lo, hi in _reduce_magnitudes(-iv.hi, -iv.lo):
                covered.append(Interval(-hi, -lo))
    return IntervalSet(covered)


def _reduce_magnitudes(lo: Fraction, hi: Fraction):
    """Scale the dyadic fragments of [lo, hi), 0 < lo < hi, into [1, 2)."""
    j = dyadic_floor(lo)
    two = Fraction(2)
    while two**j < hi:
        blo, bhi = two**j, two ** (j + 1)
        flo, fhi = max(lo, blo), min(hi, bhi)
        if flo < fhi:
            yield flo / blo, fhi / blo
        j += 1


@dataclass(frozen=True)
class WaveletSetReport:
    """Outcome of the two-condition wavelet-set test.

    ``uncovered`` collects unclaimed territory from either check (residues of
    the base window missed by the translates, or parts of the fundamental
    domain missed by the dilates); ``overfull_residues`` holds residues hit
    more than once.
    """

    congruent_to_base: bool
    measure: Fraction
    dilation_cover: bool
    uncovered: IntervalSet
    overfull_residues: IntervalSet
    verdict: bool

    def __bool__(self) -> bool:
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "congruent_to_base": self.congruent_to_base,
            "measure_pi_units": str(self.measure),
            "dilation_cover": self.dilation_cover,
            "uncovered": format_interval_set(self.uncovered),
            "overfull_residues": format_interval_set(self.overfull_residues),
            "verdict": self.verdict,
        }


def is_wavelet_set(w: IntervalSet) -> WaveletSetReport:
    """Verify both wavelet-set conditions; failures are encoded, not raised."""
    gaps = overlaps = EMPTY
    congruent = True
    try:
        congruence_map(w)
    except NotCongruent as err:
        congruent = False
        gaps, overlaps = err.gaps, err.overlaps
    covered = EMPTY
    try:
        covered = dilation_reduce(w)
    except ContainsOrigin:
        pass
    cover = covered == FUNDAMENTAL_DOMAIN
    return WaveletSetReport(
        congruent_to_base=congruent,
        measure=w.measure(),
        dilation_cover=cover,
        uncovered=gaps.union(FUNDAMENTAL_DOMAIN.subtract(covered)),
        overfull_residues=overlaps,
        verdict=congruent and cover,
    )


def construct_representative(e: IntervalSet) -> tuple[IntervalSet, ShiftMap]:
    """Choose F inside e with tau: F -> [0, 2pi) a bijection.

    Residues are claimed window by window: first from e itself inside the
    base window, then from translates at m = 1, 2, ... ascending, then at
    m = -1, -2, ... descending, each window claiming only residues still
    unclaimed.  Raises :class:`NotSurjective` when residues remain at the
    end.  Returns F and the bijective map F -> [0, 2pi).
    """
    by_m: dict[int, IntervalSet] = {}
    for frag, m in residue_fragments(e):
        res = IntervalSet([frag]).translate(-2 * m)
        by_m[m] = by_m.get(m, EMPTY).union(res)
    positives = sorted(m for m in by_m if m > 0)
    negatives = sorted((m for m in by_m if m < 0), reverse=True)
    order = ([0] if 0 in by_m else []) + positives + negatives

    claimed = EMPTY
    f = EMPTY
    pairs = []
    for m in order:
        take = by_m[m].subtract(claimed)
        if take.is_empty():
            continue
        claimed = claimed.union(take)
        chunk = take.translate(2 * m)
        f = f.union(chunk)
        pairs.append((chunk, -m))
    if claimed != BASE_WINDOW:
        raise NotSurjective(BASE_WINDOW.subtract(claimed))
    return f, ShiftMap.make(pairs, bijective=True)
