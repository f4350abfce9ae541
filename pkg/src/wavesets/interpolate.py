"""Operator interpolation between two wavelet sets.

The congruence maps of the two sets compose into an exchange map (a
piecewise 2pi-shift bijection between them), which extends 2-homogeneously
to the whole line.  Together with a pair of 2-dilation periodic coefficient
functions it assembles an interpolated spectrum; the module also carries the
exact checks that legitimize the construction: involutivity of the exchange
map, unitarity of the 2x2 coefficient matrix, the constant-modulus test, and
the periodization identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .congruence import (
    ShiftMap,
    congruence_map,
    dilation_reduce,
    is_wavelet_set,
    residue_fragments,
)
from .intervals import EMPTY, Interval, IntervalSet, dyadic_span, format_interval_set
from .scalars import QR_ONE, QR_ZERO, QuadReal


class AmbiguousValue(ValueError):
    """Two dilation routes assign different values to the same fragment."""

    def __init__(self, where: IntervalSet):
        super().__init__(f"conflicting values on {format_interval_set(where)}")
        self.where = where


class UndefinedExtension(ValueError):
    """Part of the query set never dilates into the map's domain."""

    def __init__(self, residual: IntervalSet):
        super().__init__(
            f"extension undefined on {format_interval_set(residual)}"
        )
        self.residual = residual


class DilationPeriodic:
    """Function with h(2x) = h(x), stored as values on representative supports.

    A point x is covered by a piece (P, v) when some dyadic dilate 2**n x
    lands in P.  Construction verifies that pieces with different values can
    never collide under dyadic scaling, by comparing their projections into
    the fundamental dilation domain.
    """

    __slots__ = ("pieces", "search_bound")

    def __init__(self, pieces, search_bound: int | None = None):
        norm = []
        for support, value in pieces:
            if not isinstance(value, QuadReal):
                value = QuadReal(value)
            if support.is_empty() or not value:
                continue
            norm.append((support, value))
        norm.sort(key=lambda p: p[0].inf())
        self.pieces: tuple[tuple[IntervalSet, QuadReal], ...] = tuple(norm)

        seen = EMPTY
        for support, _ in self.pieces:
            if not seen.intersect(support).is_empty():
                raise ValueError("piece supports overlap")
            seen = seen.union(support)
        projections = [
            (dilation_reduce(support), value) for support, value in self.pieces
        ]
        for i, (proj_i, val_i) in enumerate(projections):
            for proj_j, val_j in projections[i + 1 :]:
                if val_i != val_j:
                    clash = proj_i.intersect(proj_j)
                    if not clash.is_empty():
                        raise AmbiguousValue(clash)
        if search_bound is None:
            search_bound = dyadic_span([s for s, _ in self.pieces])
        self.search_bound = search_bound

    @classmethod
    def constant(cls, value) -> "DilationPeriodic":
        """h identically equal to value (a.e.): one piece on the fundamental domain."""
        value = value if isinstance(value, QuadReal) else QuadReal(value)
        if not value:
            return cls([])
        return cls([(IntervalSet([(-2, -1), (1, 2)]), value)])

    def eval_on(self, s: IntervalSet) -> list[tuple[IntervalSet, QuadReal]]:
        """Partition s into fragments with their values.

        Fragments reached by no dilate of a piece within the search bound get
        value 0.  A fragment reachable with two different values raises
        :class:`AmbiguousValue` (unreachable for validated functions, kept as
        a guard).
        """
        bound = max(self.search_bound, dyadic_span([s, *(p for p, _ in self.pieces)]))
        assigned: list[tuple[IntervalSet, QuadReal]] = []
        for support, value in self.pieces:
            for n in range(-bound, bound + 1):
                hit = s.intersect(support.dilate(-n))
                if hit.is_empty():
                    continue
                for dom, other in assigned:
                    inter = dom.intersect(hit)
                    if inter.is_empty():
                        continue
                    if other != value:
                        raise AmbiguousValue(inter)
                    hit = hit.subtract(inter)
                    if hit.is_empty():
                        break
                if hit.is_empty():
                    continue
                for i, (dom, other) in enumerate(assigned):
                    if other == value:
                        assigned[i] = (dom.union(hit), value)
                        break
                else:
                    assigned.append((hit, value))
        covered = EMPTY
        for dom, _ in assigned:
            covered = covered.union(dom)
        rest = s.subtract(covered)
        if not rest.is_empty():
            assigned.append((rest, QR_ZERO))
        assigned.sort(key=lambda p: p[0].inf())
        return assigned

    def __repr__(self) -> str:
        body = "; ".join(f"{s} -> {v}" for s, v in self.pieces)
        return f"DilationPeriodic({body or '0'})"


class PiecewiseSpectrum:
    """A spectrum as disjoint constant pieces.

    The stored coefficient q on a piece means the spectrum takes the value
    q/sqrt(2 pi) there and 0 off the union of pieces.  Zero coefficients are
    never stored, so the support is just the union.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        norm = []
        for support, coeff in pieces:
            if not isinstance(coeff, QuadReal):
                coeff = QuadReal(coeff)
            if support.is_empty():
                continue
            if not coeff:
                raise ValueError("zero coefficient stored in spectrum")
            norm.append((support, coeff))
        norm.sort(key=lambda p: p[0].inf())
        self.pieces: tuple[tuple[IntervalSet, QuadReal], ...] = tuple(norm)
        seen = EMPTY
        for support, _ in self.pieces:
            if not seen.intersect(support).is_empty():
                raise ValueError("spectrum pieces overlap")
            seen = seen.union(support)

    @classmethod
    def msf(cls, w: IntervalSet) -> "PiecewiseSpectrum":
        """Constant-modulus spectrum supported on a single set."""
        return cls([(w, QR_ONE)])

    def support(self) -> IntervalSet:
        out = EMPTY
        for support, _ in self.pieces:
            out = out.union(support)
        return out

    def coeff_at(self, x) -> QuadReal:
        for support, coeff in self.pieces:
            if support.contains_point(x):
                return coeff
        return QR_ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, PiecewiseSpectrum) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        body = "; ".join(f"{s} -> {v}" for s, v in self.pieces)
        return f"PiecewiseSpectrum({body or '0'})"


# -- exchange map ----------------------------------------------------------


def build_exchange_map(w1: IntervalSet, w2: IntervalSet) -> ShiftMap:
    """The 2pi-shift bijection w1 -> w2 induced by both congruence maps.

    Composes the congruence map of w1 with the inverse of w2's, refining
    pieces by intersection of residues.  Identity pieces are retained.
    Propagates :class:`~wavesets.congruence.NotCongruent` from either input.
    """
    m1 = congruence_map(w1)
    m2 = congruence_map(w2)
    pairs = []
    for d1, k1 in m1.pieces:
        r1 = d1.translate(2 * k1)
        for d2, k2 in m2.pieces:
            common = r1.intersect(d2.translate(2 * k2))
            if common.is_empty():
                continue
            pairs.append((common.translate(-2 * k1), k1 - k2))
    return ShiftMap.make(pairs, bijective=True)


@dataclass(frozen=True)
class ExtensionPiece:
    """One fragment of the 2-homogeneous extension: x -> x + shift on source.

    ``level`` is the n with 2**n x landing in the map's domain; the shift is
    2k / 2**n in pi units.
    """

    source: IntervalSet
    image: IntervalSet
    level: int
    shift: Fraction


def extend_exchange_map(xmap: ShiftMap, s: IntervalSet) -> list[ExtensionPiece]:
    """Apply the 2-homogeneous extension of xmap to s, fragment by fragment.

    Splits s into maximal fragments on which a single dilation level works.
    Raises :class:`UndefinedExtension` if part of s never dilates into the
    map's domain within the search bound (impossible for verified wavelet
    sets).
    """
    domain = xmap.domain()
    bound = dyadic_span([domain, s]) if s else 0
    remaining = s
    out = []
    levels = [0]
    for b in range(1, bound + 1):
        levels.extend((b, -b))
    for n in levels:
        if remaining.is_empty():
            break
        scaled = remaining.dilate(n)
        for dom, k in xmap.pieces:
            hit = scaled.intersect(dom)
            if hit.is_empty():
                continue
            source = hit.dilate(-n)
            shift = Fraction(2 * k) * Fraction(2) ** (-n)
            out.append(
                ExtensionPiece(source, source.translate(shift), n, shift)
            )
            remaining = remaining.subtract(source)
    if not remaining.is_empty():
        raise UndefinedExtension(remaining)
    out.sort(key=lambda p: p.source.inf())
    return out


@dataclass(frozen=True)
class InvolutionReport:
    """Fragments where applying the extended map twice fails to be the identity."""

    ok: bool
    failures: tuple[tuple[IntervalSet, Fraction], ...]  # (fragment, net shift)

    def __bool__(self) -> bool:
        return self.ok


def check_involutive(xmap: ShiftMap) -> InvolutionReport:
    """Exact test that the extended exchange map composed with itself is the identity."""
    failures = []
    for dom, k in xmap.pieces:
        image = dom.translate(2 * k)
        for piece in extend_exchange_map(xmap, image):
            net = 2 * k + piece.shift
            if net != 0:
                failures.append((piece.source.translate(-2 * k), net))
    return InvolutionReport(ok=not failures, failures=tuple(failures))


@dataclass(frozen=True)
class UnitarityCell:
    """The 2x2 coefficient matrix on one refinement atom of the first set.

    Rows follow the convention (h1(x), h2(x)) over (h2(sx), h1(sx)) where s
    is the (involutive) exchange map.
    """

    domain: IntervalSet
    h1: QuadReal
    h2: QuadReal
    h2_after: QuadReal
    h1_after: QuadReal

    def orthogonal(self) -> bool:
        a, b, c, d = self.h1, self.h2, self.h2_after, self.h1_after
        return (
            a * a + b * b == QR_ONE
            and c * c + d * d == QR_ONE
            and a * c + b * d == QR_ZERO
        )


@dataclass(frozen=True)
class UnitarityReport:
    ok: bool
    cells: tuple[UnitarityCell, ...]
    failures: tuple[UnitarityCell, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_matrix_unitary(
    h1: DilationPeriodic, h2: DilationPeriodic, xmap: ShiftMap
) -> UnitarityReport:
    """Exact orthogonality of the coefficient matrix on every atom of the domain.

    Presumes the exchange map is involutive (so its inverse is the extension
    of itself); 2-homogeneity makes checking on the map's domain sufficient.
    """
    cells = []
    failures = []
    for dom, k in xmap.pieces:
        img = dom.translate(2 * k)
        overlays = [
            h1.eval_on(dom),
            h2.eval_on(dom),
            [(s.translate(-2 * k), v) for s, v in h2.eval_on(img)],
            [(s.translate(-2 * k), v) for s, v in h1.eval_on(img)],
        ]
        for atom in _refine(dom, overlays):
            cell = UnitarityCell(
                domain=IntervalSet([atom]),
                h1=_value_on(overlays[0], atom),
                h2=_value_on(overlays[1], atom),
                h2_after=_value_on(overlays[2], atom),
                h1_after=_value_on(overlays[3], atom),
            )
            cells.append(cell)
            if not cell.orthogonal():
                failures.append(cell)
    return UnitarityReport(ok=not failures, cells=tuple(cells), failures=tuple(failures))


def _refine(dom: IntervalSet, overlays) -> list[Interval]:
    points = set()
    for overlay in overlays:
        for s, _ in overlay:
            points.update(s.endpoints())
    atoms = []
    for part in dom.parts:
        cuts = sorted(p for p in points if part.lo < p < part.hi)
        lo = part.lo
        for p in cuts + [part.hi]:
            atoms.append(Interval(lo, p))
            lo = p
    return atoms


def _value_on(overlay, atom: Interval) -> QuadReal:
    # Overlays partition the domain and atoms never straddle their
    # boundaries, so membership of the left endpoint decides.
    for s, v in overlay:
        if s.contains_point(atom.lo):
            return v
    return QR_ZERO


# -- spectra ----------------------------------------------------------------


def _piecewise_add(acc, s: IntervalSet, v: QuadReal):
    out = []
    remaining = s
    for dom, w in acc:
        inter = dom.intersect(remaining)
        if inter.is_empty():
            out.append((dom, w))
            continue
        keep = dom.subtract(inter)
        if not keep.is_empty():
            out.append((keep, w))
        out.append((inter, w + v))
        remaining = remaining.subtract(inter)
    if not remaining.is_empty():
        out.append((remaining, v))
    return out


def _collapse(acc) -> list[tuple[IntervalSet, QuadReal]]:
    by_value: dict[QuadReal, IntervalSet] = {}
    for dom, v in acc:
        if dom.is_empty():
            continue
        by_value[v] = by_value.get(v, EMPTY).union(dom)
    return [(dom, v) for v, dom in by_value.items() if v and dom]


def build_spectrum(
    h1: DilationPeriodic,
    h2: DilationPeriodic,
    w1: IntervalSet,
    w2: IntervalSet,
) -> PiecewiseSpectrum:
    """Assemble the interpolated spectrum h1 on w1 plus h2 on w2.

    Evaluates both coefficient functions piecewise, sums over the overlap,
    and drops zero-coefficient fragments; the support stays inside the union
    of the two sets.
    """
    acc: list[tuple[IntervalSet, QuadReal]] = []
    for sub, v in h1.eval_on(w1):
        if v:
            acc = _piecewise_add(acc, sub, v)
    for sub, v in h2.eval_on(w2):
        if v:
            acc = _piecewise_add(acc, sub, v)
    return PiecewiseSpectrum(_collapse(acc))


def is_msf(spec: PiecewiseSpectrum) -> bool:
    """Constant modulus (coeff**2 == 1 exactly) on a verified wavelet set."""
    if not spec.pieces:
        return False
    if any(c * c != QR_ONE for _, c in spec.pieces):
        return False
    return is_wavelet_set(spec.support()).verdict


@dataclass(frozen=True)
class PeriodizationReport:
    """Exact sums of squared coefficients per residue class of [0, 2pi).

    ``complete`` holds when the sum is identically 1 on the whole base
    window, the frequency-domain witness that integer translates are
    orthonormal.
    """

    pieces: tuple[tuple[IntervalSet, QuadReal], ...]
    complete: bool

    def __bool__(self) -> bool:
        return self.complete


def periodize(spec: PiecewiseSpectrum) -> PeriodizationReport:
    acc: list[tuple[IntervalSet, QuadReal]] = []
    for support, coeff in spec.pieces:
        square = coeff * coeff
        for frag, m in residue_fragments(support):
            acc = _piecewise_add(
                acc, IntervalSet([frag]).translate(-2 * m), square
            )
    pieces = _collapse(acc)
    base = IntervalSet([(0, 2)])
    complete = (
        len(pieces) == 1 and pieces[0][1] == QR_ONE and pieces[0][0] == base
    )
    pieces.sort(key=lambda p: p[0].inf())
    return PeriodizationReport(pieces=tuple(pieces), complete=complete)
