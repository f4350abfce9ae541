"""Floating-point oracle, independent of the exact classifier.

Inner products of dilated/translated copies of a piecewise-constant spectrum
reduce, by Plancherel, to finite sums of closed-form complex-exponential
integrals over exact interval fragments: no FFT and no quadrature grid.  On
top of that sit a Gram-deviation report, a translation-invariance residual
derived from the periodic-multiplier equation, and a sampled witness check
for the tiling representative.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .congruence import residue_fragments
from .interpolate import PiecewiseSpectrum
from .intervals import IntervalSet
from .scalars import as_fraction

TWO_PI = 2.0 * math.pi

# A basis index (n, alpha) names the function obtained from the spectrum's
# wavelet by dilating n times and translating by alpha.  Integer alpha
# matches the orthonormal system; rational alpha supports commutation probes.
BasisIndex = tuple[int, Fraction]


def _real(q: Fraction) -> float:
    """Pi-unit coordinate to a float in real units."""
    return q.numerator / q.denominator * math.pi


def _exp_integral(alpha: float, a: float, b: float) -> complex:
    """Closed form of the integral of exp(-i alpha x) over [a, b]."""
    if alpha == 0.0:
        return complex(b - a, 0.0)
    return (cmath.exp(-1j * alpha * b) - cmath.exp(-1j * alpha * a)) / (
        -1j * alpha
    )


def _dilated_pieces(spec: PiecewiseSpectrum, n: int):
    """Supports and float coefficients of the spectrum evaluated at x / 2**n."""
    return [(support.dilate(n), float(coeff)) for support, coeff in spec.pieces]


def inner_product(spec: PiecewiseSpectrum, a, b) -> complex:
    """Plancherel inner product of the basis elements indexed by a and b.

    Indices are (scale, translation) pairs; the translation may be any exact
    rational.  The frequency transform of the element (n, alpha) is
    2**(-n/2) exp(-i alpha x / 2**n) spec(x / 2**n), so the product is a sum
    of closed-form exponential integrals over exact piece intersections.
    """
    n1, al1 = int(a[0]), as_fraction(a[1])
    n2, al2 = int(b[0]), as_fraction(b[1])
    alpha = float(al1 * Fraction(2) ** (-n1) - al2 * Fraction(2) ** (-n2))
    prefactor = 2.0 ** (-(n1 + n2) / 2) / TWO_PI
    total = 0j
    for s1, c1 in _dilated_pieces(spec, n1):
        for s2, c2 in _dilated_pieces(spec, n2):
            weight = c1 * c2
            for iv in s1.intersect(s2).parts:
                total += weight * _exp_integral(alpha, _real(iv.lo), _real(iv.hi))
    return prefactor * total


def pair_inner_product(spec: PiecewiseSpectrum, a, b) -> complex:
    """Inner product for integer-translate indices (n, l)."""
    return inner_product(spec, (a[0], Fraction(a[1])), (b[0], Fraction(b[1])))


def dilate_index(e: BasisIndex) -> BasisIndex:
    """Apply one dilation in front of the element (n, alpha)."""
    return (e[0] + 1, e[1])


def translate_index(e: BasisIndex, beta) -> BasisIndex:
    """Apply a translation by beta in front of the element (n, alpha)."""
    beta = as_fraction(beta)
    return (e[0], e[1] + beta * Fraction(2) ** e[0])


BASE_INDEX: BasisIndex = (0, Fraction(0))


@dataclass(frozen=True)
class GramRequest:
    """Ranges and tolerance for a Gram-versus-identity sweep."""

    spectrum: PiecewiseSpectrum
    scale_range: int = 3
    shift_range: int = 8
    tolerance: float = 1e-8

    def __post_init__(self):
        if self.scale_range < 0 or self.shift_range < 0:
            raise ValueError("ranges must be nonempty")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class GramReport:
    max_deviation: float
    worst_left: tuple[int, int]
    worst_right: tuple[int, int]
    tolerance: float
    passed: bool

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "max_deviation": f"{self.max_deviation:.3e}",
            "worst_left": str(self.worst_left),
            "worst_right": str(self.worst_right),
            "tolerance": f"{self.tolerance:.1e}",
            "passed": self.passed,
        }


def gram_report(req: GramRequest) -> GramReport:
    """Max |Gram - I| over all index pairs in the requested ranges.

    An entry depends only on the scale pair and the effective frequency
    shift, so geometry is hoisted out of the translation loops and entries
    sharing a shift are evaluated once.
    """
    spec = req.spectrum
    scales = range(-req.scale_range, req.scale_range + 1)
    shifts = range(-req.shift_range, req.shift_range + 1)
    worst = (-1.0, (0, 0), (0, 0))
    for n1 in scales:
        pieces1 = _dilated_pieces(spec, n1)
        for n2 in scales:
            if n2 < n1:
                continue  # conjugate symmetry
            pieces2 = _dilated_pieces(spec, n2)
            segments = []
            for s1, c1 in pieces1:
                for s2, c2 in pieces2:
                    for iv in s1.intersect(s2).parts:
                        segments.append((_real(iv.lo), _real(iv.hi), c1 * c2))
            prefactor = 2.0 ** (-(n1 + n2) / 2) / TWO_PI
            half1 = Fraction(2) ** (-n1)
            half2 = Fraction(2) ** (-n2)
            by_alpha: dict[Fraction, tuple[int, int]] = {}
            for l1 in shifts:
                for l2 in shifts:
                    by_alpha.setdefault(l1 * half1 - l2 * half2, (l1, l2))
            for alpha_exact, (l1, l2) in by_alpha.items():
                alpha = float(alpha_exact)
                value = prefactor * sum(
                    w * _exp_integral(alpha, a, b) for a, b, w in segments
                )
                expected = 1.0 if (n1 == n2 and alpha_exact == 0) else 0.0
                deviation = abs(value - expected)
                if deviation > worst[0]:
                    worst = (deviation, (n1, l1), (n2, l2))
    return GramReport(
        max_deviation=worst[0],
        worst_left=worst[1],
        worst_right=worst[2],
        tolerance=req.tolerance,
        passed=worst[0] < req.tolerance,
    )


def _residue_atoms(spec: PiecewiseSpectrum):
    """Refine [0, 2) by the residues of all support fragments.

    Yields (atom lo, atom hi, members) where members lists (m, coeff) for
    every support fragment covering the atom from window [2m, 2m+2).
    """
    frags = []
    points = {Fraction(0), Fraction(2)}
    for support, coeff in spec.pieces:
        for frag, m in residue_fragments(support):
            lo, hi = frag.lo - 2 * m, frag.hi - 2 * m
            frags.append((lo, hi, m, coeff))
            points.update((lo, hi))
    cuts = sorted(points)
    for lo, hi in zip(cuts, cuts[1:]):
        members = [
            (m, coeff) for flo, fhi, m, coeff in frags if flo <= lo and hi <= fhi
        ]
        if members:
            yield lo, hi, members


def invariance_residual(spec: PiecewiseSpectrum, n: int) -> float:
    """Distance of exp(-i x / 2**n) * spec from the 2pi-periodic multiples of spec.

    Per residue class the optimal periodic multiplier is the coefficient-
    weighted mean of the member phases; the pointwise defect is constant on
    each residue atom because the common phase factors out, so the residual
    integrates in closed form.  The residual vanishes exactly when every
    atom's member windows agree modulo 2**n.
    """
    total = 0.0
    modulus = 2**n
    for lo, hi, members in _residue_atoms(spec):
        weights = [float(c) ** 2 for _, c in members]
        mass = sum(weights)
        mean = sum(
            w * cmath.exp(-1j * TWO_PI * (m % modulus) / modulus)
            for (m, _), w in zip(members, weights)
        ) / mass
        defect = max(0.0, 1.0 - abs(mean) ** 2)
        # lebesgue length (hi-lo)*pi times mass/(2 pi) collapses to mass*(hi-lo)/2
        total += float(hi - lo) / 2.0 * mass * defect
    return math.sqrt(total)


def witness_check(
    spec: PiecewiseSpectrum,
    f: IntervalSet,
    n: int,
    samples: int,
    seed: int = 0,
) -> float:
    """Max pointwise defect of the periodic witness built from the representative f.

    The witness g is the 2pi-periodic extension of exp(-i x / 2**n)
    restricted to f; the check samples seeded pseudo-random support points
    and compares exp(-i x / 2**n) * spec(x) against g(x) * spec(x).
    """
    rep: list[tuple[Fraction, Fraction, int]] = []
    for frag, m in residue_fragments(f):
        rep.append((frag.lo - 2 * m, frag.hi - 2 * m, m))
    rng = random.Random(seed)
    pieces = []
    for support, coeff in spec.pieces:
        for iv in support.parts:
            pieces.append((iv, abs(float(coeff))))
    weights = [float(iv.length) for iv, _ in pieces]
    norm = 1.0 / math.sqrt(TWO_PI)
    worst = 0.0
    for _ in range(samples):
        iv, cmag = rng.choices(pieces, weights=weights)[0]
        u = rng.uniform(float(iv.lo), float(iv.hi))  # pi units
        residue = u - 2.0 * math.floor(u / 2.0)
        m_f = None
        for lo, hi, m in rep:
            if float(lo) <= residue < float(hi):
                m_f = m
                break
        if m_f is None:
            # measure-zero boundary draw; skip
            continue
        x = u * math.pi
        x_ref = (residue + 2 * m_f) * math.pi
        err = abs(
            cmath.exp(-1j * x / 2**n) - cmath.exp(-1j * x_ref / 2**n)
        ) * cmag * norm
        worst = max(worst, err)
    return worst
