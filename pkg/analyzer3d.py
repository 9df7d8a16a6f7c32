"""The solution cone v . (B - I) v = 0 of a 3x3 rational matrix

B = A^T A. Existence and classification are decided from exact minors and
ranks of B - I; integer lines are searched by solving the cone for one
pivot coordinate and testing the discriminant for perfect squares.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import List, Optional, Sequence, Set, Tuple

from sympy import factorint

from core import (AXES, BinaryForm, DegenerateError, PrimitiveDirection,
                  RatMatrix, RatMatrix3, TernaryForm, format_rational, gram3,
                  is_negative_definite, is_negative_semidefinite,
                  is_positive_definite, is_positive_semidefinite, matrix,
                  normalize_direction, verify_norm_preserving)

logger = logging.getLogger(__name__)

EXAMPLE_NO_LINES = matrix([[1, 1, Fraction(1, 2)],
                           [1, Fraction(1, 2), 1],
                           [Fraction(1, 2), 1, 1]])
EXAMPLE_PLANE = matrix([[1, 2, 2], [2, 1, 2], [2, 2, 1]])
EXAMPLE_FAMILY = matrix([[1, 2, 3], [2, 1, 1], [1, 1, 1]])
EXAMPLE_SEEDED = matrix([[1, 2, 3], [3, 4, 5], [2, 3, 4]])

# ties in the default pivot choice go to the earliest axis in this order
PIVOT_PREFERENCE = (2, 0, 1)


class ConeKind(Enum):
    """Real shape of v.(B - I)v = 0

    A definite cone has only the origin as a real point; that case is
    reported as EMPTY, there is no separate zero-only kind.
    """
    EMPTY = 'empty'
    SINGLE_LINE = 'single_line'
    DOUBLE_PLANE = 'double_plane'
    PLANE_PAIR = 'plane_pair'
    IRRATIONAL_PLANE_PAIR = 'irrational_plane_pair'
    IRREDUCIBLE_CONE = 'irreducible_cone'
    ALL_SPACE = 'all_space'


@dataclass(frozen=True)
class ConeClassification:
    """Shape of the real solution set of the cone

    `normals` holds one primitive normal for a double plane and two for a
    rational plane pair. `line` is the only rational line of a single line
    or of either kind of plane pair (where the two planes meet).
    """
    kind: ConeKind
    rank: int
    normals: Tuple[PrimitiveDirection, ...] = ()
    line: Optional[PrimitiveDirection] = None

    @property
    def normal(self) -> Optional[PrimitiveDirection]:
        return self.normals[0] if self.kind is ConeKind.DOUBLE_PLANE else None


def other_axes(pivot: int) -> Tuple[int, int]:
    return tuple(i for i in range(3) if i != pivot)


@dataclass(frozen=True)
class PivotReduction:
    """pivot = linear . (s, t) +- sqrt(discriminant_form(s, t)) / denominator

    (s, t) are the two remaining coordinates in axis order. The
    discriminant form has integer coefficients: it is the raw discriminant
    of the quadratic in the pivot times multiplier^2.
    """
    pivot: int
    linear: Tuple[Fraction, Fraction]
    denominator: Fraction
    discriminant_form: BinaryForm
    multiplier: int

    @property
    def others(self) -> Tuple[int, int]:
        return other_axes(self.pivot)

    def pivot_value(self, s, t, root) -> Fraction:
        """The pivot coordinate for a given signed square root of the discriminant"""
        return self.linear[0] * s + self.linear[1] * t + Fraction(root) / self.denominator

    def lift(self, s, t, root) -> Tuple[Fraction, Fraction, Fraction]:
        v = [Fraction(0)] * 3
        i, j = self.others
        v[self.pivot] = self.pivot_value(s, t, root)
        v[i], v[j] = Fraction(s), Fraction(t)
        return tuple(v)

    def __str__(self):
        names = tuple(AXES[i] for i in self.others)
        terms = []
        for coeff, name in zip(self.linear, names):
            if coeff:
                terms.append('{}*{}'.format(format_rational(coeff), name))
        head = ' + '.join(terms).replace('+ -', '- ') if terms else '0'
        return '{} = {} +- sqrt({})/{}'.format(
            AXES[self.pivot], head, self.discriminant_form.format(names),
            format_rational(self.denominator))


def cone_form(A: RatMatrix3) -> TernaryForm:
    """The form v . (B - I) v"""
    B = gram3(A).matrix
    return TernaryForm(B - RatMatrix.identity(3))


def existence3(A: RatMatrix3) -> bool:
    """True iff the cone has a nonzero real point

    Equivalent to lambda_min(B) <= 1 <= lambda_max(B): B - I is neither
    positive nor negative definite.
    """
    S = cone_form(A).matrix
    return not (is_positive_definite(S) or is_negative_definite(S))


def _first_nonzero_row(S: RatMatrix) -> Sequence[Fraction]:
    return next(row for row in S.rows if any(row))


def _plane_pair(S: RatMatrix, kernel: Sequence[Fraction]):
    """Factor a rank 2 indefinite form through a complement of its kernel

    For v = x e_i + y e_l + t k (k spanning the kernel) the form only sees
    (x, y), so it factors over Q iff its restriction to that plane does.
    """
    j = next(idx for idx, value in enumerate(kernel) if value != 0)
    i, l = other_axes(j)
    restricted = BinaryForm(S[i, i], 2 * S[i, l], S[l, l])
    factors = restricted.linear_factors()
    if factors is None:
        return None
    normals = []
    for alpha, beta in factors:
        n = [Fraction(0)] * 3
        n[i], n[l] = alpha, beta
        n[j] = -(alpha * kernel[i] + beta * kernel[l]) / kernel[j]
        normals.append(normalize_direction(n))
    return tuple(sorted(set(normals), key=lambda d: d.coordinates))


def classify_cone(A: RatMatrix3) -> ConeClassification:
    S = cone_form(A).matrix
    if S.is_zero():
        return ConeClassification(ConeKind.ALL_SPACE, 0)
    if is_positive_definite(S) or is_negative_definite(S):
        return ConeClassification(ConeKind.EMPTY, 3)

    rank = S.rank()
    if rank == 1:
        normal = normalize_direction(_first_nonzero_row(S))
        return ConeClassification(ConeKind.DOUBLE_PLANE, 1, (normal,))
    if rank == 3:
        return ConeClassification(ConeKind.IRREDUCIBLE_CONE, 3)

    kernel = S.kernel()[0]
    line = normalize_direction(kernel)
    if is_positive_semidefinite(S) or is_negative_semidefinite(S):
        return ConeClassification(ConeKind.SINGLE_LINE, 2, line=line)
    normals = _plane_pair(S, kernel)
    if normals is None:
        return ConeClassification(ConeKind.IRRATIONAL_PLANE_PAIR, 2, line=line)
    return ConeClassification(ConeKind.PLANE_PAIR, 2, normals, line)


def plane_integer_basis(c: ConeClassification) -> Tuple[PrimitiveDirection,
                                                        PrimitiveDirection]:
    """Two independent primitive vectors spanning the plane of a double plane"""
    if c.kind is not ConeKind.DOUBLE_PLANE:
        raise DegenerateError('expected a double plane, got {}'
                              .format(c.kind.value))
    n = c.normal.coordinates
    j = max(idx for idx in range(3) if n[idx] != 0)
    basis = []
    for i in other_axes(j):
        v = [0, 0, 0]
        v[i], v[j] = n[j], -n[i]
        basis.append(normalize_direction(v))
    return tuple(basis)


def _square_clearing(q: Fraction) -> int:
    """Smallest t > 0 with t^2 * q an integer"""
    t = 1
    for prime, exp in factorint(q.denominator).items():
        t *= prime ** ((exp + 1) // 2)
    return t


def pivot_reduce(A: RatMatrix3, pivot: int) -> PivotReduction:
    """Solve the cone for one coordinate by the quadratic formula"""
    S = cone_form(A).matrix
    spp = S[pivot, pivot]
    if spp == 0:
        raise DegenerateError('the cone has no {}^2 term; choose another pivot'
                              .format(AXES[pivot]))
    i, l = other_axes(pivot)
    spi, spl = S[pivot, i], S[pivot, l]
    raw = BinaryForm(spi * spi - spp * S[i, i],
                     2 * (spi * spl - spp * S[i, l]),
                     spl * spl - spp * S[l, l])
    t = 1
    for q in raw.coefficients:
        w = _square_clearing(q)
        t = t * w // gcd(t, w)
    logger.debug('pivot %s: raw discriminant %s, clearing multiplier %d',
                 AXES[pivot], raw, t)
    return PivotReduction(pivot=pivot,
                          linear=(-spi / spp, -spl / spp),
                          denominator=t * abs(spp),
                          discriminant_form=raw.scale(t * t),
                          multiplier=t)


def resubstitute(A: RatMatrix3, red: PivotReduction, s, t) -> Tuple[Fraction, Fraction]:
    """Cone value at pivot = L + w with w^2 = disc(s, t) / denominator^2

    Returns the rational part and the coefficient of w; both vanish when
    the reduction is correct.
    """
    S = cone_form(A).matrix
    p = red.pivot
    i, l = red.others
    s, t = Fraction(s), Fraction(t)
    quad = S[p, p]
    lin = 2 * (S[p, i] * s + S[p, l] * t)
    const = S[i, i] * s * s + 2 * S[i, l] * s * t + S[l, l] * t * t
    L = red.linear[0] * s + red.linear[1] * t
    W = red.discriminant_form(s, t) / (red.denominator ** 2)
    return quad * (L * L + W) + lin * L + const, 2 * quad * L + lin


def default_pivot(A: RatMatrix3) -> Optional[int]:
    """The pivot giving the smallest denominator, then the smallest form

    Ties go to z, then x, then y. None when no coordinate appears squared.
    """
    S = cone_form(A).matrix
    best = None
    for axis in PIVOT_PREFERENCE:
        if S[axis, axis] == 0:
            continue
        red = pivot_reduce(A, axis)
        size = sum(abs(c) for c in red.discriminant_form.coefficients)
        key = (red.denominator, size)
        if best is None or key < best[0]:
            best = (key, axis)
    return None if best is None else best[1]


def _collect(found: Set[Tuple[int, ...]], pivot: int, x, s: int, t: int,
             bound: int):
    if x.denominator != 1 or abs(x) > bound:
        return
    v = [0, 0, 0]
    i, l = other_axes(pivot)
    v[pivot], v[i], v[l] = int(x), s, t
    if reduce(gcd, v) != 1:
        return
    if next(c for c in v if c) < 0:
        v = [-c for c in v]
    found.add(tuple(v))


def integer_line_search3(A: RatMatrix3, bound: int) -> List[PrimitiveDirection]:
    """Every primitive integer solution line with coordinates in [-bound, bound]

    Enumerates the two non-pivot coordinates and solves for the pivot, so
    the cost is quadratic in the bound. Output is sorted lexicographically.
    """
    if bound < 1:
        raise DegenerateError('bound must be at least 1')
    S = cone_form(A).matrix
    pivot = default_pivot(A)
    found = set()
    span = range(-bound, bound + 1)

    if pivot is not None:
        red = pivot_reduce(A, pivot)
        a, b, c = (int(q) for q in red.discriminant_form.coefficients)
        for s in span:
            for t in span:
                if s == 0 and t == 0:
                    continue
                q = a * s * s + b * s * t + c * t * t
                if q < 0:
                    continue
                u = isqrt(q)
                if u * u != q:
                    continue
                for root in {u, -u}:
                    _collect(found, pivot, red.pivot_value(s, t, root), s, t, bound)
    else:
        # no squared coordinates: the cone is linear in x
        pivot = 0
        i, l = other_axes(pivot)
        found.add((1, 0, 0))
        for s in span:
            for t in span:
                if s == 0 and t == 0:
                    continue
                slope = 2 * (S[0, i] * s + S[0, l] * t)
                rest = S[i, i] * s * s + 2 * S[i, l] * s * t + S[l, l] * t * t
                if slope != 0:
                    _collect(found, pivot, -rest / slope, s, t, bound)
                elif rest == 0:
                    for x in span:
                        _collect(found, pivot, Fraction(x), s, t, bound)

    logger.debug('search with bound %d found %d lines', bound, len(found))
    return [PrimitiveDirection(v) for v in sorted(found)]


def example3_family(v: int, r: int) -> Tuple[PrimitiveDirection, ...]:
    """Solution lines of EXAMPLE_FAMILY for integer parameters (v, r)

        x = (r^2 - 10 v^2 +- 4 v r) / 10,  y = -(14 v^2 + r^2) / 10,  z = 2 v^2

    One direction when both signs give the same line.
    """
    if v == 0 and r == 0:
        raise DegenerateError('(v, r) = (0, 0) gives no line')
    y = Fraction(-(14 * v * v + r * r), 10)
    z = Fraction(2 * v * v)
    lines = []
    for sign in (1, -1):
        x = Fraction(r * r - 10 * v * v + sign * 4 * v * r, 10)
        direction = normalize_direction((x, y, z))
        if direction not in lines:
            lines.append(direction)
    for direction in lines:
        if not verify_norm_preserving(EXAMPLE_FAMILY, direction):
            raise DegenerateError('{} failed verification'.format(direction))
    return tuple(lines)


def example3_family_image(v_bound: int, r_bound: int) -> Set[PrimitiveDirection]:
    image = set()
    for v in range(-v_bound, v_bound + 1):
        for r in range(-r_bound, r_bound + 1):
            if v or r:
                image.update(example3_family(v, r))
    return image
