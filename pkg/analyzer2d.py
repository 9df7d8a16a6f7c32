"""Norm-preserving lines of 2x2 rational matrices

A line through the origin spanned by v = <x, y> keeps lengths under A iff
Phi(x, y) = (m-1)x^2 + 2p xy + (n-1)y^2 = 0, where [[m, p], [p, n]] is the
Gram matrix A^T A. Everything below is a case analysis of that binary form.

Only exact arithmetic is used. The eigenvalue argument for existence
(smallest eigenvalue of A^T A <= 1 <= largest) is replaced by the equivalent
polynomial inequality a^2 + b^2 + c^2 + d^2 >= 1 + det(A)^2. Note that the
usual write-up of that argument calls lambda_1 the smallest eigenvalue and
later the largest one; nothing here depends on that labelling.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from core import (DegenerateError, PrimitiveDirection, RatMatrix2, Scalar,
                  gram2, is_parallel, matrix, normalize_direction, rational,
                  rational_sqrt, verify_norm_preserving)

logger = logging.getLogger(__name__)


class SolutionKind(Enum):
    NO_REAL_LINES = 'no_real_lines'
    ALL_LINES = 'all_lines'
    LINES = 'lines'


@dataclass(frozen=True)
class LineDescriptor:
    """One norm-preserving line

    Rational lines carry a PrimitiveDirection. Irrational ones carry
    (alpha, beta, s) and a branch sign, meaning
    y/x = (alpha + branch * sqrt(s)) / beta with s a positive non-square.
    """
    rational: bool
    direction: Optional[PrimitiveDirection] = None
    irrational_slope: Optional[Tuple[int, int, int]] = None
    branch: int = 0
    eigenline: Optional[bool] = None

    def __str__(self):
        if self.rational:
            return str(self.direction)
        alpha, beta, s = self.irrational_slope
        sign = '+' if self.branch > 0 else '-'
        return 'y/x = ({} {} sqrt({}))/{}'.format(alpha, sign, s, beta)


@dataclass(frozen=True)
class LineSolution2:
    kind: SolutionKind
    lines: Tuple[LineDescriptor, ...] = ()
    discriminant: Optional[Fraction] = None

    @property
    def rational_directions(self) -> List[PrimitiveDirection]:
        return [line.direction for line in self.lines if line.rational]


def existence_condition(A: RatMatrix2) -> bool:
    """a^2 + b^2 + c^2 + d^2 >= 1 + det(A)^2"""
    return sum(x * x for x in A.entries) >= 1 + A.det() ** 2


def is_orthogonal(A: RatMatrix2) -> bool:
    return (A.transpose() @ A).is_identity()


def _rational_line(A, v) -> LineDescriptor:
    direction = normalize_direction(v)
    eigen = is_parallel(A.apply(direction.coordinates), direction.coordinates)
    return LineDescriptor(rational=True, direction=direction, eigenline=eigen)


def _irrational_lines(p, n, disc) -> Tuple[LineDescriptor, ...]:
    # y/x = (-p +- sqrt(disc)) / (n - 1); scale by M to make every part integral
    m = 1
    for q in (p, n - 1, disc):
        m = m * q.denominator // gcd(m, q.denominator)
    alpha, beta, s = int(-p * m), int((n - 1) * m), int(disc * m * m)
    lines = []
    for branch in (1, -1):
        if beta < 0:
            slope, sign = (-alpha, -beta, s), -branch
        else:
            slope, sign = (alpha, beta, s), branch
        lines.append(LineDescriptor(rational=False, irrational_slope=slope,
                                    branch=sign))
    return tuple(lines)


def solve_lines2(A: RatMatrix2) -> LineSolution2:
    """All norm-preserving lines of A, exactly"""
    g = gram2(A)
    m, n, p = g.m, g.n, g.p
    if m == 1 and n == 1 and p == 0:
        return LineSolution2(SolutionKind.ALL_LINES)

    if n == 1:
        # Phi = x((m-1)x + 2py): the y axis and, unless it collapses onto
        # the y axis, the line <2p, 1-m>
        candidates = {normalize_direction((0, 1)),
                      normalize_direction((2 * p, 1 - m))}
        lines = tuple(_rational_line(A, v)
                      for v in sorted(candidates, key=lambda d: d.coordinates))
        return LineSolution2(SolutionKind.LINES, lines, p * p)

    disc = p * p - (m - 1) * (n - 1)
    logger.debug('gram (m, n, p) = (%s, %s, %s), discriminant %s', m, n, p, disc)
    if disc < 0:
        return LineSolution2(SolutionKind.NO_REAL_LINES, discriminant=disc)

    k = rational_sqrt(disc)
    if k is None:
        return LineSolution2(SolutionKind.LINES, _irrational_lines(p, n, disc),
                             disc)
    candidates = {normalize_direction((n - 1, -p + k)),
                  normalize_direction((n - 1, -p - k))}
    lines = tuple(_rational_line(A, v)
                  for v in sorted(candidates, key=lambda d: d.coordinates))
    return LineSolution2(SolutionKind.LINES, lines, disc)


def integer_lines2(A: RatMatrix2) -> List[PrimitiveDirection]:
    """The rational lines of solve_lines2, in canonical order

    An orthogonal A preserves every line, so there is no finite list to
    return; callers that care check solve_lines2(A).kind first.
    """
    solution = solve_lines2(A)
    if solution.kind is SolutionKind.ALL_LINES:
        logger.warning('every line of %s is norm-preserving', A)
    return solution.rational_directions


@dataclass(frozen=True)
class FamilyVariant:
    """Matrices [[a, a + b_offset], [c, c + d_offset]], maybe transposed"""
    b_offset: int
    d_offset: int
    transpose: bool = False

    def __post_init__(self):
        if self.b_offset not in (1, -1) or self.d_offset not in (1, -1):
            raise DegenerateError('family offsets must be +1 or -1')

    @property
    def name(self) -> str:
        signs = {1: 'p', -1: 'm'}
        return signs[self.b_offset] + signs[self.d_offset]


VARIANTS = {
    'pp': FamilyVariant(1, 1),
    'pm': FamilyVariant(1, -1),
    'mp': FamilyVariant(-1, 1),
    'mm': FamilyVariant(-1, -1),
}
VARIANTS['lopez'] = VARIANTS['mm']


def family_matrix(variant: FamilyVariant, a: int, c: int) -> RatMatrix2:
    A = matrix([[a, a + variant.b_offset], [c, c + variant.d_offset]])
    if variant.transpose:
        A = A.transpose()
    return A


def family_solutions(a: int, c: int) -> Tuple[PrimitiveDirection,
                                              PrimitiveDirection, int]:
    """Lines of [[a, a-1], [c, c-1]] and the square root k of its discriminant

    The second direction is <(a-1)^2 + (c-1)^2 - 1, 1 - a^2 - c^2>. It
    vanishes only for the two orthogonal members, where every line works;
    the first direction is then returned twice.
    """
    v1 = normalize_direction((1, -1))
    raw = ((a - 1) ** 2 + (c - 1) ** 2 - 1, 1 - a * a - c * c)
    v2 = normalize_direction(raw) if any(raw) else v1
    return v1, v2, a + c - 1


def pythagorean_family(b: Scalar, d: Scalar) -> Tuple[RatMatrix2,
                                                      PrimitiveDirection,
                                                      Optional[PrimitiveDirection]]:
    """[[3/5, b], [4/5, d]] with its lines <1, 0> and <5(1-b^2-d^2), 2(3b+4d)>

    The first column is a unit vector, so <1, 0> always works. When the
    second formula gives the zero vector the matrix is orthogonal and only
    <1, 0> is returned.
    """
    b, d = rational(b), rational(d)
    A = matrix([[Fraction(3, 5), b], [Fraction(4, 5), d]])
    v1 = normalize_direction((1, 0))
    raw = (5 * (1 - b * b - d * d), 2 * (3 * b + 4 * d))
    if not any(raw):
        return A, v1, None
    v2 = normalize_direction(raw)
    if not (verify_norm_preserving(A, v1) and verify_norm_preserving(A, v2)):
        raise DegenerateError('family lines failed verification for {}'
                              .format(A))
    return A, v1, v2
