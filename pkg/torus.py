"""Integer iteration of toral automorphisms along their eigendirections

The symmetric matrices A = [[q+1, q], [q, q-1]] have determinant -1 and
irrational eigenvalues q +- sqrt(q^2 + 1) for q != 0. Their two integer
solution lines v1, v2 have the eigendirections as bisectors once v2 is
rescaled to the length of v1, so A^n applied to u = v1 + v3 (unstable) or
w = v1 - v3 (stable) only needs the integer matrix A^n.

Iterates are exact elements a + b*sqrt(D) of the real quadratic field.
The classical worked case is q = 2, where lambda_1 = 2 + sqrt(5); it is
sometimes misprinted as 1 + sqrt(5), which does not match A^10.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from sympy import factorint

from core import (DegenerateError, PrimitiveDirection, format_rational,
                  matrix, rational, squared_norm)
from analyzer2d import SolutionKind, solve_lines2

logger = logging.getLogger(__name__)

IntMatrix2 = Tuple[Tuple[int, int], Tuple[int, int]]


def square_free_decomposition(n: int) -> Tuple[int, int]:
    """(f, D) with n = f^2 * D and D square-free"""
    if n <= 0:
        raise DegenerateError('square-free decomposition needs n > 0')
    f, D = 1, 1
    for prime, exp in factorint(n).items():
        f *= prime ** (exp // 2)
        if exp % 2:
            D *= prime
    return f, D


@dataclass(frozen=True)
class QuadIntElement:
    """rational + radical * sqrt(radicand), radicand square-free"""
    rational: Fraction
    radical: Fraction
    radicand: int

    def __post_init__(self):
        object.__setattr__(self, 'rational', rational(self.rational))
        object.__setattr__(self, 'radical', rational(self.radical))
        if self.radicand < 1 or square_free_decomposition(self.radicand)[0] != 1:
            raise DegenerateError('radicand {} is not a positive square-free '
                                  'integer'.format(self.radicand))

    def _coerce(self, other):
        if isinstance(other, QuadIntElement):
            if other.radicand != self.radicand:
                raise DegenerateError('cannot mix sqrt({}) and sqrt({})'
                                      .format(self.radicand, other.radicand))
            return other
        return QuadIntElement(rational(other), Fraction(0), self.radicand)

    def __add__(self, other):
        other = self._coerce(other)
        return QuadIntElement(self.rational + other.rational,
                              self.radical + other.radical, self.radicand)

    __radd__ = __add__

    def __neg__(self):
        return QuadIntElement(-self.rational, -self.radical, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        a, b, c, d = self.rational, self.radical, other.rational, other.radical
        return QuadIntElement(a * c + b * d * self.radicand, a * d + b * c,
                              self.radicand)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DegenerateError('negative powers are not supported')
        result = QuadIntElement(Fraction(1), Fraction(0), self.radicand)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return QuadIntElement(self.rational, -self.radical, self.radicand)

    def _radical_text(self) -> str:
        b, D = abs(self.radical), self.radicand
        root = 'sqrt({})'.format(D)
        if b.denominator != 1 and (b * D).denominator == 1:
            return '{}/{}'.format((b * D).numerator, root)
        if b == 1:
            return root
        return '{}*{}'.format(format_rational(b), root)

    def __str__(self):
        if self.radical == 0:
            return format_rational(self.rational)
        sign = '-' if self.radical < 0 else '+'
        if self.rational == 0:
            return ('-' if sign == '-' else '') + self._radical_text()
        return '{} {} {}'.format(format_rational(self.rational), sign,
                                 self._radical_text())


@dataclass(frozen=True)
class TorusMatrix:
    """Symmetric integer matrix [[a, b], [b, d]] with determinant -1"""
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.b != self.c:
            raise DegenerateError('toral matrix must be symmetric')
        if self.a * self.d - self.b * self.c != -1:
            raise DegenerateError('toral matrix must have determinant -1')

    @property
    def rows(self) -> IntMatrix2:
        return (self.a, self.b), (self.c, self.d)


def autom_family(q: int) -> TorusMatrix:
    return TorusMatrix(q + 1, q, q, q - 1)


def _multiply(X: IntMatrix2, Y: IntMatrix2) -> IntMatrix2:
    return ((X[0][0] * Y[0][0] + X[0][1] * Y[1][0],
             X[0][0] * Y[0][1] + X[0][1] * Y[1][1]),
            (X[1][0] * Y[0][0] + X[1][1] * Y[1][0],
             X[1][0] * Y[0][1] + X[1][1] * Y[1][1]))


def matrix_power(A: TorusMatrix, n: int) -> IntMatrix2:
    """A^n by repeated squaring"""
    if n < 0:
        raise DegenerateError('matrix_power needs n >= 0')
    result, base = ((1, 0), (0, 1)), A.rows
    while n:
        if n & 1:
            result = _multiply(result, base)
        base = _multiply(base, base)
        n >>= 1
    return result


def determinant(M: IntMatrix2) -> int:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def eigenvalues(q: int) -> Tuple[QuadIntElement, QuadIntElement]:
    """(q + sqrt(q^2+1), q - sqrt(q^2+1)) from trace 2q and determinant -1"""
    f, D = square_free_decomposition(q * q + 1)
    lam = QuadIntElement(Fraction(q), Fraction(f), D)
    return lam, lam.conjugate()


def solution_lines_for_autom(q: int) -> Tuple[PrimitiveDirection,
                                              PrimitiveDirection]:
    """<1, -1> and the second integer solution line of autom_family(q)

    For q = 0 the matrix is an orthogonal reflection: every line is a
    solution and the coordinate axes (its eigenlines) are returned.
    """
    A = matrix(autom_family(q).rows)
    solution = solve_lines2(A)
    if solution.kind is SolutionKind.ALL_LINES:
        logger.warning('q = %d gives an orthogonal matrix; every line is a '
                       'solution line', q)
        return PrimitiveDirection((0, 1)), PrimitiveDirection((1, 0))
    directions = solution.rational_directions
    if len(directions) != 2:
        raise DegenerateError('q = {} does not have two integer solution lines'
                              .format(q))
    v1 = PrimitiveDirection((1, -1))
    v2 = next(d for d in directions if d != v1)
    return v1, v2


def _apply(M, v):
    return tuple(M[i][0] * v[0] + M[i][1] * v[1] for i in range(2))


@dataclass(frozen=True)
class EigenFrame:
    """v1, the oriented v2 and the factor c with v3 = c * v2, |v3| = |v1|"""
    q: int
    v1: Tuple[int, int]
    v2: Tuple[int, int]
    scale: QuadIntElement
    unstable: QuadIntElement
    stable: QuadIntElement

    def combine(self, x: Tuple[int, int], y: Tuple[int, int], sign: int):
        """x + sign * c * y, coordinate-wise"""
        return tuple(xi + sign * (self.scale * yi) for xi, yi in zip(x, y))


def eigen_frame(q: int) -> EigenFrame:
    if q == 0:
        raise DegenerateError('q = 0 has eigenvalues +-1; there is nothing '
                              'to iterate')
    v1, v2 = solution_lines_for_autom(q)
    lam1, lam2 = eigenvalues(q)
    ratio = squared_norm(v1.coordinates) / squared_norm(v2.coordinates)
    f, D = square_free_decomposition(ratio.numerator * ratio.denominator)
    scale = QuadIntElement(Fraction(0), Fraction(f, ratio.denominator), D)
    A = autom_family(q).rows
    for oriented in (v2.coordinates, tuple(-x for x in v2.coordinates)):
        frame = EigenFrame(q, v1.coordinates, oriented, scale, lam1, lam2)
        u = frame.combine(v1.coordinates, oriented, 1)
        Au = frame.combine(_apply(A, v1.coordinates), _apply(A, oriented), 1)
        if all(a == lam1 * b for a, b in zip(Au, u)):
            logger.debug('q = %d: v2 oriented as %s', q, oriented)
            return frame
    raise DegenerateError('no orientation of {} bisects the eigendirections '
                          'of q = {}'.format(v2, q))


def _iterate(q: int, n: int, sign: int) -> Tuple[QuadIntElement, QuadIntElement]:
    if n < 0:
        raise DegenerateError('iterates need n >= 0')
    frame = eigen_frame(q)
    power = matrix_power(autom_family(q), n)
    result = frame.combine(_apply(power, frame.v1), _apply(power, frame.v2), sign)
    lam = frame.unstable if sign > 0 else frame.stable
    start = frame.combine(frame.v1, frame.v2, sign)
    if any(r != lam ** n * s for r, s in zip(result, start)):
        raise DegenerateError('integer iterate disagrees with the eigenvalue '
                              'power for q = {}, n = {}'.format(q, n))
    return result


def unstable_iterate(q: int, n: int) -> Tuple[QuadIntElement, QuadIntElement]:
    """Coordinates of A^n u with u = v1 + v3 on the unstable eigenline"""
    return _iterate(q, n, 1)


def stable_iterate(q: int, n: int) -> Tuple[QuadIntElement, QuadIntElement]:
    """Coordinates of A^n w with w = v1 - v3 on the stable eigenline"""
    return _iterate(q, n, -1)
