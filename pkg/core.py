"""Exact scalars, vectors, matrices and quadratic forms

Everything here works over `fractions.Fraction`; no value is ever rounded.
Matrices are small (2x2 or 3x3) and immutable, so the linear algebra is
plain Gaussian elimination over the rationals.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, isqrt
from numbers import Rational as _RationalABC
from typing import Iterable, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]


class NormLineError(Exception):
    """Base class of every error raised by the library"""


class DimensionError(NormLineError):
    pass


class ZeroVectorError(NormLineError):
    pass


class DegenerateError(NormLineError):
    """An input lies outside the precondition of an operation"""


class ParseError(NormLineError):
    pass


def rational(value) -> Fraction:
    """Coerce an exact number to a Fraction

    Floats are refused: a float has already lost the value it was meant
    to represent.
    """
    if isinstance(value, bool):
        raise TypeError('booleans are not rationals')
    if isinstance(value, float):
        raise TypeError('floating-point value {!r} is not exact'.format(value))
    if isinstance(value, _RationalABC):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError('cannot interpret {!r} as a rational'.format(value))


def format_rational(q: Fraction) -> str:
    """'num/den' for non-integers, plain integer text otherwise"""
    q = rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return '{}/{}'.format(q.numerator, q.denominator)


def rational_sqrt(q: Scalar) -> Optional[Fraction]:
    """Exact square root of a rational, or None when it is not a square

    A reduced fraction u/w is a square iff u and w both are.
    """
    q = rational(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def _vector(v: Iterable) -> Tuple[Fraction, ...]:
    return tuple(rational(x) for x in v)


def dot(v: Sequence, w: Sequence) -> Fraction:
    if len(v) != len(w):
        raise DimensionError('cannot pair vectors of sizes {} and {}'
                             .format(len(v), len(w)))
    return sum((rational(x) * rational(y) for x, y in zip(v, w)),
               Fraction(0))


def squared_norm(v: Sequence) -> Fraction:
    return dot(v, v)


@dataclass(frozen=True)
class RatMatrix:
    """Square matrix with Fraction entries, stored row-major"""
    rows: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(_vector(row) for row in self.rows)
        size = len(rows)
        if size == 0 or any(len(row) != size for row in rows):
            raise DimensionError('matrix must be square, got rows of sizes {}'
                                 .format([len(row) for row in rows]))
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_entries(cls, entries: Sequence, size: Optional[int] = None):
        """Build a matrix from a flat row-major list"""
        entries = list(entries)
        if size is None:
            size = isqrt(len(entries))
        if size * size != len(entries):
            raise DimensionError('{} entries do not form a {}x{} matrix'
                                 .format(len(entries), size, size))
        rows = [entries[i * size:(i + 1) * size] for i in range(size)]
        return matrix(rows)

    @classmethod
    def identity(cls, size: int):
        return matrix([[1 if i == j else 0 for j in range(size)]
                       for i in range(size)])

    @property
    def size(self) -> int:
        return len(self.rows)

    @property
    def entries(self) -> Tuple[Fraction, ...]:
        return tuple(x for row in self.rows for x in row)

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(row[j] for row in self.rows)

    def transpose(self):
        return matrix([self.column(j) for j in range(self.size)])

    def apply(self, v: Sequence) -> Tuple[Fraction, ...]:
        """Matrix-vector product"""
        if len(v) != self.size:
            raise DimensionError('cannot apply a {0}x{0} matrix to a vector '
                                 'of size {1}'.format(self.size, len(v)))
        return tuple(dot(row, v) for row in self.rows)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if other.size != self.size:
                raise DimensionError('size mismatch {} vs {}'
                                     .format(self.size, other.size))
            cols = [other.column(j) for j in range(other.size)]
            return matrix([[dot(row, col) for col in cols]
                           for row in self.rows])
        return self.apply(other)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def _combine(self, other, sign):
        if not isinstance(other, RatMatrix) or other.size != self.size:
            return NotImplemented
        return matrix([[x + sign * y for x, y in zip(r, s)]
                       for r, s in zip(self.rows, other.rows)])

    def scale(self, factor: Scalar):
        factor = rational(factor)
        return matrix([[factor * x for x in row] for row in self.rows])

    def is_symmetric(self) -> bool:
        return self == self.transpose()

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def is_identity(self) -> bool:
        return self == RatMatrix.identity(self.size)

    def submatrix(self, indices: Sequence[int]):
        """Principal submatrix on the given rows and columns"""
        return matrix([[self.rows[i][j] for j in indices] for i in indices])

    def det(self) -> Fraction:
        rows = [list(row) for row in self.rows]
        n = self.size
        result = Fraction(1)
        for col in range(n):
            pivot = next((r for r in range(col, n) if rows[r][col] != 0),
                         None)
            if pivot is None:
                return Fraction(0)
            if pivot != col:
                rows[col], rows[pivot] = rows[pivot], rows[col]
                result = -result
            head = rows[col][col]
            result *= head
            for r in range(col + 1, n):
                factor = rows[r][col] / head
                if factor:
                    rows[r] = [x - factor * y
                               for x, y in zip(rows[r], rows[col])]
        return result

    def row_echelon(self) -> Tuple[List[List[Fraction]], List[int]]:
        """Reduced row echelon form and its pivot columns"""
        rows = [list(row) for row in self.rows]
        n = self.size
        pivots = []
        r = 0
        for col in range(n):
            found = next((i for i in range(r, n) if rows[i][col] != 0), None)
            if found is None:
                continue
            rows[r], rows[found] = rows[found], rows[r]
            head = rows[r][col]
            rows[r] = [x / head for x in rows[r]]
            for i in range(n):
                if i != r and rows[i][col] != 0:
                    factor = rows[i][col]
                    rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
            if r == n:
                break
        return rows, pivots

    def rank(self) -> int:
        return len(self.row_echelon()[1])

    def kernel(self) -> List[Tuple[Fraction, ...]]:
        """A basis of the null space, one vector per free column"""
        rows, pivots = self.row_echelon()
        free = [c for c in range(self.size) if c not in pivots]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.size
            v[f] = Fraction(1)
            for r, c in enumerate(pivots):
                v[c] = -rows[r][f]
            basis.append(tuple(v))
        return basis

    def __str__(self):
        return '[' + ', '.join(
            '[' + ', '.join(format_rational(x) for x in row) + ']'
            for row in self.rows) + ']'


class RatMatrix2(RatMatrix):
    """[[a, b], [c, d]]"""

    def __post_init__(self):
        super().__post_init__()
        if self.size != 2:
            raise DimensionError('expected a 2x2 matrix')

    a = property(lambda self: self.rows[0][0])
    b = property(lambda self: self.rows[0][1])
    c = property(lambda self: self.rows[1][0])
    d = property(lambda self: self.rows[1][1])


class RatMatrix3(RatMatrix):

    def __post_init__(self):
        super().__post_init__()
        if self.size != 3:
            raise DimensionError('expected a 3x3 matrix')


def matrix(rows: Sequence[Sequence]) -> RatMatrix:
    """Build the size-specific matrix class for the given rows"""
    size = len(rows)
    cls = {2: RatMatrix2, 3: RatMatrix3}.get(size, RatMatrix)
    return cls(tuple(tuple(row) for row in rows))


@dataclass(frozen=True)
class GramForm2:
    """Entries m, n, p of B = A^T A = [[m, p], [p, n]]"""
    m: Fraction
    n: Fraction
    p: Fraction

    @property
    def det(self) -> Fraction:
        return self.m * self.n - self.p * self.p

    def phi(self) -> 'BinaryForm':
        """The form (m-1)x^2 + 2p xy + (n-1)y^2 whose zeros are the lines"""
        return BinaryForm(self.m - 1, 2 * self.p, self.n - 1)


@dataclass(frozen=True)
class BinaryForm:
    """cxx*x^2 + cxy*x*y + cyy*y^2"""
    cxx: Fraction
    cxy: Fraction
    cyy: Fraction

    def __post_init__(self):
        for name in ('cxx', 'cxy', 'cyy'):
            object.__setattr__(self, name, rational(getattr(self, name)))

    def __call__(self, x: Scalar, y: Scalar) -> Fraction:
        x, y = rational(x), rational(y)
        return self.cxx * x * x + self.cxy * x * y + self.cyy * y * y

    @property
    def coefficients(self) -> Tuple[Fraction, Fraction, Fraction]:
        return self.cxx, self.cxy, self.cyy

    @property
    def discriminant(self) -> Fraction:
        return self.cxy * self.cxy - 4 * self.cxx * self.cyy

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def scale(self, factor: Scalar) -> 'BinaryForm':
        factor = rational(factor)
        return BinaryForm(*(factor * c for c in self.coefficients))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def linear_factors(self) -> Optional[Tuple[Tuple[Fraction, Fraction],
                                               Tuple[Fraction, Fraction]]]:
        """Split the form as k*(l1 . (x, y))*(l2 . (x, y)) over the rationals

        Returns the coefficient pairs l1, l2 (the scalar k is dropped), or
        None when the form is zero or does not factor over Q.
        """
        if self.is_zero():
            return None
        root = rational_sqrt(self.discriminant)
        if root is None:
            return None
        a, b, c = self.coefficients
        if a != 0:
            # a*(x - r1 y)(x - r2 y) with r = (-b +- root) / 2a
            r1 = (-b + root) / (2 * a)
            r2 = (-b - root) / (2 * a)
            return (Fraction(1), -r1), (Fraction(1), -r2)
        # a == 0: y*(b x + c y)
        return (Fraction(0), Fraction(1)), (b, c)

    def format(self, names: Tuple[str, str] = ('x', 'y')) -> str:
        u, v = names
        return _format_polynomial([(self.cxx, u + '^2'), (self.cxy, u + v),
                                   (self.cyy, v + '^2')])

    def __str__(self):
        return self.format()


AXES = ('x', 'y', 'z')


@dataclass(frozen=True)
class TernaryForm:
    """The quadratic form v . S v for a symmetric 3x3 matrix S"""
    matrix: RatMatrix3

    def __post_init__(self):
        if not isinstance(self.matrix, RatMatrix3):
            raise DimensionError('ternary forms need a 3x3 matrix')
        if not self.matrix.is_symmetric():
            raise DegenerateError('form matrix must be symmetric')

    def __call__(self, *v) -> Fraction:
        if len(v) == 1:
            v = tuple(v[0])
        return dot(v, self.matrix.apply(v))

    def coefficient(self, i: int, j: int) -> Fraction:
        """Coefficient of the monomial x_i x_j in the expanded form"""
        if i == j:
            return self.matrix[i, i]
        return 2 * self.matrix[i, j]

    def monomials(self) -> List[Tuple[str, Fraction]]:
        """[('x^2', c), ('xy', c), ...] in the conventional order"""
        out = []
        for i in range(3):
            for j in range(i, 3):
                name = AXES[i] + ('^2' if i == j else AXES[j])
                out.append((name, self.coefficient(i, j)))
        return out

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def __str__(self):
        return _format_polynomial([(c, name) for name, c in self.monomials()])


def _format_polynomial(terms) -> str:
    parts = []
    for coeff, name in terms:
        if coeff == 0:
            continue
        sign = '-' if coeff < 0 else '+'
        mag = abs(coeff)
        text = name if mag == 1 else '{}*{}'.format(format_rational(mag), name)
        parts.append((sign, text))
    if not parts:
        return '0'
    head_sign, head = parts[0]
    out = ('-' if head_sign == '-' else '') + head
    for sign, text in parts[1:]:
        out += ' {} {}'.format(sign, text)
    return out


@dataclass(frozen=True)
class PrimitiveDirection:
    """Canonical integer representative of a line through the origin

    Coordinates have gcd 1 and the first nonzero one is positive.
    """
    coordinates: Tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coordinates)
        if len(coords) not in (2, 3):
            raise DimensionError('directions have 2 or 3 coordinates')
        if any(not isinstance(x, int) or isinstance(x, bool) for x in coords):
            raise TypeError('direction coordinates must be integers')
        if not any(coords):
            raise ZeroVectorError('a direction cannot be the zero vector')
        if reduce(gcd, coords) != 1:
            raise DegenerateError('{} is not primitive'.format(coords))
        if next(x for x in coords if x) < 0:
            raise DegenerateError('{} is not sign-normalized'.format(coords))
        object.__setattr__(self, 'coordinates', coords)

    def __iter__(self):
        return iter(self.coordinates)

    def __len__(self):
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def as_list(self) -> List[int]:
        return list(self.coordinates)

    def __str__(self):
        return '<' + ', '.join(str(x) for x in self.coordinates) + '>'


def gram2(A: RatMatrix2) -> GramForm2:
    """(m, n, p) = (a^2 + c^2, b^2 + d^2, ab + cd)"""
    a, b, c, d = A.entries
    return GramForm2(a * a + c * c, b * b + d * d, a * b + c * d)


def gram3(A: RatMatrix3) -> TernaryForm:
    """B = A^T A as a form; subtract the identity to get the cone"""
    return TernaryForm(A.transpose() @ A)


def evaluate_form(F: Union[BinaryForm, TernaryForm], v: Sequence) -> Fraction:
    expected = 2 if isinstance(F, BinaryForm) else 3
    if len(v) != expected:
        raise DimensionError('form in {} variables evaluated at a vector of '
                             'size {}'.format(expected, len(v)))
    return F(*v) if isinstance(F, BinaryForm) else F(tuple(v))


def normalize_direction(v: Sequence) -> PrimitiveDirection:
    """Clear denominators, divide by the gcd and make the leading sign +"""
    coords = _vector(v)
    if not any(coords):
        raise ZeroVectorError('cannot normalize the zero vector')
    lcm = reduce(lambda acc, q: acc * q.denominator // gcd(acc, q.denominator),
                 coords, 1)
    ints = [int(q * lcm) for q in coords]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    if next(x for x in ints if x) < 0:
        ints = [-x for x in ints]
    return PrimitiveDirection(tuple(ints))


def verify_norm_preserving(A: RatMatrix, v: Sequence) -> bool:
    """||Av||^2 == ||v||^2, compared as exact rationals"""
    return squared_norm(A.apply(tuple(v))) == squared_norm(tuple(v))


def is_parallel(v: Sequence, w: Sequence) -> bool:
    """True iff v and w are linearly dependent"""
    v, w = _vector(v), _vector(w)
    if len(v) != len(w):
        raise DimensionError('size mismatch')
    return all(v[i] * w[j] == v[j] * w[i]
               for i, j in combinations(range(len(v)), 2))


def leading_minors(S: RatMatrix) -> List[Fraction]:
    return [S.submatrix(range(k)).det() for k in range(1, S.size + 1)]


def principal_minors(S: RatMatrix, order: int) -> List[Fraction]:
    return [S.submatrix(idx).det()
            for idx in combinations(range(S.size), order)]


def is_positive_definite(S: RatMatrix) -> bool:
    # Sylvester: strict definiteness is decided by the leading minors
    return all(m > 0 for m in leading_minors(S))


def is_negative_definite(S: RatMatrix) -> bool:
    return is_positive_definite(S.scale(-1))


def is_positive_semidefinite(S: RatMatrix) -> bool:
    # leading minors are not enough once S is singular
    return all(m >= 0 for k in range(1, S.size + 1)
               for m in principal_minors(S, k))


def is_negative_semidefinite(S: RatMatrix) -> bool:
    return is_positive_semidefinite(S.scale(-1))
