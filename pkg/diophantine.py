"""Quadratic Diophantine equations behind the integer solution lines

The 3x3 searches reduce to equations a*y^2 + b*y*z + c*z^2 = d*u^2. This
module holds exact square roots, the two mod 4 certificates that rule
solutions out, a brute-force oracle, the two-parameter family grown from
one known solution, and the lift of a solution back to solution lines.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List, Optional, Tuple

from core import (DegenerateError, PrimitiveDirection, RatMatrix3,
                  ZeroVectorError, normalize_direction, verify_norm_preserving)

logger = logging.getLogger(__name__)

Solution = Tuple[int, int, int]


@dataclass(frozen=True)
class IntBinaryForm:
    """a*y^2 + b*y*z + c*z^2 with integer coefficients"""
    a: int
    b: int
    c: int

    def __post_init__(self):
        for name in ('a', 'b', 'c'):
            value = getattr(self, name)
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    raise DegenerateError('coefficient {} = {} is not an '
                                          'integer'.format(name, value))
                object.__setattr__(self, name, value.numerator)
            elif not isinstance(value, int):
                raise TypeError('coefficient {} must be an integer'.format(name))

    def __call__(self, y: int, z: int) -> int:
        return self.a * y * y + self.b * y * z + self.c * z * z

    @property
    def coefficients(self) -> Tuple[int, int, int]:
        return self.a, self.b, self.c

    @classmethod
    def from_binary_form(cls, form) -> 'IntBinaryForm':
        return cls(*form.coefficients)


@dataclass(frozen=True)
class SquareRepInstance:
    """The equation form(y, z) = d * u^2"""
    form: IntBinaryForm
    d: int = 1

    def __post_init__(self):
        if self.d == 0:
            raise DegenerateError('the right-hand side multiplier must be '
                                  'nonzero')

    def holds(self, y: int, z: int, u: int) -> bool:
        return self.form(y, z) == self.d * u * u


@dataclass(frozen=True)
class PiezasFamily:
    """Two-parameter family of solutions grown from the seed (m, n, p)

        y = (a m + b n) s^2 + 2 c n s t - c m t^2
        z = -a n s^2 + 2 a m s t + (b m + c n) t^2
        u = p (a s^2 + b s t + c t^2)

    With n = 0, the only case the usual presentation works out, the sign of
    the a n s^2 term is immaterial; for n != 0 only the minus sign gives an
    identity.
    """
    instance: SquareRepInstance
    seed: Solution

    def __call__(self, s: int, t: int) -> Solution:
        a, b, c = self.instance.form.coefficients
        m, n, p = self.seed
        y = (a * m + b * n) * s * s + 2 * c * n * s * t - c * m * t * t
        z = -a * n * s * s + 2 * a * m * s * t + (b * m + c * n) * t * t
        u = p * (a * s * s + b * s * t + c * t * t)
        return y, z, u

    def polynomials(self) -> Tuple[Tuple[int, int, int], ...]:
        """Coefficients of s^2, s*t, t^2 in y, z and u"""
        a, b, c = self.instance.form.coefficients
        m, n, p = self.seed
        return ((a * m + b * n, 2 * c * n, -c * m),
                (-a * n, 2 * a * m, b * m + c * n),
                (p * a, p * b, p * c))


def integer_sqrt(n: int) -> Optional[int]:
    """r with r*r == n, or None when n is not a perfect square"""
    if n < 0:
        raise ValueError('integer_sqrt of negative number {}'.format(n))
    r = isqrt(n)
    return r if r * r == n else None


def two_adic_obstruction(f: IntBinaryForm) -> bool:
    """Certify that f(y, z) = u^2 has no solution besides (0, 0, 0)

    Applies when a = c = 3 and b = 0 (mod 4). Write y = 2^i v, z = 2^j w
    with v, w odd and i <= j. Then f(y, z) = 4^i * r where r = 2 (mod 4)
    for i = j and r = 3 (mod 4) for i < j, and neither is a square.
    False means inconclusive, never solvable.
    """
    a, b, c = f.coefficients
    return a % 4 == 3 and c % 4 == 3 and b % 4 == 0


def odd_argument_obstruction(f: IntBinaryForm) -> bool:
    """True when f(y, z) = u^2 forces z to be even

    With a = b = 0 and c = 2 (mod 4), an odd z makes f(y, z) = 2 (mod 4).
    """
    a, b, c = f.coefficients
    return a % 4 == 0 and b % 4 == 0 and c % 4 == 2


def square_rep_bruteforce(inst: SquareRepInstance,
                          bound: int) -> List[Solution]:
    """Every (y, z, u) with |y|, |z| <= bound, u >= 0, except (0, 0, 0)

    Non-primitive solutions are kept; order is lexicographic in (y, z).
    """
    if bound < 1:
        raise DegenerateError('bound must be at least 1')
    a, b, c = inst.form.coefficients
    d = inst.d
    found = []
    span = range(-bound, bound + 1)
    for y in span:
        ay2 = a * y * y
        by = b * y
        for z in span:
            if y == 0 and z == 0:
                continue
            q = ay2 + (by + c * z) * z
            if q % d:
                continue
            q //= d
            if q < 0:
                continue
            u = isqrt(q)
            if u * u == q:
                found.append((y, z, u))
    logger.debug('brute force over %d pairs found %d solutions',
                 len(span) ** 2 - 1, len(found))
    return found


def piezas_family(inst: SquareRepInstance, seed: Solution) -> PiezasFamily:
    m, n, p = seed
    if not inst.holds(m, n, p):
        raise DegenerateError('seed {} does not satisfy {}*y^2 + {}*yz + '
                              '{}*z^2 = {}*u^2'.format(seed, *inst.form.coefficients,
                                                       inst.d))
    if m == 0 and n == 0:
        raise DegenerateError('the trivial solution cannot seed a family')
    return PiezasFamily(inst, tuple(seed))


def lift_to_lines(A: RatMatrix3, red, sol: Solution) -> List[PrimitiveDirection]:
    """Turn a solution of the discriminant equation into solution lines

    `red` is a pivot reduction of A's cone. The pivot coordinate is
    linear(y, z) +- u / denominator; each sign gives a line. The two
    coincide when u = 0.
    """
    y, z, u = sol
    if red.discriminant_form(y, z) != u * u:
        raise DegenerateError('{} does not satisfy the discriminant equation '
                              '{} = u^2'.format(sol, red.discriminant_form))
    lines = []
    for branch in (1, -1):
        vector = red.lift(y, z, branch * u)
        try:
            direction = normalize_direction(vector)
        except ZeroVectorError:
            continue
        if direction in lines:
            continue
        if not verify_norm_preserving(A, direction):
            raise DegenerateError('lifted line {} is not norm-preserving'
                                  .format(direction))
        lines.append(direction)
    if not lines:
        raise ZeroVectorError('the solution {} lifts to the zero vector'
                              .format(sol))
    return lines
