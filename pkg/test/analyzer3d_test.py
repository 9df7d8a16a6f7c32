"""Test analyzer3d.py
"""
import random
import unittest
from fractions import Fraction

import sympy

from core import DegenerateError, matrix, normalize_direction, verify_norm_preserving
from analyzer3d import (EXAMPLE_FAMILY, EXAMPLE_NO_LINES, EXAMPLE_PLANE,
                        EXAMPLE_SEEDED, ConeKind, classify_cone, cone_form,
                        default_pivot, example3_family, example3_family_image,
                        existence3, integer_line_search3, pivot_reduce,
                        plane_integer_basis, resubstitute)


def dirs(*vectors):
    return [normalize_direction(v) for v in vectors]


def sym(q):
    q = Fraction(q)
    return sympy.Rational(q.numerator, q.denominator)


def symbolic_residual(A, pivot):
    """Cone polynomial at pivot = L + r/denominator, reduced modulo r^2 = disc"""
    red = pivot_reduce(A, pivot)
    S = cone_form(A).matrix
    s, t, r = sympy.symbols('s t r')
    i, l = red.others
    v = [None] * 3
    v[pivot] = sym(red.linear[0]) * s + sym(red.linear[1]) * t + r / sym(red.denominator)
    v[i], v[l] = s, t
    cone = sum(sym(S[a, b]) * v[a] * v[b] for a in range(3) for b in range(3))
    p, q, w = (sym(c) for c in red.discriminant_form.coefficients)
    disc = p * s ** 2 + q * s * t + w * t ** 2
    return sympy.expand(sympy.rem(sympy.expand(cone), r ** 2 - disc, r))


PLANE_PAIR = matrix([[1, 0, 0], [0, 2, 0], [0, 0, Fraction(1, 2)]])
NO_SQUARES = matrix([[1, 1, 0], [0, 0, 0], [0, 0, 1]])


def signed_permutation(rng):
    order = list(range(3))
    rng.shuffle(order)
    return matrix([[rng.choice((-1, 1)) if j == order[i] else 0 for j in range(3)]
                   for i in range(3)])


def pythagorean_rotation(rng):
    a, b, c = rng.choice(((3, 4, 5), (5, 12, 13), (8, 15, 17)))
    cos, sin = Fraction(a, c), Fraction(b, c)
    rows = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    i, j = rng.sample(range(3), 2)
    rows[i][i], rows[i][j], rows[j][i], rows[j][j] = cos, -sin, sin, cos
    return matrix(rows)


class ClassificationTest(unittest.TestCase):

    def testExampleNoLines(self):
        self.assertTrue(existence3(EXAMPLE_NO_LINES))
        c = classify_cone(EXAMPLE_NO_LINES)
        self.assertEqual((c.kind, c.rank), (ConeKind.IRREDUCIBLE_CONE, 3))

    def testDoublePlane(self):
        c = classify_cone(EXAMPLE_PLANE)
        self.assertEqual(c.kind, ConeKind.DOUBLE_PLANE)
        self.assertEqual(c.normal, normalize_direction((1, 1, 1)))
        self.assertEqual(list(plane_integer_basis(c)), dirs((1, 0, -1), (0, 1, -1)))

    def testPlanePair(self):
        c = classify_cone(PLANE_PAIR)
        self.assertEqual(c.kind, ConeKind.PLANE_PAIR)
        self.assertEqual(list(c.normals), dirs((0, 2, -1), (0, 2, 1)))
        self.assertEqual(c.line, normalize_direction((1, 0, 0)))
        with self.assertRaises(DegenerateError):
            plane_integer_basis(c)

    def testIrrationalPlanePair(self):
        c = classify_cone(matrix([[1, 0, 0], [0, 2, 0], [0, 0, 0]]))
        self.assertEqual(c.kind, ConeKind.IRRATIONAL_PLANE_PAIR)
        self.assertEqual(c.line, normalize_direction((1, 0, 0)))

    def testAllSpaceIffOrthogonal(self):
        rng = random.Random(12)
        identity = matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        orthogonal = 0
        for _ in range(300):
            A = signed_permutation(rng) @ pythagorean_rotation(rng)
            if rng.random() < 0.5:
                i, j = rng.randrange(3), rng.randrange(3)
                rows = [list(row) for row in A.rows]
                rows[i][j] += Fraction(rng.choice((-1, 1)), rng.randint(1, 4))
                A = matrix(rows)
            is_all = classify_cone(A).kind is ConeKind.ALL_SPACE
            self.assertEqual(is_all, A.transpose() @ A == identity, str(A))
            orthogonal += is_all
        self.assertGreater(orthogonal, 0)

    def testSingleLineEmptyAllSpace(self):
        c = classify_cone(matrix([[1, 0, 0], [0, 2, 0], [0, 0, 2]]))
        self.assertEqual((c.kind, c.line), (ConeKind.SINGLE_LINE,
                                            normalize_direction((1, 0, 0))))
        two = matrix([[2, 0, 0], [0, 2, 0], [0, 0, 2]])
        self.assertFalse(existence3(two))
        self.assertEqual(classify_cone(two).kind, ConeKind.EMPTY)
        identity = matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        self.assertEqual(classify_cone(identity).kind, ConeKind.ALL_SPACE)


class PivotReductionTest(unittest.TestCase):

    def testExampleNoLinesPivotZ(self):
        self.assertEqual(default_pivot(EXAMPLE_NO_LINES), 2)
        red = pivot_reduce(EXAMPLE_NO_LINES, 2)
        self.assertEqual(red.discriminant_form.coefficients, (39, 48, 39))
        self.assertEqual(red.multiplier, 4)
        self.assertEqual(red.denominator, 5)
        self.assertEqual(red.linear, (Fraction(-8, 5), Fraction(-8, 5)))

    def testExampleFamilyPivotX(self):
        self.assertEqual(default_pivot(EXAMPLE_FAMILY), 0)
        red = pivot_reduce(EXAMPLE_FAMILY, 0)
        self.assertEqual(red.discriminant_form.coefficients, (0, -20, -14))
        self.assertEqual(red.denominator, 5)

    def testExampleSeededPivotX(self):
        self.assertEqual(default_pivot(EXAMPLE_SEEDED), 0)
        red = pivot_reduce(EXAMPLE_SEEDED, 0)
        self.assertEqual(red.discriminant_form.coefficients, (36, 52, 39))
        self.assertEqual(red.denominator, 13)
        self.assertEqual(red.linear, (Fraction(-20, 13), Fraction(-2)))
        self.assertEqual(str(red),
                         'x = -20/13*y - 2*z +- sqrt(36*y^2 + 52*yz + 39*z^2)/13')

    def testZeroPivot(self):
        with self.assertRaises(DegenerateError):
            pivot_reduce(NO_SQUARES, 0)
        self.assertIsNone(default_pivot(NO_SQUARES))

    def testResubstitutionSymbolic(self):
        for A in (EXAMPLE_NO_LINES, EXAMPLE_FAMILY, EXAMPLE_SEEDED, PLANE_PAIR):
            S = cone_form(A).matrix
            for pivot in range(3):
                if S[pivot, pivot] != 0:
                    self.assertEqual(symbolic_residual(A, pivot), 0)

    def testResubstitutionNumeric(self):
        rng = random.Random(5)
        for _ in range(100):
            A = matrix([[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                         for _ in range(3)] for _ in range(3)])
            S = cone_form(A).matrix
            for pivot in range(3):
                if S[pivot, pivot] == 0:
                    continue
                red = pivot_reduce(A, pivot)
                self.assertTrue(red.discriminant_form.is_integral())
                s, t = rng.randint(-9, 9), rng.randint(-9, 9)
                self.assertEqual(resubstitute(A, red, s, t), (0, 0))


class IntegerSearchTest(unittest.TestCase):

    def testExampleNoLines(self):
        self.assertEqual(integer_line_search3(EXAMPLE_NO_LINES, 200), [])

    def testExampleFamilyKnownLines(self):
        found = integer_line_search3(EXAMPLE_FAMILY, 20)
        for d in dirs((11, -15, 10), (1, 3, -2), (1, 3, -4), (13, 15, -20),
                      (1, -1, 0)):
            self.assertIn(d, found)
        self.assertEqual(found, sorted(found, key=lambda d: d.coordinates))

    def testExampleFamilyParametrization(self):
        self.assertEqual(set(example3_family(1, 4)),
                         set(dirs((11, -15, 10), (1, 3, -2))))
        self.assertEqual(set(example3_family(1, 1)),
                         set(dirs((1, 3, -4), (13, 15, -20))))
        with self.assertRaises(DegenerateError):
            example3_family(0, 0)

    def testExampleFamilyComplete(self):
        image = example3_family_image(8, 40)
        for d in integer_line_search3(EXAMPLE_FAMILY, 50):
            self.assertIn(d, image)

    def testNoExistenceNoLines(self):
        rng = random.Random(19)
        checked = 0
        for _ in range(60):
            scale = Fraction(rng.choice((2, 3, 1)), rng.choice((1, 3)))
            A = matrix([[scale * (i == j) + Fraction(rng.randint(-1, 1), 4)
                         for j in range(3)] for i in range(3)])
            if existence3(A):
                continue
            checked += 1
            self.assertEqual(integer_line_search3(A, 6), [], str(A))
        self.assertGreater(checked, 0)

    def testZeroParameterGivesEigenline(self):
        self.assertEqual(example3_family(0, 1), (normalize_direction((1, -1, 0)),))
        self.assertEqual(example3_family(0, 7), (normalize_direction((1, -1, 0)),))

    def testDoublePlaneSearch(self):
        found = integer_line_search3(EXAMPLE_PLANE, 3)
        self.assertIn(normalize_direction((1, 0, -1)), found)
        self.assertIn(normalize_direction((0, 1, -1)), found)
        for d in found:
            self.assertEqual(sum(d), 0)

    def testPlanePairSearch(self):
        found = integer_line_search3(PLANE_PAIR, 4)
        for d in dirs((1, 0, 0), (0, 1, 2), (0, 1, -2), (1, 1, 2)):
            self.assertIn(d, found)
        for d in found:
            self.assertTrue(verify_norm_preserving(PLANE_PAIR, d))

    def testLinearFallback(self):
        found = integer_line_search3(NO_SQUARES, 3)
        for d in dirs((1, 0, 0), (0, 1, 1), (1, 0, 1), (0, 0, 1)):
            self.assertIn(d, found)
        for d in found:
            self.assertTrue(d[0] == 0 or d[1] == 0)
            self.assertTrue(verify_norm_preserving(NO_SQUARES, d))

    def testRandomSearchOracle(self):
        rng = random.Random(11)
        for _ in range(20):
            A = matrix([[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)])
            if classify_cone(A).kind is ConeKind.ALL_SPACE:
                continue
            found = set(integer_line_search3(A, 4))
            for d in found:
                self.assertTrue(verify_norm_preserving(A, d))
            for x in range(-4, 5):
                for y in range(-4, 5):
                    for z in range(-4, 5):
                        if (x or y or z) and verify_norm_preserving(A, (x, y, z)):
                            self.assertIn(normalize_direction((x, y, z)), found)

    def testBadBound(self):
        with self.assertRaises(DegenerateError):
            integer_line_search3(EXAMPLE_FAMILY, 0)


if __name__ == '__main__':
    unittest.main()
