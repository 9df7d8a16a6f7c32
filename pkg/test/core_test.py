"""Test core.py
"""
import random
import unittest
from fractions import Fraction

from core import (BinaryForm, DegenerateError, DimensionError, PrimitiveDirection,
                  RatMatrix, TernaryForm, ZeroVectorError, evaluate_form, gram2,
                  gram3, is_negative_definite, is_parallel, is_positive_definite,
                  is_positive_semidefinite, matrix, normalize_direction,
                  rational, rational_sqrt, verify_norm_preserving)


class RationalTest(unittest.TestCase):

    def testRefusesFloats(self):
        with self.assertRaises(TypeError):
            rational(0.5)
        with self.assertRaises(TypeError):
            rational(True)
        self.assertEqual(rational('3/5'), Fraction(3, 5))

    def testRationalSqrt(self):
        self.assertEqual(rational_sqrt(Fraction(9, 16)), Fraction(3, 4))
        self.assertIsNone(rational_sqrt(2))
        self.assertIsNone(rational_sqrt(-1))
        self.assertEqual(rational_sqrt(0), 0)


class MatrixTest(unittest.TestCase):

    def testDetAndRank(self):
        A = matrix([[4, 3], [-2, -3]])
        self.assertEqual(A.det(), -6)
        self.assertEqual(matrix([[1, 2, 2], [2, 1, 2], [2, 2, 1]]).det(), 5)
        S = matrix([[8, 8, 8], [8, 8, 8], [8, 8, 8]])
        self.assertEqual(S.rank(), 1)
        self.assertEqual(len(S.kernel()), 2)
        for k in S.kernel():
            self.assertEqual(S.apply(k), (0, 0, 0))

    def testSizeChecks(self):
        with self.assertRaises(DimensionError):
            matrix([[1, 2], [3]])
        with self.assertRaises(DimensionError):
            matrix([[1, 0], [0, 1]]).apply((1, 2, 3))
        with self.assertRaises(DimensionError):
            RatMatrix.from_entries([1, 2, 3])

    def testTransposeProduct(self):
        A = matrix([[1, 2, 3], [2, 1, 1], [1, 1, 1]])
        B = gram3(A).matrix
        self.assertTrue(B.is_symmetric())
        self.assertEqual(B, A.transpose() @ A)
        self.assertEqual(B[0, 0], 6)


class FormsTest(unittest.TestCase):

    def testGram2(self):
        g = gram2(matrix([[4, 3], [-2, -3]]))
        self.assertEqual((g.m, g.n, g.p), (20, 18, 18))
        self.assertEqual(g.phi(), BinaryForm(19, 36, 17))

    def testLinearFactors(self):
        # 19x^2 + 36xy + 17y^2 = (x + y)(19x + 17y)
        l1, l2 = BinaryForm(19, 36, 17).linear_factors()
        for x, y in [(1, -1), (17, -19)]:
            self.assertEqual(min(abs(l1[0] * x + l1[1] * y),
                                 abs(l2[0] * x + l2[1] * y)), 0)
        self.assertIsNone(BinaryForm(1, 0, -2).linear_factors())

    def testTernaryEvaluation(self):
        F = TernaryForm(matrix([[1, 0, 0], [0, 2, 0], [0, 0, 3]]))
        self.assertEqual(evaluate_form(F, (1, 1, 1)), 6)
        self.assertEqual(str(F), 'x^2 + 2*y^2 + 3*z^2')
        with self.assertRaises(DimensionError):
            evaluate_form(F, (1, 1))
        with self.assertRaises(DegenerateError):
            TernaryForm(matrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))

    def testGramDeterminant(self):
        rng = random.Random(17)
        for _ in range(300):
            A = matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(2)]
                        for _ in range(2)])
            self.assertEqual(gram2(A).det, A.det() ** 2)

    def testFormsAreQuadratic(self):
        rng = random.Random(23)
        for _ in range(200):
            lam = Fraction(rng.randint(-20, 20), rng.randint(1, 7))
            F2 = BinaryForm(*[Fraction(rng.randint(-9, 9), rng.randint(1, 4))
                              for _ in range(3)])
            v2 = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(2)]
            self.assertEqual(evaluate_form(F2, [lam * x for x in v2]),
                             lam * lam * evaluate_form(F2, v2))
            A = matrix([[rng.randint(-4, 4) for _ in range(3)] for _ in range(3)])
            F3 = gram3(A)
            v3 = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(3)]
            self.assertEqual(evaluate_form(F3, [lam * x for x in v3]),
                             lam * lam * evaluate_form(F3, v3))

    def testDefiniteness(self):
        self.assertTrue(is_positive_definite(matrix([[2, 1], [1, 2]])))
        self.assertTrue(is_negative_definite(matrix([[-2, 1], [1, -2]])))
        self.assertFalse(is_positive_definite(matrix([[1, 2], [2, 1]])))
        # leading minors are (0, 0) but the form is -y^2
        self.assertFalse(is_positive_semidefinite(matrix([[0, 0], [0, -1]])))


class DirectionsTest(unittest.TestCase):

    def testNormalize(self):
        self.assertEqual(normalize_direction((-2, 4)).coordinates, (1, -2))
        self.assertEqual(normalize_direction((Fraction(-2402, 13), -3, 124)).coordinates,
                         (2402, 39, -1612))
        self.assertEqual(normalize_direction((0, -3, 6)).coordinates, (0, 1, -2))
        with self.assertRaises(ZeroVectorError):
            normalize_direction((0, 0))

    def testInvariants(self):
        with self.assertRaises(DegenerateError):
            PrimitiveDirection((2, 4))
        with self.assertRaises(DegenerateError):
            PrimitiveDirection((-1, 1))
        with self.assertRaises(DimensionError):
            PrimitiveDirection((1,))
        self.assertEqual(str(PrimitiveDirection((1, -1))), '<1, -1>')

    def testNormalizeIdempotent(self):
        rng = random.Random(7)
        for _ in range(200):
            v = [rng.randint(-50, 50) for _ in range(rng.choice((2, 3)))]
            if not any(v):
                continue
            d = normalize_direction(v)
            self.assertEqual(normalize_direction(d.coordinates), d)
            self.assertTrue(is_parallel(d.coordinates, v))

    def testNormalizeIgnoresRationalScale(self):
        rng = random.Random(31)
        for _ in range(300):
            v = [Fraction(rng.randint(-30, 30), rng.randint(1, 9))
                 for _ in range(rng.choice((2, 3)))]
            if not any(v):
                continue
            lam = Fraction(rng.choice((-1, 1)) * rng.randint(1, 50), rng.randint(1, 50))
            self.assertEqual(normalize_direction([lam * x for x in v]),
                             normalize_direction(v))

    def testVerify(self):
        A = matrix([[4, 3], [-2, -3]])
        self.assertTrue(verify_norm_preserving(A, (1, -1)))
        self.assertTrue(verify_norm_preserving(A, (17, -19)))
        self.assertFalse(verify_norm_preserving(A, (1, 0)))


if __name__ == '__main__':
    unittest.main()
