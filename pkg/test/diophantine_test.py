"""Test diophantine.py
"""
import random
import unittest

import sympy

from core import DegenerateError, normalize_direction, verify_norm_preserving
from analyzer3d import EXAMPLE_FAMILY, EXAMPLE_SEEDED, pivot_reduce
from diophantine import (IntBinaryForm, SquareRepInstance, integer_sqrt,
                         lift_to_lines, odd_argument_obstruction, piezas_family,
                         square_rep_bruteforce, two_adic_obstruction)


class SquaresTest(unittest.TestCase):

    def testIntegerSqrt(self):
        self.assertEqual(integer_sqrt(0), 0)
        self.assertEqual(integer_sqrt(16), 4)
        self.assertIsNone(integer_sqrt(15))
        big = 10 ** 40 + 7
        self.assertEqual(integer_sqrt(big * big), big)
        self.assertIsNone(integer_sqrt(big * big + 1))
        with self.assertRaises(ValueError):
            integer_sqrt(-4)

    def testIntegerSqrtRandom(self):
        rng = random.Random(40)
        for _ in range(500):
            k = rng.randint(0, 10 ** 20)
            self.assertEqual(integer_sqrt(k * k), k)
            if k:
                self.assertIsNone(integer_sqrt(k * k + 1))
            n = rng.randint(0, 10 ** 40)
            r = integer_sqrt(n)
            if r is not None:
                self.assertEqual(r * r, n)

    def testBruteforceSignClosure(self):
        rng = random.Random(41)
        for _ in range(20):
            form = IntBinaryForm(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
            found = square_rep_bruteforce(SquareRepInstance(form), 8)
            for y, z, u in found:
                self.assertIn((-y, -z, u), found)

    def testBruteforceOrder(self):
        found = square_rep_bruteforce(SquareRepInstance(IntBinaryForm(1, 0, 1)), 5)
        self.assertIn((3, 4, 5), found)
        self.assertIn((0, 1, 1), found)
        self.assertNotIn((0, 0, 0), found)
        self.assertEqual(found, sorted(found))
        for y, z, u in found:
            self.assertGreaterEqual(u, 0)
            self.assertEqual(y * y + z * z, u * u)

    def testBruteforceWithMultiplier(self):
        inst = SquareRepInstance(IntBinaryForm(1, 0, 1), 2)
        found = square_rep_bruteforce(inst, 3)
        self.assertIn((1, 1, 1), found)
        for y, z, u in found:
            self.assertTrue(inst.holds(y, z, u))
        with self.assertRaises(DegenerateError):
            SquareRepInstance(IntBinaryForm(1, 0, 1), 0)


class ObstructionsTest(unittest.TestCase):

    def testTwoAdicExample(self):
        form = IntBinaryForm(39, 48, 39)
        self.assertTrue(two_adic_obstruction(form))
        self.assertEqual(square_rep_bruteforce(SquareRepInstance(form), 500), [])

    def testTwoAdicCertificatesHold(self):
        rng = random.Random(3)
        for _ in range(30):
            form = IntBinaryForm(4 * rng.randint(-5, 5) + 3, 4 * rng.randint(-5, 5),
                                 4 * rng.randint(-5, 5) + 3)
            self.assertTrue(two_adic_obstruction(form))
            self.assertEqual(square_rep_bruteforce(SquareRepInstance(form), 25), [])

    def testTwoAdicInconclusive(self):
        self.assertFalse(two_adic_obstruction(IntBinaryForm(1, 0, 1)))
        self.assertFalse(two_adic_obstruction(IntBinaryForm(36, 52, 39)))

    def testOddArgument(self):
        form = IntBinaryForm(0, -20, -14)
        self.assertTrue(odd_argument_obstruction(form))
        found = square_rep_bruteforce(SquareRepInstance(form), 30)
        self.assertTrue(found)
        for _, z, _ in found:
            self.assertEqual(z % 2, 0)
        self.assertFalse(odd_argument_obstruction(IntBinaryForm(39, 48, 39)))


class PiezasTest(unittest.TestCase):

    def setUp(self):
        self.inst = SquareRepInstance(IntBinaryForm(36, 52, 39))
        self.family = piezas_family(self.inst, (1, 0, 6))

    def testValues(self):
        self.assertEqual(self.family(1, 1), (-3, 124, 762))
        self.assertEqual(self.family(1, 2), (-120, 352, 1776))

    def testIdentityRandom(self):
        rng = random.Random(44)
        for _ in range(100):
            s, t = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
            self.assertTrue(self.inst.holds(*self.family(s, t)))

    def testNonzeroSecondSeedCoordinate(self):
        inst = SquareRepInstance(IntBinaryForm(1, 0, 1))
        family = piezas_family(inst, (3, 4, 5))
        for s in range(-4, 5):
            for t in range(-4, 5):
                self.assertTrue(inst.holds(*family(s, t)))

    def testIdentitySymbolic(self):
        a, b, c, d, m, n, p, s, t = sympy.symbols('a b c d m n p s t')
        y = (a * m + b * n) * s ** 2 + 2 * c * n * s * t - c * m * t ** 2
        z = -a * n * s ** 2 + 2 * a * m * s * t + (b * m + c * n) * t ** 2
        u = p * (a * s ** 2 + b * s * t + c * t ** 2)
        lhs = a * y ** 2 + b * y * z + c * z ** 2 - d * u ** 2
        seed_gap = a * m ** 2 + b * m * n + c * n ** 2 - d * p ** 2
        rhs = seed_gap * (a * s ** 2 + b * s * t + c * t ** 2) ** 2
        self.assertEqual(sympy.expand(lhs - rhs), 0)

    def testPolynomialsAgree(self):
        coeffs = self.family.polynomials()
        for s, t in [(1, 1), (1, 2), (-3, 5)]:
            monomials = (s * s, s * t, t * t)
            values = tuple(sum(c * x for c, x in zip(row, monomials)) for row in coeffs)
            self.assertEqual(values, self.family(s, t))

    def testBadSeeds(self):
        with self.assertRaises(DegenerateError):
            piezas_family(self.inst, (1, 1, 1))
        with self.assertRaises(DegenerateError):
            piezas_family(self.inst, (0, 0, 0))


class LiftTest(unittest.TestCase):

    def setUp(self):
        self.red = pivot_reduce(EXAMPLE_SEEDED, 0)

    def testLiftedLines(self):
        lines = lift_to_lines(EXAMPLE_SEEDED, self.red, (-3, 124, 762))
        self.assertEqual(lines, [normalize_direction((-2402, -39, 1612)),
                                 normalize_direction((-302, -3, 124))])
        lines = lift_to_lines(EXAMPLE_SEEDED, self.red, (-120, 352, 1776))
        self.assertEqual(lines, [normalize_direction((-4976, -1560, 4576)),
                                 normalize_direction((-656, -120, 352))])
        for d in lines:
            self.assertTrue(verify_norm_preserving(EXAMPLE_SEEDED, d))

    def testZeroSecondCoordinateGivesEigenline(self):
        red = pivot_reduce(EXAMPLE_FAMILY, 0)
        for y in (1, 2, -5):
            self.assertEqual(lift_to_lines(EXAMPLE_FAMILY, red, (y, 0, 0)),
                             [normalize_direction((1, -1, 0))])

    def testLiftRejectsNonSolutions(self):
        with self.assertRaises(DegenerateError):
            lift_to_lines(EXAMPLE_SEEDED, self.red, (1, 1, 1))


if __name__ == '__main__':
    unittest.main()
