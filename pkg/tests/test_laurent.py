# -*- coding: utf-8 -*-

from fractions import Fraction
import unittest

from mpmath import mp
import numpy as np
import sympy
import pytest

from pydiffsys.exceptions import SingularGauge
from pydiffsys.laurent import (LaurentPoly, MatrixLaurentPoly, RationalMatrix, Z, exact_from_sympy,
                               exact_kernel_vector, exact_to_sympy, expansion_at_infinity,
                               kernel_basis, laurent_from_sympy, laurent_to_sympy, matinv,
                               null_vectors, poly_det, solve)
from pydiffsys.scalar import ExactComplex, I

z = LaurentPoly.z()


def sample_matrix():
    return MatrixLaurentPoly([[z + 2, 1], [1, I * z + 3 * I]])


class TestLaurentPoly(unittest.TestCase):

    def test_structure(self):
        p = LaurentPoly({-2: 1, 0: 3, 4: 0})
        self.assertEqual(p.low, -2)
        self.assertEqual(p.high, 0)
        self.assertFalse(p.is_polynomial())
        self.assertEqual(p.coefficient(4), 0)
        self.assertTrue(LaurentPoly().is_zero())
        self.assertTrue(LaurentPoly.monomial(5, -3).is_monomial())

    def test_arithmetic(self):
        p = (z + 1) * (z - 1)
        self.assertEqual(p, z ** 2 - 1)
        self.assertEqual(z ** -2 * z ** 3, z)
        self.assertEqual(LaurentPoly.from_roots([1, 2]), z ** 2 - 3 * z + 2)
        self.assertEqual(p.derivative(), 2 * z)

    def test_negative_power_needs_monomial(self):
        with self.assertRaises(ValueError):
            (z + 1) ** -1

    def test_substitutions(self):
        p = z ** 2 + 1
        self.assertEqual(p.substitute_shift(1), z ** 2 + 2 * z + 2)
        self.assertEqual(p.substitute_scale(3), 9 * z ** 2 + 1)
        with self.assertRaises(ValueError):
            (z ** -1).substitute_shift(1)

    def test_evaluate_exact(self):
        p = z ** 2 + I
        self.assertEqual(p(ExactComplex(1, 1)), ExactComplex(0, 3))
        self.assertEqual(LaurentPoly({-1: 2})(Fraction(1, 2)), 4)

    def test_divmod(self):
        quotient, remainder = (z ** 3 - 1).divmod(z - 1)
        self.assertEqual(quotient, z ** 2 + z + 1)
        self.assertTrue(remainder.is_zero())
        quotient, remainder = (z ** 2 + 1).divmod(z - 1)
        self.assertEqual(quotient, z + 1)
        self.assertEqual(remainder, LaurentPoly.constant(2))

    def test_exact_quotient_in_laurent_ring(self):
        p = z ** -1 * (z - 2) * (z + 3)
        self.assertEqual(p.exact_quotient(z - 2), z ** -1 * (z + 3))
        self.assertIsNone((z + 1).exact_quotient(z - 1))

    def test_exponent_range(self):
        with self.assertRaises(OverflowError):
            LaurentPoly({2 ** 40: 1})


class TestMatrixLaurentPoly(unittest.TestCase):

    def test_determinant(self):
        det = poly_det(sample_matrix())
        self.assertEqual(det, I * z ** 2 + 5 * I * z + (6 * I - 1))

    def test_unimodular_inverse_is_laurent(self):
        m = MatrixLaurentPoly([[1, z], [0, 1]]) * MatrixLaurentPoly.diag([z ** 2, z ** -1])
        inverse = m.inverse()
        self.assertIsInstance(inverse, MatrixLaurentPoly)
        self.assertEqual(m * inverse, MatrixLaurentPoly.identity(2))

    def test_general_inverse_is_rational(self):
        m = sample_matrix()
        inverse = m.inverse()
        self.assertIsInstance(inverse, RationalMatrix)
        product = (RationalMatrix(m) * inverse).simplify()
        self.assertEqual(product, MatrixLaurentPoly.identity(2))

    def test_singular(self):
        m = MatrixLaurentPoly([[z, z], [1, 1]])
        with self.assertRaises(SingularGauge):
            m.inverse()

    def test_z_power(self):
        self.assertEqual(MatrixLaurentPoly.z_power([1, -1]),
                         MatrixLaurentPoly([[z, 0], [0, z ** -1]]))
        self.assertEqual(MatrixLaurentPoly.z_power([2, 0], center=1),
                         MatrixLaurentPoly([[(z - 1) ** 2, 0], [0, 1]]))
        with self.assertRaises(ValueError):
            MatrixLaurentPoly.z_power([-1], center=1)

    def test_coefficients(self):
        m = sample_matrix()
        self.assertEqual(m.high, 1)
        self.assertEqual(m.low, 0)
        self.assertEqual(m.coefficient(1), [[1, 0], [0, I]])
        rebuilt = MatrixLaurentPoly.from_coefficients({0: m.coefficient(0), 1: m.coefficient(1)})
        self.assertEqual(rebuilt, m)

    def test_permutation(self):
        p = MatrixLaurentPoly.permutation([1, 0])
        self.assertEqual(p * sample_matrix() * p.transpose(),
                         MatrixLaurentPoly([[I * z + 3 * I, 1], [1, z + 2]]))


class TestRationalMatrix(unittest.TestCase):

    def test_simplify_divisible(self):
        m = RationalMatrix(MatrixLaurentPoly([[z ** 2 - 1, 0], [0, z + 1]]), z + 1)
        self.assertEqual(m.simplify(), MatrixLaurentPoly([[z - 1, 0], [0, 1]]))

    def test_simplify_keeps_poles(self):
        m = RationalMatrix(MatrixLaurentPoly([[z, 0], [0, 1]]), z - 2)
        self.assertIs(m.simplify(), m)
        self.assertEqual(m.high, 0)

    def test_evaluate(self):
        m = RationalMatrix(MatrixLaurentPoly([[z + 1]]), z - 1)
        self.assertEqual(m.evaluate(3), [[2]])

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            RationalMatrix(MatrixLaurentPoly.identity(2), LaurentPoly())


def test_expansion_at_infinity():
    # (z + 1) / (z - 1) = 1 + 2/z + 2/z**2 + ...
    m = RationalMatrix(MatrixLaurentPoly([[z + 1]]), z - 1)
    coefficients = expansion_at_infinity(m, 3)
    assert [c[0][0] for c in coefficients] == [1, 2, 2, 2]


def test_expansion_with_explicit_top():
    m = MatrixLaurentPoly([[z ** 2 + 3, z], [0, 1]])
    coefficients = expansion_at_infinity(m, 2, top=2)
    assert coefficients[0] == [[1, 0], [0, 0]]
    assert coefficients[1] == [[0, 1], [0, 0]]
    assert coefficients[2] == [[3, 0], [0, 1]]


def test_scalar_linear_algebra():
    a = [[ExactComplex(2), ExactComplex(1)], [ExactComplex(4), ExactComplex(3)]]
    assert solve(a, [ExactComplex(3), ExactComplex(7)]) == [1, 1]
    inverse = matinv(a)
    assert inverse == [[Fraction(3, 2), Fraction(-1, 2)], [-2, 1]]
    singular = [[ExactComplex(1), ExactComplex(2)], [ExactComplex(2), ExactComplex(4)]]
    assert kernel_basis(singular) == [[1, Fraction(-1, 2)]]
    left = null_vectors(singular, 'left')
    assert len(left) == 1
    assert left[0].vector == [1, Fraction(-1, 2)]
    assert left[0].support == [0, 1]
    with pytest.raises(ZeroDivisionError):
        matinv(singular)


def test_exact_kernel_vector():
    equal_rows = exact_kernel_vector([[1, 1], [1, 1]])
    assert equal_rows.vector == [1, -1]
    assert equal_rows.support == [0, 1]
    zero_row = exact_kernel_vector([[0, 0], [0, 1]])
    assert zero_row.vector == [1, 0]
    assert zero_row.support == [0]
    assert exact_kernel_vector([[1, 2], [3, 4]]) is None


def test_numeric_kernel():
    with mp.workprec(128):
        a = [[mp.mpc(1), mp.mpc(2)], [mp.mpc(2), mp.mpc(4) + mp.mpf(10) ** -30]]
        basis = kernel_basis(a, tol=mp.mpf(10) ** -20)
        assert len(basis) == 1
        assert abs(basis[0][1] + 0.5) < 1e-20


def test_determinant_benchmark(benchmark):
    m = MatrixLaurentPoly([[z + k if j == (k % 4) else j + 1 for j in range(4)]
                           for k in range(4)])
    det = benchmark(poly_det, m)
    assert det.high == 4


def test_sympy_bridge():
    value = ExactComplex(Fraction(1, 3), -2)
    assert exact_from_sympy(exact_to_sympy(value)) == value
    quotient = (1 + 2 * sympy.I) / (3 - sympy.I)
    assert exact_from_sympy(quotient) == ExactComplex(Fraction(1, 10), Fraction(7, 10))
    p = z ** 3 - I * z + Fraction(1, 2)
    assert laurent_from_sympy(laurent_to_sympy(p)) == p
    assert laurent_from_sympy(Z ** 2 + 1, -2) == 1 + z ** -2


class TestExactThreeByThree(unittest.TestCase):

    def matrix(self):
        return MatrixLaurentPoly([[z, 1, 0], [I, z ** -1, 2], [0, 3, z + 1]])

    def test_determinant_with_negative_powers(self):
        # z (z**-1 (z + 1) - 6) - (I (z + 1))
        expected = z * (z ** -1 * (z + 1) - 6) - I * (z + 1)
        self.assertEqual(poly_det(self.matrix()), expected)

    def test_adjugate(self):
        m = self.matrix()
        product = m * m.adjugate()
        det = poly_det(m)
        self.assertEqual(product, MatrixLaurentPoly.diag([det, det, det]))

    def test_scalar_determinant(self):
        rows = [[ExactComplex(1), 2, 0], [0, I, 1], [3, 0, 1]]
        # 1 (I - 0) - 2 (0 - 3) + 0
        self.assertEqual(poly_det(MatrixLaurentPoly(rows)), LaurentPoly.constant(I + 6))


def random_gaussian(rng, bound=4):
    return ExactComplex(int(rng.randint(-bound, bound + 1)), int(rng.randint(-bound, bound + 1)))


def random_laurent(rng, low=-2, high=2):
    return LaurentPoly({k: random_gaussian(rng) for k in range(low, high + 1)
                        if rng.uniform() < 0.6})


def test_ring_axioms_on_random_polynomials():
    rng = np.random.RandomState(11)
    for _ in range(40):
        a, b, c = random_laurent(rng), random_laurent(rng), random_laurent(rng)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()
        assert a * 1 == a


def test_determinant_is_multiplicative():
    rng = np.random.RandomState(12)
    for _ in range(15):
        n = int(rng.randint(2, 4))
        a = MatrixLaurentPoly([[random_laurent(rng, -1, 1) for _ in range(n)] for _ in range(n)])
        b = MatrixLaurentPoly([[random_laurent(rng, 0, 1) for _ in range(n)] for _ in range(n)])
        assert poly_det(a * b) == poly_det(a) * poly_det(b)
