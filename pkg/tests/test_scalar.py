# -*- coding: utf-8 -*-

from fractions import Fraction
import unittest

from mpmath import mp
import pytest

from pydiffsys.exceptions import ConfigError
from pydiffsys.scalar import (ExactComplex, I, exact, is_exact, is_zero, magnitude, rationalize,
                              to_big, to_fraction, working_precision)


class TestExactComplex(unittest.TestCase):

    def test_arithmetic(self):
        a = ExactComplex(1, 2)
        b = ExactComplex(Fraction(1, 2), -1)
        self.assertEqual(a + b, ExactComplex(Fraction(3, 2), 1))
        self.assertEqual(a - b, ExactComplex(Fraction(1, 2), 3))
        self.assertEqual(a * b, ExactComplex(Fraction(5, 2), 0))
        self.assertEqual((a * b) / b, a)
        self.assertEqual(I ** 2, -1)
        self.assertEqual(I ** -1, -I)
        self.assertEqual(2 - I, ExactComplex(2, -1))
        self.assertEqual(1 / I, -I)

    def test_reduced_fractions(self):
        a = ExactComplex('6/4', '-2/8')
        self.assertEqual(a.re, Fraction(3, 2))
        self.assertEqual(a.im, Fraction(-1, 4))
        self.assertEqual(str(a), '3/2-1/4i')
        self.assertEqual(str(ExactComplex(0, 3)), '3i')
        self.assertEqual(str(ExactComplex(5)), '5')

    def test_equality_with_rationals(self):
        self.assertEqual(ExactComplex(3), 3)
        self.assertEqual(ExactComplex(Fraction(1, 3)), Fraction(1, 3))
        self.assertNotEqual(ExactComplex(1, 1), 1)
        self.assertEqual(hash(ExactComplex(7)), hash(Fraction(7)))

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            ExactComplex(1).re = 2

    def test_division_by_zero(self):
        with self.assertRaises(ZeroDivisionError):
            ExactComplex(1) / ExactComplex(0)
        with self.assertRaises(ZeroDivisionError):
            ExactComplex(1) / 0

    def test_json(self):
        self.assertEqual(ExactComplex('1/3', 2).to_json(), {'re': '1/3', 'im': '2'})
        self.assertEqual(ExactComplex.from_json({'im': '-1/2'}), ExactComplex(0, Fraction(-1, 2)))
        self.assertEqual(ExactComplex.from_json('7/2'), ExactComplex(Fraction(7, 2)))


def test_promotion():
    with working_precision(128):
        z = to_big(ExactComplex(Fraction(1, 3), -2))
        assert isinstance(z, mp.mpc)
        assert abs(z - mp.mpc(mp.mpf(1) / 3, -2)) < mp.mpf(2) ** -120
        assert to_big(Fraction(1, 4)) == mp.mpc(0.25)
        assert to_big(3) == mp.mpc(3)


def test_mixed_arithmetic_promotes():
    value = mp.mpc(1, 1) * ExactComplex(2, 0)
    assert isinstance(value, mp.mpc)
    assert value == mp.mpc(2, 2)


def test_predicates():
    assert is_exact(ExactComplex(1))
    assert is_exact(Fraction(1, 2))
    assert not is_exact(mp.mpc(1))
    assert is_zero(ExactComplex(0))
    assert not is_zero(ExactComplex(0, 1))
    assert is_zero(mp.mpc(1e-20), tol=1e-15)
    assert exact(3) == ExactComplex(3)
    assert magnitude(ExactComplex(3, 4)) == 5


def test_rationalize():
    with working_precision(128):
        z = mp.mpc(mp.mpf(1) / 3, -mp.mpf(5) / 7)
        assert rationalize(z) == ExactComplex(Fraction(1, 3), Fraction(-5, 7))
        assert to_fraction(mp.mpf(0.375)) == Fraction(3, 8)


def test_working_precision_restores():
    before = mp.prec
    with working_precision(256):
        assert mp.prec == 256
    assert mp.prec == before


def test_working_precision_minimum():
    with pytest.raises(ConfigError):
        with working_precision(32):
            pass
