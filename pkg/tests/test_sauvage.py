# -*- coding: utf-8 -*-

import unittest

import numpy as np

from pydiffsys.exceptions import NotUnitOffOrigin
from pydiffsys.gauge.sauvage import is_unit, sauvage_factorize
from pydiffsys.laurent import LaurentPoly, MatrixLaurentPoly, poly_det

z = LaurentPoly.z()


class TestSauvageFactorization(unittest.TestCase):

    def test_already_reduced(self):
        x = MatrixLaurentPoly([[z, z ** -2], [0, z ** -1]])
        f = sauvage_factorize(x)
        self.assertEqual(f.k, [1, -1])
        self.assertEqual(f.m, 0)
        self.assertEqual(f.u, MatrixLaurentPoly.identity(2))
        self.assertEqual(f.w, MatrixLaurentPoly([[1, z ** -3], [0, 1]]))
        self.assertTrue(f.is_exact_reconstruction())

    def test_one_row_step(self):
        f = sauvage_factorize(MatrixLaurentPoly([[1, z], [0, 1]]))
        self.assertEqual(f.k, [0, 0])
        self.assertEqual(f.u, MatrixLaurentPoly([[1, -z], [0, 1]]))
        self.assertEqual(f.w, MatrixLaurentPoly.identity(2))
        self.assertTrue(is_unit(f.u))

    def test_monomial_determinant(self):
        x = MatrixLaurentPoly([[z ** 2, 0], [1, z]])
        f = sauvage_factorize(x)
        self.assertEqual(f.m, 3)
        self.assertEqual(sorted(f.k, reverse=True), f.k)
        self.assertTrue(f.is_exact_reconstruction())
        self.assertEqual(f.to_json()['k'], f.k)

    def test_not_unit_off_origin(self):
        with self.assertRaises(NotUnitOffOrigin):
            sauvage_factorize(MatrixLaurentPoly([[z + 1]]))
        with self.assertRaises(NotUnitOffOrigin):
            sauvage_factorize(MatrixLaurentPoly([[z, z], [1, 1]]))


def test_is_unit():
    assert is_unit(MatrixLaurentPoly([[1, z], [0, 1]]))
    assert not is_unit(MatrixLaurentPoly.diag([z, 1]))


def test_factorization_benchmark(benchmark):
    x = (MatrixLaurentPoly([[1, z], [0, 1]]) * MatrixLaurentPoly([[1, 0], [z ** 2, 1]])
         * MatrixLaurentPoly.diag([z, z ** -1]))
    f = benchmark(sauvage_factorize, x)
    assert f.m == 0
    assert f.is_exact_reconstruction()


def random_unit_off_origin(rng, n):
    """Product of elementary Laurent row operations and a diagonal of monomials."""
    x = MatrixLaurentPoly.diag([LaurentPoly.monomial(int(rng.choice([1, -1, 2])),
                                                     int(rng.randint(-2, 3)))
                                for _ in range(n)])
    for _ in range(int(rng.randint(1, 4))):
        i, j = rng.choice(n, 2, replace=False)
        entries = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        entries[int(i)][int(j)] = LaurentPoly.monomial(int(rng.randint(-3, 4)),
                                                       int(rng.randint(-2, 3)))
        x = MatrixLaurentPoly(entries) * x
    return x


def test_random_round_trips():
    rng = np.random.RandomState(3)
    for _ in range(100):
        x = random_unit_off_origin(rng, int(rng.randint(2, 4)))
        f = sauvage_factorize(x)
        assert f.is_exact_reconstruction()
        assert f.u.is_polynomial()
        assert is_unit(f.u)
        assert f.w.high <= 0
        assert is_unit(f.w)
        assert f.k == sorted(f.k, reverse=True)
        assert f.m == poly_det(x).low
