# -*- coding: utf-8 -*-

from fractions import Fraction
import unittest

from mpmath import mp
import numpy as np
import pytest

from pydiffsys.difference import (DifferenceSystem, asymptotic_contract,
                                  formal_solution_difference, gauge_covariance, genuine_solution,
                                  lambda_matrix, monodromy_difference, rationalize_difference,
                                  recurrence_residual, series_residual, verify_fuchs)
from pydiffsys.exceptions import DomainError, ParseError, ResonanceError, SingularityOnPath, ZeroDeterminant
from pydiffsys.laurent import LaurentPoly, MatrixLaurentPoly, RationalMatrix
from pydiffsys.scalar import ExactComplex, I, working_precision
from pydiffsys.utils import SystemReader

z = LaurentPoly.z()


def stirling():
    return DifferenceSystem(MatrixLaurentPoly([[z]]))


class TestDifferenceSystem(unittest.TestCase):

    def test_read(self):
        system = SystemReader().read_file('tests/difference_example.json')
        self.assertEqual(system.n, 2)
        self.assertEqual(system.r, 1)
        self.assertTrue(system.is_exact())
        self.assertTrue(system.is_polynomial())
        self.assertEqual(system.rho, [1, I])
        self.assertEqual(system.d, [2, 3])
        self.assertEqual(system.determinant()[0], I * z ** 2 + 5 * I * z + (6 * I - 1))

    def test_declared_degree_mismatch(self):
        data = {'kind': 'difference', 'n': 1, 'r': 2, 'entries': [[{'1': 1}]]}
        with self.assertRaises(ParseError):
            DifferenceSystem.from_json(data)

    def test_zero_determinant(self):
        with self.assertRaises(ZeroDeterminant):
            DifferenceSystem(MatrixLaurentPoly([[z, z], [1, 1]]))

    def test_hypotheses(self):
        flags = SystemReader().read_file('tests/difference_example.json').hypotheses()
        self.assertEqual(flags, {'leading_diagonal': True, 'rho_nonzero': True,
                                 'rho_ratios_nonreal': True})
        real_ratio = DifferenceSystem(MatrixLaurentPoly([[z, 0], [0, 2 * z + 1]]))
        self.assertFalse(real_ratio.hypotheses()['rho_ratios_nonreal'])
        with self.assertRaises(DomainError):
            real_ratio.require_hypotheses()

    def test_to_json(self):
        data = SystemReader().read_file('tests/difference_example.json').to_json()
        self.assertEqual(data['kind'], 'difference')
        self.assertEqual(data['r'], 1)
        self.assertEqual(data['coefficients']['1'][1][1], {'re': '0', 'im': '1'})


class TestFuchs(unittest.TestCase):

    def test_exact_relation(self):
        check = verify_fuchs(SystemReader().read_file('tests/difference_example.json'))
        self.assertEqual(check.d_sum, 5)
        self.assertEqual(check.root_sum, -5)
        self.assertEqual(check.residual, 0)
        self.assertEqual(str(check.residual), '0')

    def test_rational_roots_example(self):
        system = SystemReader().read_file('tests/difference_rational_roots.json')
        self.assertEqual(system.d, [0, Fraction(-1, 6)])
        self.assertEqual(verify_fuchs(system).residual, 0)

    def test_needs_polynomial(self):
        system = SystemReader().read_file('tests/difference_poles.json')
        with self.assertRaises(DomainError):
            verify_fuchs(system)


class TestRationalize(unittest.TestCase):

    def test_clears_denominator(self):
        raw = SystemReader().read_file('tests/difference_poles.json')
        self.assertFalse(raw.is_polynomial())
        rationalized = SystemReader(rationalize=True).read_file('tests/difference_poles.json')
        self.assertEqual(rationalized.matrix,
                         SystemReader().read_file('tests/difference_example.json').matrix)

    def test_gamma_gauge(self):
        result = rationalize_difference(
            RationalMatrix(MatrixLaurentPoly([[z, 1], [0, I * z]]), (z - 1) * (z + 2)))
        self.assertEqual(sorted(result.gauge.poles, key=lambda x: x.re), [-2, 1])
        with working_precision(128):
            w = mp.mpc('0.3', '0.7')
            expected = (w - 1) * (w + 2)
            self.assertLess(abs(result.gauge.shift_ratio(w) - expected), 1e-30)
        self.assertEqual(result.gauge.factor(), (z - 1) * (z + 2))


class TestFormalSolution(unittest.TestCase):

    def test_stirling_coefficients(self):
        formal = formal_solution_difference(stirling(), 3)
        self.assertEqual(formal.d, [0])
        self.assertEqual(formal.coefficients[0], [[1]])
        self.assertEqual(formal.coefficients[1], [[Fraction(1, 12)]])
        self.assertEqual(formal.coefficients[2], [[Fraction(1, 288)]])
        self.assertEqual(formal.coefficients[3], [[Fraction(-139, 51840)]])

    def test_series_residual_decays(self):
        with working_precision(128):
            system = SystemReader().read_file('tests/difference_example.json').to_big()
            formal = formal_solution_difference(system, 12)
            near = series_residual(formal, mp.mpc(20, 1))
            far = series_residual(formal, mp.mpc(80, 1))
            self.assertLess(far, near / 1000)
            self.assertLess(far, 1e-10)

    def test_resonant_rho(self):
        system = DifferenceSystem(MatrixLaurentPoly([[z, 0], [0, z + 1]]))
        with self.assertRaises((ResonanceError, DomainError)):
            formal_solution_difference(system, 2)


def test_right_solution_is_gamma():
    with working_precision(128):
        targets = [mp.mpc('1.5', '0.5'), mp.mpc('-2.25', '1')]
        sample = genuine_solution(stirling(), 'right', targets, precision=128, order=30)
        for w, value in zip(targets, sample.values):
            expected = mp.gamma(w) / mp.sqrt(2 * mp.pi)
            assert abs(value[0, 0] - expected) < 1e-15 * abs(expected)


def test_left_solution_satisfies_recurrence():
    with working_precision(128):
        targets = [mp.mpc('0.25', '0.5'), mp.mpc('1.25', '0.5')]
        sample = genuine_solution(stirling(), 'left', targets, precision=128, order=30)
        assert recurrence_residual(stirling().to_big(), sample) < 1e-15
        w = targets[0]
        expected = -1j * mp.sqrt(2 * mp.pi) * mp.exp(1j * mp.pi * w) / mp.gamma(1 - w)
        assert abs(sample.values[0][0, 0] - expected) < 1e-15 * abs(expected)


def test_asymptotic_contract():
    with working_precision(128):
        system = stirling().to_big()
        formal = formal_solution_difference(system, 20)
        sample = genuine_solution(system, 'right', [mp.mpc(30, '0.5'), mp.mpc(60, '0.5')],
                                  precision=128, formal=formal)
        bounded = asymptotic_contract(sample, formal, 3)
        assert bounded < 1


def test_genuine_solution_domain():
    with pytest.raises(DomainError):
        genuine_solution(stirling(), 'right', [mp.mpc(1, -1)])
    shifted_pole = DifferenceSystem(MatrixLaurentPoly([[z - I / 2]]))
    with pytest.raises(SingularityOnPath):
        genuine_solution(shifted_pole, 'right', [mp.mpc(3, '0.5')])
    with pytest.raises(ValueError):
        genuine_solution(stirling(), 'up', [mp.mpc(1, 1)])


def test_lambda_matrix():
    log_rho = [mp.mpc(0), mp.log(mp.mpc(0, 1))]
    assert lambda_matrix(log_rho) == [[0, 1], [0, 0]]


def test_monodromy_of_gamma():
    report = monodromy_difference(stirling(), precision=128, order=30)
    assert report.periodicity_residual < 1e-12
    assert report.fit_residual < 1e-12
    assert abs(report.constant_terms[0] - 1) < 1e-12
    assert abs(report.top_terms[0] + 1) < 1e-12
    with working_precision(128):
        for w, value in zip(report.points, report.values):
            assert abs(value[0, 0] - (1 - mp.exp(2j * mp.pi * w))) < 1e-12
    data = report.to_json()
    assert data['log_rho_branch'] == 'principal'
    assert len(data['fit']['coefficients']['1,1']) == 2
    assert data['fit']['prefactor']['sign'] == -1
    assert data['fit']['prefactor']['top_term'] == '(-1)**r * exp(2*pi*i*d_k)'
    assert abs(report.expected_top_terms[0] + 1) < 1e-20
    assert report.d_consistency[0] < 1e-12


def test_gauge_covariance():
    same, residual = gauge_covariance(stirling(), MatrixLaurentPoly([[z]]), precision=96, order=30)
    assert same
    assert residual < 1e-10


def random_gaussian(rng, bound=5):
    return ExactComplex(int(rng.randint(-bound, bound + 1)), int(rng.randint(-bound, bound + 1)))


def test_fuchs_on_random_systems():
    rng = np.random.RandomState(2)
    for _ in range(30):
        n, r = int(rng.randint(1, 4)), int(rng.randint(1, 3))
        rho = [random_gaussian(rng) for _ in range(n)]
        rho = [x if x != 0 else ExactComplex(1, -1) for x in rho]
        coefficients = {k: [[random_gaussian(rng) for _ in range(n)] for _ in range(n)]
                        for k in range(r)}
        coefficients[r] = [[rho[i] if i == j else 0 for j in range(n)] for i in range(n)]
        system = DifferenceSystem(MatrixLaurentPoly.from_coefficients(coefficients))
        assert system.r == r
        assert system.d == [coefficients[r - 1][k][k] / rho[k] for k in range(n)]
        check = verify_fuchs(system)
        assert check.residual == 0
        assert check.d_sum == -check.root_sum


def diagonal_system():
    return DifferenceSystem(MatrixLaurentPoly.diag([z + Fraction(1, 3), I * z + I / 4]))


def test_diagonal_monodromy_at_256_bits():
    shifts = [Fraction(1, 3), Fraction(1, 4)]
    report = monodromy_difference(diagonal_system(), precision=256, order=40)
    with working_precision(256):
        assert all(abs(x - mp.mpf(a.numerator) / a.denominator) < 1e-60
                   for x, a in zip(report.d, shifts))
    assert report.periodicity_residual < 1e-25
    assert report.fit_residual < 1e-25
    with working_precision(256):
        for w, value in zip(report.points, report.values):
            for k, a in enumerate(shifts):
                expected = 1 - mp.exp(2j * mp.pi * (w + mp.mpf(a.numerator) / a.denominator))
                assert abs(value[k, k] - expected) < 1e-25
            assert abs(value[0, 1]) < 1e-25
            assert abs(value[1, 0]) < 1e-25
        for k in range(2):
            assert abs(report.constant_terms[k] - 1) < 1e-25
            assert report.d_consistency[k] < 1e-25


def test_coupled_monodromy_is_periodic():
    system = SystemReader().read_file('tests/difference_rational_roots.json')
    report = monodromy_difference(system, precision=256, order=40, fit=False)
    assert len(report.points) == 7
    assert report.periodicity_residual < 1e-20
