# -*- coding: utf-8 -*-

from fractions import Fraction
import unittest

import numpy as np
import pytest

from pydiffsys.difference import DifferenceSystem
from pydiffsys.exceptions import DomainError, NonDiagonalizable, ProgressImpossible, SingularGauge
from pydiffsys.gauge import (GaugeTransformation, ReductionState, apply_gauge, compose,
                             normalize_leading, reduce_norm_step, shift_constant)
from pydiffsys.gauge.reduction import (catalog_roots, column_gauge, infinity_profile, row_gauge,
                                       sort_shifts, top_degree)
from pydiffsys.gauge.sauvage import sauvage_factorize
from pydiffsys.laurent import LaurentPoly, MatrixLaurentPoly, as_rational
from pydiffsys.qdifference import QDifferenceSystem
from pydiffsys.scalar import ExactComplex, I
from pydiffsys.utils import SystemReader

z = LaurentPoly.z()


def stirling():
    return DifferenceSystem(MatrixLaurentPoly([[z]]))


def skew_q_system():
    return QDifferenceSystem(MatrixLaurentPoly([[z + 1, z], [0, 3 * z + 1]]), 2)


class TestApplyGauge(unittest.TestCase):

    def test_difference_action(self):
        gauge = GaugeTransformation(MatrixLaurentPoly([[z]]), 'difference')
        self.assertEqual(apply_gauge(gauge, stirling()).matrix, MatrixLaurentPoly([[z + 1]]))
        constant = DifferenceSystem(MatrixLaurentPoly([[2]]))
        self.assertEqual(apply_gauge(gauge, constant).matrix.evaluate(3), [[Fraction(8, 3)]])

    def test_q_action(self):
        system = SystemReader().read_file('tests/q_scalar.json')
        gauge = GaugeTransformation(MatrixLaurentPoly([[z]]), 'qdifference')
        self.assertEqual(apply_gauge(gauge, system).matrix, MatrixLaurentPoly([[2 * z - 2]]))

    def test_mismatches(self):
        with self.assertRaises(DomainError):
            apply_gauge(GaugeTransformation.identity(1, 'qdifference'), stirling())
        with self.assertRaises(DomainError):
            apply_gauge(GaugeTransformation.identity(2, 'difference'), stirling())

    def test_singular_gauge(self):
        with self.assertRaises(SingularGauge):
            GaugeTransformation(MatrixLaurentPoly([[z, z], [1, 1]]), 'difference')
        with self.assertRaises(ValueError):
            GaugeTransformation(MatrixLaurentPoly.identity(2), 'integral')

    def test_compose_with_inverse(self):
        gauge = GaugeTransformation(MatrixLaurentPoly([[1, z], [0, 1]]), 'difference',
                                    log=[{'op': 'first'}])
        back = GaugeTransformation(gauge.inverse, 'difference', log=[{'op': 'second'}])
        composed = compose(back, gauge)
        self.assertTrue(composed.is_identity())
        self.assertEqual(composed.log, [{'op': 'first'}, {'op': 'second'}])
        self.assertTrue(gauge.is_laurent())
        with self.assertRaises(DomainError):
            compose(GaugeTransformation.identity(2, 'qdifference'), gauge)

    def test_json(self):
        gauge = GaugeTransformation(MatrixLaurentPoly([[1, z], [0, 1]]), 'qdifference')
        again = GaugeTransformation.from_json(gauge.to_json())
        self.assertEqual(again.matrix, gauge.matrix)
        self.assertEqual(again.kind, 'qdifference')


class TestConstantNormalizations(unittest.TestCase):

    def test_normalize_leading(self):
        result, gauge = normalize_leading(skew_q_system())
        self.assertEqual(result.leading, [[1, 0], [0, 3]])
        self.assertEqual(gauge.log[0]['op'], 'leading')
        result, _ = normalize_leading(skew_q_system(), order=[3, 1])
        self.assertEqual(result.leading, [[3, 0], [0, 1]])

    def test_already_diagonal(self):
        system = SystemReader().read_file('tests/q_example.json')
        result, gauge = normalize_leading(system)
        self.assertIs(result, system)
        self.assertTrue(gauge.is_identity())

    def test_shift_q_constant(self):
        system = SystemReader().read_file('tests/q_scalar.json')
        result, gauge = shift_constant(system, 0, 1)
        self.assertEqual(result.matrix, MatrixLaurentPoly([[(z - 1) * Fraction(1, 2)]]))
        self.assertEqual(gauge.log, [{'op': 'shift', 'index': 0, 'delta': 1}])

    def test_shift_difference_constant(self):
        result, _ = shift_constant(stirling(), 0, 1)
        self.assertEqual(result.matrix, MatrixLaurentPoly([[z + 1]]))
        self.assertEqual(result.d, [1])
        result, _ = shift_constant(result, 0, -1)
        self.assertEqual(result.matrix, MatrixLaurentPoly([[z]]))

    def test_shift_arguments(self):
        with self.assertRaises(ValueError):
            shift_constant(stirling(), 0, 2)
        with self.assertRaises(IndexError):
            shift_constant(stirling(), 5, 1)
        with self.assertRaises(NonDiagonalizable):
            shift_constant(skew_q_system(), 0, 1)


def test_row_gauge_inverse():
    gauge = row_gauge([ExactComplex(1), ExactComplex(2)], 0, ExactComplex(3), 'difference')
    product = (as_rational(gauge.matrix) * as_rational(gauge.inverse)).simplify()
    assert product == MatrixLaurentPoly.identity(2)
    assert gauge.log[0]['op'] == 'row'


def test_column_gauge_inverse():
    gauge = column_gauge([ExactComplex(1), ExactComplex(2)], 1, ExactComplex(3), 'qdifference')
    product = (as_rational(gauge.matrix) * as_rational(gauge.inverse)).simplify()
    assert product == MatrixLaurentPoly.identity(2)
    assert gauge.log[0]['index'] == 1


def test_catalog_roots():
    system = SystemReader().read_file('tests/difference_rational_roots.json')
    assert catalog_roots(system) == [Fraction(-1, 3), Fraction(1, 2)]


def test_infinity_profile():
    system = SystemReader().read_file('tests/difference_example.json')
    degree, lead = infinity_profile(system, [0, 0])
    assert degree == 1
    assert lead == [[1, 0], [0, I]]


def test_sort_shifts():
    system = SystemReader().read_file('tests/difference_example.json')
    state = sort_shifts(ReductionState(system, [-1, 1], 1))
    assert state.shifts == [1, -1]
    assert state.system.matrix == MatrixLaurentPoly([[I * z + 3 * I, 1], [1, z + 2]])
    assert state.gauges[-1].log == [{'op': 'permutation', 'order': [1, 0]}]


def test_no_progress_at_zero_norm():
    state = ReductionState(stirling(), [0], 1)
    with pytest.raises(ProgressImpossible):
        reduce_norm_step(state)


def manufactured_state(system, targets):
    """The zero-side system and shift vector D that normalizing to `targets` starts from."""
    start, _ = normalize_leading(system)
    accumulated = GaugeTransformation.identity(system.n, system.kind)
    shifted = start
    for k, target in enumerate(targets):
        for _ in range(abs(target)):
            shifted, step = shift_constant(shifted, k, -1 if target > 0 else 1)
            accumulated = compose(step, accumulated)
    split = sauvage_factorize(accumulated.inverse)
    unimodular = GaugeTransformation(split.u, system.kind, inverse=split.u.inverse())
    return ReductionState(apply_gauge(unimodular, start), split.k, top_degree(system))


def random_targets(rng, n):
    while True:
        targets = [int(t) for t in rng.randint(-2, 3, size=n)]
        if 1 <= sum(abs(t) for t in targets) <= 4:
            return targets


@pytest.mark.parametrize('path', ['tests/q_example.json', 'tests/difference_rational_roots.json'])
def test_each_step_lowers_the_norm_by_one(path):
    rng = np.random.RandomState(17)
    system = SystemReader().read_file(path)
    for _ in range(4):
        state = manufactured_state(system, random_targets(rng, system.n))
        while state.norm:
            step = reduce_norm_step(state)
            assert step.norm == state.norm - 1
            assert step.steps == state.steps + 1
            assert step.shifts == sorted(step.shifts, reverse=True)
            assert step.system.matrix.is_polynomial()
            state = step
        assert state.trajectory == list(range(state.trajectory[0], -1, -1))
