# -*- coding: utf-8 -*-
"""
Norm reduction between the zero side and the infinity side.

The zero side is a polynomial system Q~ and the integer vector D ties it
to an infinity-side system of the original top degree through

    Q~(z) = (sz)**D Q^(z) z**-D          (sz = qz, or z+1)

Every accepted step is an elementary gauge centered at a root of
det Q~ that keeps Q~ polynomial and lowers |D|_1 by exactly one.
"""

import logging

from mpmath import mp

from ..exceptions import ProgressImpossible, NormalizationLost
from ..laurent import (LaurentPoly, MatrixLaurentPoly, RationalMatrix, poly_det, null_vectors,
                       from_mp_matrix, max_norm, determinant)
from ..roots import (gaussian_rational_roots, poly_roots, check_non_congruent, magnitude_key,
                     CONGRUENCE_MARGIN)
from ..scalar import ExactComplex, is_exact, to_big
from .. import serialization
from .transformation import GaugeTransformation, apply_gauge, default_tolerance, close

logger = logging.getLogger(__name__)


def top_degree(system):
    return system.mu if system.kind == 'qdifference' else system.r


def determinant_roots(system):
    """
    Roots of det Q~ with multiplicities, sorted by modulus: exact when
    they are all Gaussian rationals.
    """
    det = poly_det(system.matrix if not isinstance(system.matrix, RationalMatrix)
                   else system.matrix.numerator)
    low = det.low
    origin = []
    if low > 0:
        origin = [(ExactComplex(0) if det.is_exact() else mp.mpc(0), low)]
    degree = det.high - low
    if det.is_exact():
        found = gaussian_rational_roots(det)
        if sum(m for _, m in found) == degree:
            return sorted(origin + found, key=lambda item: magnitude_key(item[0]))
    found = poly_roots(det).roots
    return sorted(origin + list(found), key=lambda item: magnitude_key(item[0]))


def infinity_profile(system, shifts):
    """
    Top degree and leading matrix of the infinity-side system
    Q^ = (sz)**-D Q~ z**D determined by the zero side and D.
    """
    n = system.n
    matrix = system.matrix
    degree = None
    for i in range(n):
        for j in range(n):
            e = matrix[i, j]
            if not e.is_zero():
                value = e.high - shifts[i] + shifts[j]
                degree = value if degree is None else max(degree, value)
    lead = []
    for i in range(n):
        row = []
        for j in range(n):
            c = matrix[i, j].coefficient(degree + shifts[i] - shifts[j])
            if system.kind == 'qdifference':
                q = system.q if is_exact(c) and is_exact(system.q) else to_big(system.q)
                c = c * q ** (-shifts[i])
            row.append(c)
        lead.append(row)
    return degree, lead


def check_profile(system, shifts, top, tol=0):
    """
    Raises NormalizationLost unless the infinity side has top degree
    `top` and an invertible leading matrix.
    """
    degree, lead = infinity_profile(system, shifts)
    if degree != top:
        raise NormalizationLost('infinity side has degree {}, expected {}'.format(degree, top))
    det = determinant(lead)
    if close(det, 0, tol):
        raise NormalizationLost('infinity side has a singular leading matrix')


def catalog_roots(system, margin=CONGRUENCE_MARGIN):
    """
    Roots of det Q~ after the non-congruence certificate: no multiple
    root and no two roots differing by an integer (difference) or by a
    factor q**k (q-difference).
    """
    roots = determinant_roots(system)
    check_non_congruent(roots, system.kind, getattr(system, 'q', None), margin)
    return [root for root, _ in roots]


class ReductionState(object):
    """
    A zero-side system, the shift vector D relating it to an infinity
    side of top degree `top`, the step count and the gauges applied so far.
    """

    def __init__(self, system, shifts, top, steps=0, gauges=None, roots=None, trajectory=None):
        self.system = system
        self.shifts = list(shifts)
        self.top = top
        self.steps = steps
        self.gauges = list(gauges or [])
        self.roots = roots
        self.trajectory = list(trajectory or [self.norm])

    @property
    def kind(self):
        return self.system.kind

    @property
    def norm(self):
        return sum(abs(d) for d in self.shifts)

    def infinity_profile(self):
        return infinity_profile(self.system, self.shifts)

    def __repr__(self):
        return 'ReductionState(D={}, steps={})'.format(self.shifts, self.steps)


def _scalars(kind, q, alpha):
    """(center of a row move, scale s) with G(sz)'s pole at alpha."""
    if kind == 'qdifference':
        if not (is_exact(alpha) and is_exact(q)):
            q, alpha = to_big(q), to_big(alpha)
        return q * alpha, q
    return alpha + 1, ExactComplex(1) if is_exact(alpha) else mp.mpc(1)


def row_gauge(c, i, alpha, kind, q=None):
    """
    Identity except row i = s c / (z - beta); lowers D_i by one and
    moves the root alpha of det Q~ to beta (qalpha, or alpha + 1).
    """
    n = len(c)
    beta, s = _scalars(kind, q, alpha)
    factor = LaurentPoly({1: 1, 0: -beta})
    rows = [[factor if j == l else 0 for j in range(n)] for l in range(n)]
    rows[i] = [c[j] * s for j in range(n)]
    inverse = [[1 if j == l else 0 for j in range(n)] for l in range(n)]
    inverse[i] = [-c[j] / c[i] for j in range(n)]
    inverse[i][i] = factor * (1 / (c[i] * s))
    step = {'op': 'row', 'index': i, 'root': serialization.scalar_to_json(alpha),
            'vector': [serialization.scalar_to_json(x) for x in c]}
    return GaugeTransformation(RationalMatrix(MatrixLaurentPoly(rows), factor), kind, [step],
                               inverse=MatrixLaurentPoly(inverse))


def column_gauge(b, i, alpha, kind):
    """
    Identity except column i = (-b_l / b_i, ..., (z - alpha) / b_i);
    raises D_i by one and moves the root alpha to alpha/q (or alpha - 1).
    """
    n = len(b)
    factor = LaurentPoly({1: 1, 0: -alpha})
    rows = [[1 if j == l else 0 for j in range(n)] for l in range(n)]
    for l in range(n):
        rows[l][i] = -b[l] / b[i]
    rows[i][i] = factor * (1 / b[i])
    inverse = [[factor if j == l else 0 for j in range(n)] for l in range(n)]
    for l in range(n):
        inverse[l][i] = b[l]
    step = {'op': 'column', 'index': i, 'root': serialization.scalar_to_json(alpha),
            'vector': [serialization.scalar_to_json(x) for x in b]}
    return GaugeTransformation(MatrixLaurentPoly(rows), kind, [step],
                               inverse=RationalMatrix(MatrixLaurentPoly(inverse), factor))


def _value_at(matrix, alpha):
    value = matrix.evaluate(alpha)
    return value if isinstance(value, list) else from_mp_matrix(value)


def _kernel_tolerance(value):
    if all(is_exact(x) for row in value for x in row):
        return 0
    return mp.mpf(2) ** (-mp.prec // 3) * max(1, max_norm(value))


def _choose_move(system, shifts, roots):
    for alpha in roots:
        value = _value_at(system.matrix, alpha)
        tol = _kernel_tolerance(value)
        if any(d > 0 for d in shifts):
            for c, support in null_vectors(value, 'left', tol):
                i = max(support, key=lambda l: (shifts[l], -l))
                if shifts[i] >= 1:
                    return 'row', alpha, c, i
        if any(d < 0 for d in shifts):
            for b, support in null_vectors(value, 'right', tol):
                i = min(support, key=lambda l: (shifts[l], l))
                if shifts[i] <= -1:
                    return 'column', alpha, b, i
    return None


def _require_polynomial(system):
    matrix = system.matrix
    if isinstance(matrix, RationalMatrix) or not matrix.is_polynomial():
        raise NormalizationLost('the zero side is no longer polynomial')


def sort_shifts(state, tol=None):
    """Permutation gauge putting D in decreasing order."""
    order = sorted(range(len(state.shifts)), key=lambda i: -state.shifts[i])
    if order == list(range(len(order))):
        return state
    permutation = MatrixLaurentPoly.permutation(order)
    step = {'op': 'permutation', 'order': order}
    gauge = GaugeTransformation(permutation, state.kind, [step], inverse=permutation.transpose())
    system = apply_gauge(gauge, state.system, tol)
    logger.debug('permuted D into %s', [state.shifts[i] for i in order])
    return ReductionState(system, [state.shifts[i] for i in order], state.top, state.steps,
                          state.gauges + [gauge], state.roots, state.trajectory)


def reduce_norm_step(state, tol=None):
    """
    One elementary move at the smallest root alpha of det Q~ that admits
    one: a left null vector of Q~(alpha) whose support peaks at a positive
    entry of D (row move), else a right null vector whose support bottoms
    out at a negative entry (column move).

    Returns
    -------
    ReductionState
        |D|_1 lowered by exactly one, D in decreasing order.

    Raises
    ------
    ProgressImpossible
        D = 0, or no root admits a move.
    """
    if state.norm == 0:
        raise ProgressImpossible('D = 0: the zero side and the infinity side already agree')
    system = state.system
    tol = default_tolerance(system.is_exact(), tol)
    roots = [root for root, _ in determinant_roots(system)]
    move = _choose_move(system, state.shifts, roots)
    if move is None:
        raise ProgressImpossible(
            'no root of det Q~ admits a reducing null vector (D = {}); the determinant roots '
            'must be simple and pairwise non-congruent'.format(state.shifts))
    side, alpha, vector, i = move
    shifts = list(state.shifts)
    if side == 'row':
        gauge = row_gauge(vector, i, alpha, system.kind, getattr(system, 'q', None))
        shifts[i] -= 1
    else:
        gauge = column_gauge(vector, i, alpha, system.kind)
        shifts[i] += 1
    gauged = apply_gauge(gauge, system, tol)
    _require_polynomial(gauged)
    new = ReductionState(gauged, shifts, state.top, state.steps + 1, state.gauges + [gauge],
                         state.roots, state.trajectory)
    if new.norm != state.norm - 1:
        raise NormalizationLost('|D|_1 went from {} to {}'.format(state.norm, new.norm))
    new.trajectory.append(new.norm)
    check_profile(gauged, shifts, state.top, default_tolerance(gauged.is_exact()))
    logger.info('reduction step %d: %s move at %s on index %d, |D|_1 %d -> %d', new.steps, side,
                mp.nstr(to_big(alpha), 10), i, state.norm, new.norm)
    return sort_shifts(new, tol)
