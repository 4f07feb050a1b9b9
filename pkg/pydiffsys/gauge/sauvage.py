# -*- coding: utf-8 -*-
"""
Factorization U X = z**K W of a matrix X invertible off {0, infinity}:
U polynomial with constant determinant, W polynomial in 1/z with
constant determinant, k_1 >= ... >= k_n.
"""

import logging

from ..exceptions import NotUnitOffOrigin, PrecisionExhausted
from ..laurent import LaurentPoly, MatrixLaurentPoly, poly_det, null_vectors

logger = logging.getLogger(__name__)


class SauvageFactorization(object):

    def __init__(self, u, k, w, x):
        self.u = u
        self.k = k
        self.w = w
        self.x = x

    @property
    def m(self):
        return sum(self.k)

    def reconstruction_defect(self):
        """U X - z**K W; the zero matrix for exact input."""
        return self.u * self.x - MatrixLaurentPoly.z_power(self.k) * self.w

    def is_exact_reconstruction(self):
        return self.reconstruction_defect().is_zero()

    def to_json(self):
        from .transformation import matrix_to_json
        return {'k': list(self.k), 'u': matrix_to_json(self.u), 'w': matrix_to_json(self.w)}

    def __repr__(self):
        return 'SauvageFactorization(k={})'.format(self.k)


def _row_degree(row):
    return max(e.high for e in row if not e.is_zero())


def _combine(rows, weights, degrees, top):
    """sum_l weights[l] z**(top - degrees[l]) rows[l]."""
    n = len(rows[0])
    result = [LaurentPoly() for _ in range(n)]
    for l, c in weights.items():
        shift = top - degrees[l]
        for j in range(n):
            if not rows[l][j].is_zero():
                result[j] = result[j] + rows[l][j].times_z(shift) * c
    return result


def sauvage_factorize(x, tol=0):
    """
    Row reduce X until its leading row coefficient matrix is invertible.

    Each pass takes a left null vector v of the matrix of row-leading
    coefficients and replaces the row p of largest degree in the support
    of v by sum v_l z**(k_p - k_l) row_l, which lowers k_p and multiplies
    U by a polynomial matrix of determinant v_p. The rows are finally
    sorted by decreasing degree.

    Returns
    -------
    SauvageFactorization

    Raises
    ------
    NotUnitOffOrigin
        det X is not c z**m.
    """
    det = poly_det(x)
    if det.is_zero() or not det.is_monomial():
        raise NotUnitOffOrigin('det X = {} is not a monomial'.format(det))
    m = det.low
    n = x.n
    exact_mode = x.is_exact()
    rows = x.rows()
    u = MatrixLaurentPoly.identity(n).rows()
    degrees = [_row_degree(row) for row in rows]
    budget = sum(degrees) - m + 1
    for step in range(budget + 1):
        lead = [[e.coefficient(degrees[i]) for e in row] for i, row in enumerate(rows)]
        kernel = null_vectors(lead, 'left', tol)
        if not kernel:
            break
        v, support = kernel[0]
        p = max(support, key=lambda l: (degrees[l], -l))
        weights = {l: v[l] for l in support}
        new_row = _combine(rows, weights, degrees, degrees[p])
        new_u = _combine(u, weights, degrees, degrees[p])
        if not exact_mode and tol:
            new_row = [e.chop(tol) for e in new_row]
        logger.debug('sauvage step %d: row %d, degree %d', step, p, degrees[p])
        rows[p], u[p] = new_row, new_u
        degrees[p] = _row_degree(new_row)
    else:
        raise PrecisionExhausted('row reduction did not reach an invertible leading matrix')
    order = sorted(range(n), key=lambda i: -degrees[i])
    k = [degrees[i] for i in order]
    u = MatrixLaurentPoly([u[i] for i in order])
    w = MatrixLaurentPoly([[e.times_z(-degrees[i]) for e in rows[i]] for i in order])
    if exact_mode and sum(k) != m:
        raise NotUnitOffOrigin('row degrees sum to {} but det X has order {}'.format(sum(k), m))
    logger.debug('sauvage factorization: K = %s', k)
    return SauvageFactorization(u, k, w, x)


def is_unit(matrix):
    """Nonzero constant determinant."""
    det = poly_det(matrix)
    return det.is_constant() and not det.is_zero()
