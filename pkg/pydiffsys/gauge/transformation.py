# -*- coding: utf-8 -*-
"""
Gauge transformations Y' = M Y and the constant normalizations.

A gauge acts on a difference system by A'(z) = M(z+1) A(z) M(z)**-1 and
on a q-difference system by Q'(z) = M(qz) Q(z) M(z)**-1.
"""

from fractions import Fraction
import logging

from mpmath import mp

from ..exceptions import (SingularGauge, DomainError, NormalizationLost, NonDiagonalizable,
                          ParseError)
from ..laurent import (LaurentPoly, MatrixLaurentPoly, RationalMatrix, as_rational, poly_det,
                       determinant, matinv, identity, transpose)
from ..roots import eigen_decomposition
from ..scalar import ExactComplex, is_exact, to_big, magnitude
from .. import serialization

logger = logging.getLogger(__name__)

KINDS = ('difference', 'qdifference')

CHECK_POINTS = (ExactComplex(Fraction(17, 7), Fraction(3, 11)),
                ExactComplex(Fraction(-5, 13), Fraction(19, 9)),
                ExactComplex(Fraction(29, 5), Fraction(-7, 3)))


def default_tolerance(exact_mode, tol=None):
    if tol is not None:
        return tol
    return 0 if exact_mode else mp.mpf(2) ** (-mp.prec // 2)


def close(a, b, tol):
    """Exact equality for exact scalars at tol 0, relative closeness otherwise."""
    if not tol and is_exact(a) and is_exact(b):
        return ExactComplex.coerce(a) == ExactComplex.coerce(b)
    tol = tol or mp.mpf(2) ** (-mp.prec // 2)
    return abs(to_big(a) - to_big(b)) <= tol * max(1, magnitude(a))


def is_diagonal(matrix, tol=0):
    n = len(matrix)
    return all(close(matrix[i][j], 0, tol) for i in range(n) for j in range(n) if i != j)


def _coerce_matrix(matrix):
    if isinstance(matrix, (MatrixLaurentPoly, RationalMatrix)):
        return matrix
    return MatrixLaurentPoly.constant(matrix)


def simplify(matrix, tol=0):
    if isinstance(matrix, RationalMatrix):
        return matrix.simplify(tol)
    return matrix


def invert(matrix):
    """Inverse of a MatrixLaurentPoly or RationalMatrix, simplified."""
    if isinstance(matrix, MatrixLaurentPoly):
        return matrix.inverse()
    inner = matrix.numerator.inverse()
    return simplify(as_rational(inner) * matrix.denominator)


def _polynomial_parts(matrix):
    r = as_rational(matrix)
    numerator, denominator = r.numerator, r.denominator
    shift = max(0, -(numerator.low or 0), -(denominator.low or 0))
    if shift:
        numerator = numerator * LaurentPoly.z(shift)
        denominator = denominator.times_z(shift)
    return numerator, denominator


def shifted(matrix, kind, q=None):
    """M(z+1) for 'difference', M(qz) for 'qdifference', as a RationalMatrix."""
    if kind == 'qdifference':
        r = as_rational(matrix)
        return RationalMatrix(r.numerator.substitute_scale(q), r.denominator.substitute_scale(q))
    numerator, denominator = _polynomial_parts(matrix)
    return RationalMatrix(numerator.substitute_shift(1), denominator.substitute_shift(1))


def matrix_to_json(matrix):
    if isinstance(matrix, RationalMatrix):
        return {'n': matrix.n,
                'coefficients': serialization.coefficients_to_json(matrix.numerator),
                'denominator': serialization.laurent_to_json(matrix.denominator)}
    return {'n': matrix.n, 'coefficients': serialization.coefficients_to_json(matrix)}


class GaugeTransformation(object):
    """
    A gauge matrix M(z) of a given kind, its inverse and the ordered log
    of elementary steps it was composed from.
    """

    def __init__(self, matrix, kind, log=None, inverse=None):
        if kind not in KINDS:
            raise ValueError('kind must be one of {}'.format(KINDS))
        matrix = _coerce_matrix(matrix)
        numerator = matrix.numerator if isinstance(matrix, RationalMatrix) else matrix
        if poly_det(numerator).is_zero():
            raise SingularGauge('gauge matrix has identically zero determinant')
        self.matrix = matrix
        self.kind = kind
        self.log = list(log or [])
        self._inverse = _coerce_matrix(inverse) if inverse is not None else None

    @staticmethod
    def identity(n, kind):
        return GaugeTransformation(MatrixLaurentPoly.identity(n), kind,
                                   inverse=MatrixLaurentPoly.identity(n))

    @property
    def n(self):
        return self.matrix.n

    @property
    def inverse(self):
        if self._inverse is None:
            self._inverse = invert(self.matrix)
        return self._inverse

    def is_identity(self):
        return self.matrix == MatrixLaurentPoly.identity(self.n)

    def is_laurent(self):
        """Singularities only at 0 and infinity, for M and its inverse."""
        return (isinstance(self.matrix, MatrixLaurentPoly)
                and isinstance(self.inverse, MatrixLaurentPoly))

    @staticmethod
    def from_json(data, location='$'):
        kind = serialization.require(data, 'kind', str, location)
        if kind not in KINDS:
            raise ParseError('unknown gauge kind {!r}'.format(kind), location + '.kind')
        matrix = serialization.coefficient_matrix_from_json(
            serialization.require(data, 'matrix', dict, location), location + '.matrix')
        inverse = None
        if 'inverse' in data:
            inverse = serialization.coefficient_matrix_from_json(data['inverse'],
                                                                 location + '.inverse')
        return GaugeTransformation(matrix, kind, data.get('log'), inverse)

    def to_json(self):
        return {'kind': self.kind, 'matrix': matrix_to_json(self.matrix),
                'inverse': matrix_to_json(self.inverse), 'log': self.log}

    def __repr__(self):
        return 'GaugeTransformation(kind={}, n={}, steps={})'.format(self.kind, self.n,
                                                                     len(self.log))


def compose(second, first, tol=0):
    """The gauge `second` o `first`: matrix M2 M1, logs concatenated."""
    if second.kind != first.kind or second.n != first.n:
        raise DomainError('cannot compose gauges of different kinds or sizes')
    matrix = simplify(as_rational(second.matrix) * as_rational(first.matrix), tol)
    inverse = simplify(as_rational(first.inverse) * as_rational(second.inverse), tol)
    return GaugeTransformation(matrix, first.kind, first.log + second.log, inverse)


def _make_system(kind, matrix, q):
    if kind == 'qdifference':
        from ..qdifference import QDifferenceSystem
        return QDifferenceSystem(matrix, q)
    from ..difference import DifferenceSystem
    return DifferenceSystem(matrix)


def _det_at(matrix, z):
    value = matrix.evaluate(z)
    if isinstance(value, list):
        return determinant(value)
    return mp.det(value)


def check_determinant(left, gauge_matrix, before, after, exact_mode):
    """
    det A'(z) det M(z) = det M(sz) det A(z) at a few fixed points away
    from the poles.

    Raises
    ------
    NormalizationLost
    """
    checked = 0
    for point in CHECK_POINTS:
        z = point if exact_mode else to_big(point)
        try:
            lhs = _det_at(after, z) * _det_at(gauge_matrix, z)
            rhs = _det_at(left, z) * _det_at(before, z)
        except ZeroDivisionError:
            continue
        checked += 1
        if exact_mode:
            if lhs != rhs:
                raise NormalizationLost('gauge breaks the determinant identity at {}'.format(z))
        elif abs(to_big(lhs) - to_big(rhs)) > mp.mpf(2) ** (-mp.prec // 3) * max(1, abs(rhs)):
            raise NormalizationLost('gauge breaks the determinant identity at {} ({} vs {})'.format(
                mp.nstr(to_big(z), 8), mp.nstr(to_big(lhs), 8), mp.nstr(to_big(rhs), 8)))
    if not checked:
        logger.debug('determinant identity not checked: every sample point is a pole')


def apply_gauge(gauge, system, tol=None, check=True):
    """
    The gauged system M(sz) A(z) M(z)**-1 with s the shift of the kind.

    q-difference results must stay Laurent (DomainError otherwise);
    difference results may be rational.
    """
    if gauge.kind != system.kind:
        raise DomainError('a {} gauge cannot act on a {} system'.format(gauge.kind, system.kind))
    if gauge.n != system.n:
        raise DomainError('gauge size {} does not match system size {}'.format(gauge.n, system.n))
    q = getattr(system, 'q', None)
    exact_mode = system.is_exact() and gauge.matrix.is_exact() and (q is None or is_exact(q))
    tol = default_tolerance(exact_mode, tol)
    left = shifted(gauge.matrix, gauge.kind, q)
    product = left * as_rational(system.matrix) * as_rational(gauge.inverse)
    result = product.simplify(tol)
    if isinstance(result, RationalMatrix) and gauge.kind == 'difference' and result.is_exact():
        from ..difference import split_denominator
        numerator, denominator = split_denominator(result)
        result = RationalMatrix(numerator, denominator).simplify()
    if not exact_mode and tol:
        if isinstance(result, RationalMatrix):
            result = RationalMatrix(result.numerator.chop(tol ** 2), result.denominator)
        else:
            result = result.chop(tol ** 2)
    gauged = _make_system(gauge.kind, result, q)
    if check:
        check_determinant(left, gauge.matrix, system.matrix, gauged.matrix, exact_mode)
    return gauged


# constant normalizations

def _match_order(pairs, order, tol):
    remaining = list(range(len(pairs)))
    chosen = []
    for target in order:
        best = min(remaining, key=lambda i: magnitude(to_big(pairs[i][0]) - to_big(target)))
        if not close(pairs[best][0], target, tol):
            raise NormalizationLost('no leading eigenvalue matches {}'.format(target))
        remaining.remove(best)
        chosen.append(pairs[best])
    return chosen


def normalize_leading(system, order=None, tol=None):
    """
    Constant gauge diagonalizing the leading coefficient (Q_mu, or A_r
    for difference systems), so that the local series at infinity start
    with the identity.

    Parameters
    ----------
    order : list, optional
        Eigenvalues in the wanted diagonal order.

    Returns
    -------
    (system, GaugeTransformation)
    """
    n = system.n
    tol = default_tolerance(system.is_exact(), tol)
    pairs = eigen_decomposition(system.leading)
    if order is not None:
        pairs = _match_order(pairs, order, tol)
    vectors = transpose([v for _, v in pairs])
    exact_mode = all(is_exact(x) for row in vectors for x in row)
    if vectors == identity(n, exact_mode):
        return system, GaugeTransformation.identity(n, system.kind)
    change = matinv(vectors, tol)
    step = {'op': 'leading',
            'eigenvalues': [serialization.scalar_to_json(v) for v, _ in pairs]}
    gauge = GaugeTransformation(change, system.kind, [step], inverse=vectors)
    result = apply_gauge(gauge, system, tol)
    if not is_diagonal(result.leading, tol):
        raise NormalizationLost('leading coefficient is not diagonal after normalization')
    logger.debug('leading coefficient diagonalized: %s', step['eigenvalues'])
    return result, gauge


def _carry_matrix(b1, k, exponent, one):
    """
    Constant term of z**E B(z) z**-E for E = exponent e_k, given
    B = I + B_1/z + ...: row k picks B_1 for exponent +1, column k for -1.
    """
    n = len(b1)
    carry = [[one if i == j else one * 0 for j in range(n)] for i in range(n)]
    for l in range(n):
        if l == k:
            continue
        if exponent == 1:
            carry[k][l] = b1[k][l]
        else:
            carry[l][k] = b1[l][k]
    return carry


def shift_constant(system, k, delta, tol=None):
    """
    Shift one characteristic constant by delta = +1 or -1: sigma_k of a
    q-difference system (multiplier m_k -> m_k q**-delta) or d_k of a
    difference system, through M = B''_0**-1 z**E with E = -delta e_k
    (q-case) or delta e_k (difference case).

    The leading coefficient must already be diagonal.

    Returns
    -------
    (system, GaugeTransformation)
    """
    if delta not in (1, -1):
        raise ValueError('delta must be +1 or -1')
    n = system.n
    if not 0 <= k < n:
        raise IndexError('index {} out of range for n = {}'.format(k, n))
    tol = default_tolerance(system.is_exact(), tol)
    if not is_diagonal(system.leading, tol):
        raise NonDiagonalizable('shift_constant needs a diagonal leading coefficient')
    if system.kind == 'qdifference':
        from ..qdifference import local_series_q
        b1 = local_series_q(system, 'infinity', 1).coefficients[1]
        exponent = -delta
    else:
        from ..difference import formal_solution_difference
        b1 = formal_solution_difference(system, 1).coefficients[1]
        exponent = delta
    exact_mode = all(is_exact(x) for row in b1 for x in row)
    one = ExactComplex(1) if exact_mode else mp.mpc(1)
    carry = _carry_matrix(b1, k, exponent, one)
    change = matinv(carry, tol)
    exponents = [exponent if l == k else 0 for l in range(n)]
    matrix = MatrixLaurentPoly.constant(change) * MatrixLaurentPoly.z_power(exponents)
    inverse = (MatrixLaurentPoly.z_power([-e for e in exponents])
               * MatrixLaurentPoly.constant(carry))
    step = {'op': 'shift', 'index': k, 'delta': delta}
    gauge = GaugeTransformation(matrix, system.kind, [step], inverse=inverse)
    result = apply_gauge(gauge, system, tol)
    _check_shift(system, result, k, delta, tol)
    logger.debug('constant %d shifted by %+d', k, delta)
    return result, gauge


def _check_shift(before, after, k, delta, tol):
    n = before.n
    if not is_diagonal(after.leading, tol):
        raise NormalizationLost('shift left a non diagonal leading coefficient')
    if before.kind == 'qdifference':
        if after.mu != before.mu:
            raise NormalizationLost('shift changed the top degree {} -> {}'.format(
                before.mu, after.mu))
        factor = before.q ** (-delta) if before.is_exact() else to_big(before.q) ** (-delta)
        expected = [before.leading[i][i] * (factor if i == k else 1) for i in range(n)]
        found = [after.leading[i][i] for i in range(n)]
    else:
        if after.r != before.r:
            raise NormalizationLost('shift changed the top degree {} -> {}'.format(
                before.r, after.r))
        if not all(close(a, b, tol) for a, b in zip(after.rho, before.rho)):
            raise NormalizationLost('shift changed the leading coefficient')
        expected = [d + (delta if i == k else 0) for i, d in enumerate(before.d)]
        found = after.d
    if not all(close(a, b, tol) for a, b in zip(found, expected)):
        raise NormalizationLost('constant {} did not move by {:+d}'.format(k, delta))
