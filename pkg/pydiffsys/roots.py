# -*- coding: utf-8 -*-
"""
Roots of univariate (Laurent) polynomials and the congruence checks the
gauge engine needs before touching them.
"""

from collections import namedtuple
import logging

from mpmath import mp

from .exceptions import RootClusterAmbiguous, PrecisionExhausted, CongruentRoots, NonDiagonalizable
from .scalar import ExactComplex, rationalize, to_big

logger = logging.getLogger(__name__)

RootSet = namedtuple('RootSet', ['roots', 'zero_order'])

CONGRUENCE_MARGIN = 1e-6


def poly_gcd(a, b):
    """Monic gcd of two exact polynomials."""
    from .laurent import laurent_from_sympy, sympy_poly
    if b.is_zero():
        return a if a.is_zero() else a * (ExactComplex(1) / a.leading())
    if a.is_zero():
        return b * (ExactComplex(1) / b.leading())
    return laurent_from_sympy(sympy_poly(a).gcd(sympy_poly(b)).monic().as_expr())


def squarefree_decomposition(p):
    """
    Squarefree factorization over the Gaussian rationals.

    Returns
    -------
    list of (LaurentPoly, int)
        Squarefree, pairwise coprime monic factors f_i with
        p = lead * prod f_i**i; constant factors are dropped.
    """
    from .laurent import laurent_from_sympy, sympy_poly
    if not p.is_exact():
        raise ValueError('squarefree decomposition needs exact coefficients')
    if p.high is None or p.high <= 0:
        return []
    _, factors = sympy_poly(p).sqf_list()
    return [(laurent_from_sympy(f.monic().as_expr()), k) for f, k in factors if f.degree() > 0]


def _companion_roots(p):
    coeffs = [to_big(p.coefficient(k)) for k in range(p.high + 1)]
    degree = p.high
    lead = coeffs[-1]
    if degree == 1:
        return [-coeffs[0] / lead]
    companion = mp.zeros(degree, degree)
    for i in range(1, degree):
        companion[i, i - 1] = 1
    for i in range(degree):
        companion[i, degree - 1] = -coeffs[i] / lead
    eigenvalues = mp.eig(companion, left=False, right=False)
    return [mp.mpc(e) for e in eigenvalues]


def _polish(p, root, steps=60):
    big = p.to_big()
    dp = big.derivative()
    for _ in range(steps):
        value = big.evaluate(root)
        slope = dp.evaluate(root)
        if slope == 0:
            break
        correction = value / slope
        root -= correction
        if abs(correction) <= abs(root) * mp.eps:
            break
    return root


def _residual_scale(p, root):
    return sum(abs(to_big(c)) * abs(root) ** k for k, c in p.coeffs.items())


def _cluster_tolerance(precision):
    return mp.mpf(2) ** (-mp.mpf(precision) / 3)


def _squarefree_roots(p, multiplicity, precision):
    with mp.workprec(2 * precision):
        candidates = _companion_roots(p)
    roots = []
    bound = mp.mpf(2) ** (-mp.mpf(precision) / 2)
    for candidate in candidates:
        root = _polish(p, candidate)
        residual = abs(p.to_big().evaluate(root)) / max(_residual_scale(p, root), 1)
        if residual >= bound:
            raise PrecisionExhausted('root {} has residual {} at {} bits'.format(
                mp.nstr(root, 10), mp.nstr(residual, 5), precision))
        roots.append((root, multiplicity))
    return roots


def _check_clusters(roots, precision):
    tol = _cluster_tolerance(precision)
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            gap = abs(roots[i][0] - roots[j][0])
            if gap < tol * max(1, abs(roots[i][0])):
                raise RootClusterAmbiguous(
                    'roots {} and {} are {} apart, below the clustering tolerance'.format(
                        mp.nstr(roots[i][0], 10), mp.nstr(roots[j][0], 10), mp.nstr(gap, 5)))


def _numeric_roots(p, precision):
    """Companion roots of numeric input, grouping clusters certified by derivatives."""
    with mp.workprec(2 * precision):
        candidates = [_polish(p, c, steps=20) for c in _companion_roots(p)]
    tol = mp.mpf(2) ** (-mp.mpf(precision) / 3)
    groups = []
    for root in candidates:
        for group in groups:
            if abs(group[0] - root) < tol * max(1, abs(root)):
                group.append(root)
                break
        else:
            groups.append([root])
    roots = []
    big = p.to_big()
    for group in groups:
        center = sum(group) / len(group)
        multiplicity = len(group)
        derivative = big
        for order in range(multiplicity):
            value = abs(derivative.evaluate(center))
            scale = max(_residual_scale(derivative, center), 1)
            if value > mp.mpf(2) ** (-mp.mpf(precision) / 4) * scale:
                raise RootClusterAmbiguous(
                    'cluster of {} roots near {} is not a multiple root (derivative {} is {})'.format(
                        multiplicity, mp.nstr(center, 10), order, mp.nstr(value, 5)))
            derivative = derivative.derivative()
        if multiplicity == 1:
            center = _polish(p, center)
        roots.append((center, multiplicity))
    return roots


def poly_roots(p, precision=None):
    """
    Nonzero roots of a Laurent polynomial with multiplicities.

    Parameters
    ----------
    p : LaurentPoly
        Not identically zero.
    precision : int
        Binary precision; defaults to the current mpmath precision.

    Returns
    -------
    RootSet
        `roots` as a list of (mpc, multiplicity) and `zero_order`, the
        exponent of the z**low factor that was divided out.
    """
    if p.is_zero():
        raise ValueError('the zero polynomial has no root set')
    if precision is None:
        precision = mp.prec
    low = p.low
    reduced = p.times_z(-low)
    if reduced.high == 0:
        return RootSet([], low)
    with mp.workprec(precision):
        if reduced.is_exact():
            roots = []
            for factor, multiplicity in squarefree_decomposition(reduced):
                roots.extend(_squarefree_roots(factor, multiplicity, precision))
            _check_clusters(roots, precision)
        else:
            roots = _numeric_roots(reduced, precision)
    roots.sort(key=lambda item: (abs(item[0]), item[0].real, item[0].imag))
    logger.debug('roots of degree %s polynomial: %s', reduced.high,
                 [(mp.nstr(r, 8), m) for r, m in roots])
    return RootSet(roots, low)


def gaussian_rational_roots(p, max_denominator=10 ** 9):
    """
    The roots of an exact polynomial that are Gaussian rationals.

    Returns
    -------
    list of (ExactComplex, int)
        Exactly verified roots with their multiplicities.
    """
    if not p.is_exact():
        raise ValueError('exact coefficients are required')
    found = []
    if p.is_zero():
        return found
    reduced = p.times_z(-p.low)
    if reduced.high == 0:
        return found
    precision = max(mp.prec, 128)
    with mp.workprec(precision):
        for factor, multiplicity in squarefree_decomposition(reduced):
            for root, _ in _squarefree_roots(factor, multiplicity, precision):
                candidate = rationalize(root, max_denominator)
                if factor.evaluate(candidate) == 0:
                    found.append((candidate, multiplicity))
    return found


def _is_integer(x, margin):
    return abs(x - mp.nint(x)) < margin


def congruent_difference(a, b, margin=CONGRUENCE_MARGIN):
    """True when a - b lies within `margin` of an integer."""
    delta = to_big(a) - to_big(b)
    return abs(delta.imag) < margin and _is_integer(delta.real, margin)


def congruent_q(a, b, q, margin=CONGRUENCE_MARGIN):
    """True when a / b lies within a relative `margin` of some q**k."""
    a, b, q = to_big(a), to_big(b), to_big(q)
    if a == 0 or b == 0:
        return a == b
    ratio = a / b
    k = int(mp.nint(mp.log(abs(ratio)) / mp.log(abs(q))))
    return abs(ratio - q ** k) < margin * abs(q ** k)


def check_non_congruent(roots, kind, q=None, margin=CONGRUENCE_MARGIN):
    """
    Raise CongruentRoots when two roots (or a multiple root) are
    congruent: difference in Z for 'difference', ratio in q**Z for
    'qdifference'.
    """
    values = []
    for root, multiplicity in roots:
        if multiplicity > 1:
            raise CongruentRoots('determinant root {} has multiplicity {}'.format(
                mp.nstr(to_big(root), 10), multiplicity))
        values.append(root)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if kind == 'difference':
                bad = congruent_difference(values[i], values[j], margin)
                relation = 'differ by an integer'
            else:
                bad = congruent_q(values[i], values[j], q, margin)
                relation = 'differ by a factor q**k'
            if bad:
                raise CongruentRoots('determinant roots {} and {} {}'.format(
                    mp.nstr(to_big(values[i]), 10), mp.nstr(to_big(values[j]), 10), relation))


def characteristic_polynomial(matrix):
    """det(z I - M) as a LaurentPoly."""
    from .laurent import LaurentPoly, MatrixLaurentPoly, poly_det
    n = len(matrix)
    rows = [[LaurentPoly({1: 1, 0: -matrix[i][j]}) if i == j else LaurentPoly({0: -matrix[i][j]})
             for j in range(n)] for i in range(n)]
    return poly_det(MatrixLaurentPoly(rows))


def eigen_decomposition(matrix, tol=None):
    """
    Eigenvalues and right eigenvectors of a diagonalizable scalar matrix.

    Exact Gaussian rational spectra give exact eigenpairs, anything else
    is computed with mpmath. Diagonal matrices keep their diagonal order.

    Returns
    -------
    list of (eigenvalue, eigenvector)

    Raises
    ------
    NonDiagonalizable
    """
    from .laurent import kernel_basis, to_mp_matrix
    from .scalar import is_exact
    n = len(matrix)
    exact_mode = all(is_exact(x) for row in matrix for x in row)
    if all(matrix[i][j] == 0 for i in range(n) for j in range(n) if i != j):
        unit = ExactComplex(1) if exact_mode else mp.mpc(1)
        return [(matrix[i][i], [unit if l == i else unit * 0 for l in range(n)])
                for i in range(n)]
    if exact_mode:
        spectrum = gaussian_rational_roots(characteristic_polynomial(matrix))
        if sum(m for _, m in spectrum) == n:
            pairs = []
            for value, multiplicity in sorted(spectrum, key=lambda item: (
                    magnitude_key(item[0]))):
                shifted = [[matrix[i][j] - (value if i == j else 0) for j in range(n)]
                           for i in range(n)]
                vectors = kernel_basis(shifted)
                if len(vectors) != multiplicity:
                    raise NonDiagonalizable('eigenvalue {} has geometric multiplicity {} < {}'.format(
                        value, len(vectors), multiplicity))
                pairs.extend((value, v) for v in vectors)
            return pairs
    if tol is None:
        tol = mp.mpf(2) ** (-mp.prec // 2)
    values, vectors = mp.eig(to_mp_matrix(matrix))
    if abs(mp.det(vectors)) < tol:
        raise NonDiagonalizable('eigenvector matrix is numerically singular')
    pairs = []
    for k in range(n):
        v = [vectors[i, k] for i in range(n)]
        first = next(x for x in v if abs(x) > tol)
        pairs.append((values[k], [x / first for x in v]))
    pairs.sort(key=lambda item: magnitude_key(item[0]))
    return pairs


def magnitude_key(value):
    value = to_big(value)
    return (abs(value), value.real, value.imag)
