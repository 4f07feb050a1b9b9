# -*- coding: utf-8 -*-
"""
Difference systems Y(z+1) = A(z) Y(z).

The formal solution is normalized as

    Y(z) = z**(r z) e**(-r z) z**(-r/2) (Y_0 + Y_1/z + ...) diag(rho_k**z z**d_k)

so that d_k = (A_{r-1})_kk / rho_k and the Fuchs relation hold exactly.
Genuine solutions are evaluated on a horizontal line in the upper half
plane with principal logarithms.
"""

from collections import namedtuple
from fractions import Fraction
import logging
import math

from mpmath import mp

from .exceptions import (ZeroDeterminant, ResonanceError, NonDiagonalizable, DomainError,
                         SingularityOnPath, PrecisionExhausted, FitResidualTooLarge,
                         ParseError)
from .laurent import (LaurentPoly, MatrixLaurentPoly, RationalMatrix, poly_det,
                      expansion_at_infinity, to_mp_matrix)
from .roots import poly_roots, gaussian_rational_roots, poly_gcd
from .scalar import ExactComplex, to_big, is_zero, working_precision
from . import serialization

logger = logging.getLogger(__name__)

PATH_MARGIN = 1e-6
MAX_ANCHOR = 2 ** 13
MAX_RELATIVE_ERROR = 1e-3
PREFACTOR_FORM = 'z**(r*z) * exp(-r*z) * z**(-r/2) * diag(rho_k**z * z**d_k)'
TOP_TERM_FORM = '(-1)**r * exp(2*pi*i*d_k)'

OPEN_QUESTION_FLAGS = {
    'top_index': 'diagonal entries are fitted with frequencies 0..r',
    'offdiagonal_factor': 'off-diagonal entries are fitted with exp(2*pi*i*(lambda_kl + s)*z)',
}

Rationalization = namedtuple('Rationalization', ['system', 'gauge'])
FuchsCheck = namedtuple('FuchsCheck', ['d_sum', 'root_sum', 'residual'])


def _default_tol(tol):
    return tol if tol is not None else mp.mpf(2) ** (-mp.prec // 2)


class DifferenceSystem(object):
    """
    Validated coefficient matrix of Y(z+1) = A(z) Y(z).

    `matrix` is a MatrixLaurentPoly, or a RationalMatrix for systems
    produced by rational gauges; `r` is its top degree at infinity.
    """

    kind = 'difference'

    def __init__(self, matrix):
        if isinstance(matrix, RationalMatrix):
            matrix = matrix.simplify()
        numerator = matrix.numerator if isinstance(matrix, RationalMatrix) else matrix
        if numerator.is_zero():
            raise ZeroDeterminant('A(z) is the zero matrix')
        self._det_numerator = poly_det(numerator)
        if self._det_numerator.is_zero():
            raise ZeroDeterminant('det A(z) vanishes identically')
        self.matrix = matrix
        self.n = matrix.n
        self.r = matrix.high
        self._expansions = {}

    @staticmethod
    def from_json(data, location='$'):
        if not isinstance(data, dict) or data.get('kind') != 'difference':
            raise ParseError('expected kind "difference"', location + '.kind')
        matrix = serialization.coefficient_matrix_from_json(data, location)
        system = DifferenceSystem(matrix)
        if 'r' in data and data['r'] != system.r:
            raise ParseError('declared degree {} but the coefficients have degree {}'.format(
                data['r'], system.r), location + '.r')
        return system

    def to_json(self):
        data = {'kind': self.kind, 'n': self.n, 'r': self.r}
        if isinstance(self.matrix, RationalMatrix):
            data['coefficients'] = serialization.coefficients_to_json(self.matrix.numerator)
            data['denominator'] = serialization.laurent_to_json(self.matrix.denominator)
        else:
            data['coefficients'] = serialization.coefficients_to_json(self.matrix)
        return data

    # structure

    def is_exact(self):
        return self.matrix.is_exact()

    def is_polynomial(self):
        return isinstance(self.matrix, MatrixLaurentPoly) and self.matrix.is_polynomial()

    def to_big(self):
        return DifferenceSystem(self.matrix.to_big())

    def expansion(self, order):
        """alpha_0..alpha_order with z**-r A(z) = sum alpha_j z**-j."""
        if order not in self._expansions:
            self._expansions[order] = expansion_at_infinity(self.matrix, order, top=self.r)
        return self._expansions[order]

    @property
    def leading(self):
        return self.expansion(1)[0]

    @property
    def rho(self):
        lead = self.leading
        return [lead[k][k] for k in range(self.n)]

    @property
    def d(self):
        second = self.expansion(1)[1]
        return [second[k][k] / rho for k, rho in enumerate(self.rho)]

    def determinant(self):
        """det A(z) as (numerator, denominator) Laurent polynomials."""
        if isinstance(self.matrix, RationalMatrix):
            return self._det_numerator, self.matrix.denominator ** self.n
        return self._det_numerator, LaurentPoly.constant(1)

    def evaluate(self, z):
        value = self.matrix.evaluate(z)
        return to_mp_matrix(value) if isinstance(value, list) else value

    # hypotheses

    def hypotheses(self, tol=None):
        if not self.is_exact():
            tol = _default_tol(tol)
        else:
            tol = 0
        lead = self.leading
        n = self.n
        diagonal = all(is_zero(lead[i][j], tol) for i in range(n) for j in range(n) if i != j)
        rho = self.rho
        nonzero = all(not is_zero(x, tol) for x in rho)
        nonreal = True
        if nonzero:
            for i in range(n):
                for j in range(i + 1, n):
                    ratio = rho[i] / rho[j]
                    imag = ratio.im if isinstance(ratio, ExactComplex) else ratio.imag
                    if is_zero(imag, tol):
                        nonreal = False
        return {'leading_diagonal': diagonal, 'rho_nonzero': nonzero,
                'rho_ratios_nonreal': nonreal}

    def require_hypotheses(self):
        flags = self.hypotheses()
        if not flags['leading_diagonal']:
            raise NonDiagonalizable('the leading coefficient A_r is not diagonal')
        if not flags['rho_nonzero']:
            raise DomainError('the leading coefficient A_r is singular')
        if not flags['rho_ratios_nonreal']:
            raise DomainError('rho_i/rho_j is real for some i != j')

    def singular_points(self, precision=None):
        """Roots of det A and poles of A; the lattice generators of singular points."""
        numerator, denominator = self.determinant()
        points = []
        for p in (numerator, denominator):
            if p.is_zero() or (p.high == p.low and p.low == 0):
                continue
            found = poly_roots(p, precision)
            points.extend(root for root, _ in found.roots)
            if found.zero_order != 0:
                points.append(mp.mpc(0))
        if isinstance(self.matrix, MatrixLaurentPoly) and self.matrix.low < 0:
            points.append(mp.mpc(0))
        return points

    def __repr__(self):
        return 'DifferenceSystem(n={}, r={})'.format(self.n, self.r)


# rationalization

class GammaGauge(object):
    """
    Scalar gauge prod Gamma(z - x_i): multiplying solutions by it
    multiplies the coefficient matrix by prod (z - x_i).
    """

    def __init__(self, poles):
        self.poles = list(poles)

    def factor(self):
        return LaurentPoly.from_roots(self.poles)

    def evaluate(self, z):
        value = mp.mpc(1)
        for x in self.poles:
            value *= mp.gamma(to_big(z) - to_big(x))
        return value

    def shift_ratio(self, z):
        return self.evaluate(to_big(z) + 1) / self.evaluate(z)

    def to_json(self):
        return {'type': 'gamma', 'poles': [serialization.scalar_to_json(x) for x in self.poles]}


def split_denominator(raw):
    """
    Write a rational or Laurent matrix as N(z)/den(z) with polynomial N
    and den, common factors removed (exact input only).
    """
    if isinstance(raw, RationalMatrix):
        numerator, denominator = raw.numerator, raw.denominator
    else:
        numerator, denominator = raw, LaurentPoly.constant(1)
    if denominator.low != 0:
        numerator = numerator * LaurentPoly.z(-denominator.low)
        denominator = denominator.times_z(-denominator.low)
    low = numerator.low
    if low is not None and low < 0:
        numerator = numerator * LaurentPoly.z(-low)
        denominator = denominator.times_z(-low)
    if numerator.is_exact() and denominator.is_exact() and denominator.high > 0:
        common = denominator
        for row in numerator.entries:
            for e in row:
                if not e.is_zero():
                    common = poly_gcd(common, e)
        if common.high > 0:
            numerator = numerator.map(lambda e: e.exact_quotient(common))
            denominator = denominator.exact_quotient(common)
    return numerator, denominator


def denominator_roots(denominator):
    """Roots of a polynomial denominator, repeated by multiplicity; exact when possible."""
    if denominator.high == 0:
        return []
    origin = [ExactComplex(0)] * denominator.low
    reduced = denominator.times_z(-denominator.low)
    if reduced.high == 0:
        return origin
    if reduced.is_exact():
        exact_roots = gaussian_rational_roots(reduced)
        if sum(m for _, m in exact_roots) == reduced.high:
            return origin + [x for x, m in exact_roots for _ in range(m)]
    return origin + [x for x, m in poly_roots(reduced).roots for _ in range(m)]


def rationalize_difference(raw):
    """
    Multiply a rational coefficient matrix by (z - x_1)...(z - x_s), the
    monic common denominator, recording the matching Gamma gauge.

    Returns
    -------
    Rationalization
        The polynomial DifferenceSystem and its GammaGauge.
    """
    numerator, denominator = split_denominator(raw)
    poles = denominator_roots(denominator)
    polynomial = numerator * (1 / denominator.leading())
    logger.debug('rationalized with %d poles', len(poles))
    return Rationalization(DifferenceSystem(polynomial), GammaGauge(poles))


def verify_fuchs(system):
    """
    Sum of the d_k plus the sum of the roots of det A (by Vieta).

    Returns
    -------
    FuchsCheck
        Exact for exact systems; the residual is zero on every valid
        polynomial system.
    """
    if not system.is_polynomial():
        raise DomainError('the Fuchs relation is checked on polynomial systems')
    det = system.determinant()[0]
    top = system.n * system.r
    lead = det.coefficient(top)
    if lead == 0:
        raise DomainError('det A(z) has degree below n*r')
    root_sum = -det.coefficient(top - 1) / lead
    d_sum = sum(system.d[1:], system.d[0])
    return FuchsCheck(d_sum, root_sum, d_sum + root_sum)


# formal solutions

def _negbinom(k, j):
    """binomial(-k, j)."""
    if k == 0:
        return 1 if j == 0 else 0
    return (-1) ** j * math.comb(k + j - 1, j)


def _exp_series(g, order, one):
    e = [one]
    for m in range(1, order + 1):
        total = one * 0
        for k in range(1, m + 1):
            total = total + g[k] * e[m - k] * k
        e.append(total / m)
    return e


def _binomial_series(beta, order, one):
    c = [one]
    for j in range(1, order + 1):
        c.append(c[-1] * (beta - (j - 1)) / j)
    return c


def _mul_series(a, b, order):
    return [sum((a[i] * b[m - i] for i in range(1, m + 1)), a[0] * b[m]) for m in range(order + 1)]


def _level(m, acc, ys, eps, alpha, n, zero):
    """
    Coefficient of z**-m in e(z) y(z+1) - z**-r A(z) y(z) for one column,
    `acc` holding the re-expansion of y(z+1) over the completed terms
    and ys[-1] the partially known term.
    """
    partial_index = len(ys) - 1
    partial = ys[-1]
    out = [zero] * n
    for a in range(m + 1):
        b = m - a
        w = acc[b]
        if b >= partial_index:
            c = _negbinom(partial_index, b - partial_index)
            if c:
                w = [wi + pi * c for wi, pi in zip(w, partial)]
        e = eps[a]
        out = [o + e * wi for o, wi in zip(out, w)]
    for j in range(m + 1):
        k = m - j
        if k > partial_index:
            continue
        y = ys[k]
        aj = alpha[j]
        out = [out[row] - sum((aj[row][c] * y[c] for c in range(n)), zero) for row in range(n)]
    return out


class DiffFormalSolution(object):

    def __init__(self, system, coefficients, d):
        self.system = system
        self.coefficients = coefficients
        self.d = d
        self.rho = system.rho
        self.r = system.r
        self.n = system.n
        self.order = len(coefficients) - 1
        self._big = None

    def big_coefficients(self):
        if self._big is None:
            self._big = [to_mp_matrix(c) for c in self.coefficients]
        return self._big

    def log_prefactor(self, z):
        z = to_big(z)
        log_z = mp.log(z)
        r = self.r
        return r * z * log_z - r * z - mp.mpf(r) / 2 * log_z

    def exponent_factor(self, z):
        z = to_big(z)
        log_z = mp.log(z)
        return mp.diag([mp.exp(z * mp.log(to_big(rho)) + to_big(d) * log_z)
                        for rho, d in zip(self.rho, self.d)])

    def series(self, z, terms=None):
        terms = self.order + 1 if terms is None else terms
        z = to_big(z)
        total = mp.zeros(self.n, self.n)
        power = mp.mpc(1)
        for coefficient in self.big_coefficients()[:terms]:
            total += coefficient * power
            power /= z
        return total

    def term_sizes(self, z):
        z = abs(to_big(z))
        sizes = []
        for m, coefficient in enumerate(self.big_coefficients()):
            size = max(abs(coefficient[i, j]) for i in range(self.n) for j in range(self.n))
            sizes.append(size / z ** m)
        return sizes

    def evaluate(self, z, terms=None):
        return mp.exp(self.log_prefactor(z)) * self.series(z, terms) * self.exponent_factor(z)

    def residual(self, z):
        return series_residual(self, z)


def formal_solution_difference(system, order):
    """
    Formal solution coefficients Y_0..Y_order (Y_0 = I).

    Each column solves, level by level in 1/z, the substitution identity
    e_i(z) y(z+1) = z**-r A(z) y(z) with
    e_i = rho_i exp(g(1/z)) (1 + 1/z)**(d_i - r/2) and
    g(x) = r sum_j (-1)**(j+1) x**j / (j (j+1)).
    """
    system.require_hypotheses()
    n, r = system.n, system.r
    rho = system.rho
    for i in range(n):
        for j in range(i + 1, n):
            if rho[i] == rho[j]:
                raise ResonanceError('rho_{} = rho_{}'.format(i + 1, j + 1))
    exact_mode = system.is_exact()
    lift = ExactComplex.coerce if exact_mode else to_big
    one = lift(1)
    zero = lift(0)
    alpha = system.expansion(order + 1)
    d = system.d
    g = [zero] + [lift(Fraction(r * (-1) ** (j + 1), j * (j + 1))) for j in range(1, order + 2)]
    exp_g = _exp_series(g, order + 1, one)

    columns = []
    for i in range(n):
        beta = d[i] - lift(Fraction(r, 2))
        eps = [rho[i] * c for c in _mul_series(exp_g, _binomial_series(beta, order + 1, one),
                                              order + 1)]
        first = [one if l == i else zero for l in range(n)]
        ys = [first]
        acc = [[zero] * n for _ in range(order + 2)]
        acc[0] = list(first)
        for m in range(1, order + 1):
            ys.append([zero] * n)
            level = _level(m, acc, ys, eps, alpha, n, zero)
            for l in range(n):
                if l != i:
                    ys[m][l] = -level[l] / (rho[i] - rho[l])
            upper = _level(m + 1, acc, ys, eps, alpha, n, zero)
            ys[m][i] = upper[i] / (rho[i] * m)
            for b in range(m, order + 2):
                c = _negbinom(m, b - m)
                acc[b] = [a + y * c for a, y in zip(acc[b], ys[m])]
        columns.append(ys)
    coefficients = [[[columns[i][m][l] for i in range(n)] for l in range(n)]
                    for m in range(order + 1)]
    logger.debug('difference formal solution: n=%s r=%s order=%s', n, r, order)
    return DiffFormalSolution(system, coefficients, d)


def series_residual(formal, z):
    """
    Largest entry of e(z) Y(z+1) - z**-r A(z) Y(z) for the truncated
    series, with e(z) the exact prefactor and exponent shift ratio.
    """
    z = to_big(z)
    x = 1 / z
    r = formal.r
    log1p = mp.log(1 + x)
    ratio = mp.exp(r * (z + 1) * log1p - r - mp.mpf(r) / 2 * log1p)
    shift = mp.diag([to_big(rho) * mp.exp(to_big(d) * log1p)
                     for rho, d in zip(formal.rho, formal.d)])
    lhs = ratio * formal.series(z + 1) * shift
    rhs = formal.system.evaluate(z) * formal.series(z) / z ** r
    difference = lhs - rhs
    return max(abs(difference[i, j]) for i in range(formal.n) for j in range(formal.n))


# genuine solutions

class GenuineSolutionSample(object):

    def __init__(self, side, points, values, terms, anchors, errors, lattice):
        self.side = side
        self.points = points
        self.values = values
        self.terms = terms
        self.anchors = anchors
        self.errors = errors
        self.lattice = lattice

    @property
    def error(self):
        return max(self.errors) if self.errors else mp.mpf(0)

    def to_json(self):
        return {
            'side': self.side,
            'points': [serialization.scalar_to_json(z) for z in self.points],
            'values': [[[serialization.scalar_to_json(v[i, j]) for j in range(v.cols)]
                        for i in range(v.rows)] for v in self.values],
            'truncation_terms': self.terms,
            'anchor_steps': self.anchors,
            'estimated_error': mp.nstr(self.error, 5),
            'singular_points': [serialization.scalar_to_json(p) for p in self.lattice],
        }


def check_path(z, lattice, margin=PATH_MARGIN):
    for point in lattice:
        delta = z - point
        if abs(delta.imag) < margin and abs(delta.real - mp.nint(delta.real)) < margin:
            raise SingularityOnPath('{} is congruent to the singular point {}'.format(
                mp.nstr(z, 10), mp.nstr(point, 10)))


def _anchor(formal, z, side, tol):
    """Anchor point, step count, number of series terms and truncation estimate."""
    distance = max(mp.mpf(8), 2 * abs(z.imag))
    while distance <= MAX_ANCHOR:
        if side == 'right':
            steps = max(int(mp.ceil(distance - z.real)), 0)
            anchor = z + steps
        else:
            steps = max(int(mp.ceil(distance + z.real)), 0)
            anchor = z - steps
        sizes = formal.term_sizes(anchor)
        terms, estimate = None, None
        for m in range(1, len(sizes)):
            if all(s == 0 for s in sizes[m:]):
                terms, estimate = m, mp.mpf(0)
                break
        if terms is None:
            best = min((m for m in range(1, len(sizes)) if sizes[m] != 0),
                       key=lambda m: sizes[m])
            terms, estimate = best, sizes[best]
        if estimate <= tol:
            return anchor, steps, terms, estimate
        distance *= 2
    raise PrecisionExhausted('no anchor within |Re z| <= {} reaches truncation error {}'.format(
        MAX_ANCHOR, mp.nstr(tol, 5)))


def propagate(system, formal, z, side, tol):
    """
    Genuine solution at z: truncated series at an anchor on the chosen
    side, then unit steps of Y(z+1) = A(z) Y(z) back to z.
    """
    anchor, steps, terms, estimate = _anchor(formal, z, side, tol)
    start = formal.evaluate(anchor, terms)
    value = start
    product = mp.eye(system.n)
    point = anchor
    for _ in range(steps):
        if side == 'right':
            point -= 1
            step = mp.inverse(system.evaluate(point))
        else:
            step = system.evaluate(point)
            point += 1
        value = step * value
        product = step * product
    amplification = mp.mnorm(product, 1) * mp.mnorm(start, 1) / mp.mnorm(value, 1)
    error = estimate * amplification
    logger.debug('%s solution at %s: anchor %s, %s terms, error %s', side,
                 mp.nstr(z, 8), mp.nstr(anchor, 8), terms, mp.nstr(error, 5))
    if error > MAX_RELATIVE_ERROR:
        raise PrecisionExhausted('estimated relative error {} at {}'.format(
            mp.nstr(error, 5), mp.nstr(z, 8)))
    return value, terms, steps, error


def genuine_solution(system, side, targets, precision=128, order=40, tol=None, formal=None):
    """
    Evaluate the left or right genuine solution at the target points.

    Parameters
    ----------
    system : DifferenceSystem
    side : str
        'left' (asymptotics as Re z -> -infinity) or 'right'.
    targets : iterable of complex
        Points off the singular lattice, Im z > 0.
    precision : int
        Binary working precision.
    order : int
        Order of the formal series used at the anchors.
    tol : mpf
        Truncation error goal at the anchors (default 2**(-precision/2)).

    Returns
    -------
    GenuineSolutionSample
    """
    if side not in ('left', 'right'):
        raise ValueError('side must be "left" or "right"')
    with working_precision(precision):
        big = system.to_big()
        big.require_hypotheses()
        tol = _default_tol(tol)
        if formal is None:
            formal = formal_solution_difference(big, order)
        lattice = big.singular_points(precision)
        targets = [to_big(z) for z in targets]
        for z in targets:
            if z.imag <= 0:
                raise DomainError('genuine solutions are evaluated in the upper half plane')
            check_path(z, lattice)
        values, terms, anchors, errors = [], [], [], []
        for z in targets:
            value, used, steps, error = propagate(big, formal, z, side, tol)
            values.append(value)
            terms.append(used)
            anchors.append(steps)
            errors.append(error)
        return GenuineSolutionSample(side, targets, values, terms, anchors, errors, lattice)


def recurrence_residual(system, sample):
    """
    Relative residual of Y(z+1) - A(z) Y(z) over the pairs of sample
    points one unit apart.
    """
    residual = mp.mpf(0)
    points = sample.points
    for i, z in enumerate(points):
        for j, w in enumerate(points):
            if abs(w - z - 1) < mp.eps * 16 * max(1, abs(z)):
                difference = sample.values[j] - system.evaluate(z) * sample.values[i]
                residual = max(residual, mp.mnorm(difference, 1) / mp.mnorm(sample.values[j], 1))
    return residual


def asymptotic_contract(sample, formal, k):
    """
    max |z|**k |Y(z) (prefactor)**-1 - sum_{j<k} Y_j z**-j| over the
    sample points.
    """
    worst = mp.mpf(0)
    for z, value in zip(sample.points, sample.values):
        normalized = value * mp.inverse(formal.exponent_factor(z)) / mp.exp(formal.log_prefactor(z))
        difference = normalized - formal.series(z, k)
        size = max(abs(difference[i, j]) for i in range(formal.n) for j in range(formal.n))
        worst = max(worst, size * abs(z) ** k)
    return worst


# monodromy

class DiffMonodromyReport(object):
    """
    Samples of P(z) = Y_r(z)**-1 Y_l(z) on z0 + j/m and the fitted
    exponential polynomial structure.
    """

    def __init__(self, points, values, periodicity_residual, d, rho, log_rho, lambdas,
                 precision, error):
        self.points = points
        self.values = values
        self.periodicity_residual = periodicity_residual
        self.d = d
        self.rho = rho
        self.log_rho = log_rho
        self.lambdas = lambdas
        self.precision = precision
        self.error = error
        self.coefficients = {}
        self.entry_residuals = {}
        self.fit_residual = None
        self.constant_terms = []
        self.top_terms = []
        self.expected_top_terms = []
        self.d_consistency = []
        self.r = None
        self.flags = dict(OPEN_QUESTION_FLAGS)

    @property
    def n(self):
        return len(self.d)

    def to_json(self):
        def big(x):
            return serialization.scalar_to_json(x)

        data = {
            'kind': 'difference',
            'precision': self.precision,
            'points': [big(z) for z in self.points],
            'periodicity_residual': mp.nstr(self.periodicity_residual, 5),
            'estimated_error': mp.nstr(self.error, 5),
            'd': [big(x) for x in self.d],
            'rho': [big(x) for x in self.rho],
            'log_rho_branch': 'principal',
            'log_rho': [big(x) for x in self.log_rho],
            'lambda': self.lambdas,
            'flags': self.flags,
        }
        if self.fit_residual is not None:
            data['fit'] = {
                'residual': mp.nstr(self.fit_residual, 5),
                'coefficients': {'{},{}'.format(k + 1, l + 1): [big(c) for c in cs]
                                 for (k, l), cs in sorted(self.coefficients.items())},
                'entry_residuals': {'{},{}'.format(k + 1, l + 1): mp.nstr(v, 5)
                                    for (k, l), v in sorted(self.entry_residuals.items())},
                'constant_terms': [big(c) for c in self.constant_terms],
                'top_terms': [big(c) for c in self.top_terms],
                'prefactor': {'form': PREFACTOR_FORM, 'top_term': TOP_TERM_FORM,
                              'sign': (-1) ** self.r},
                'expected_top_terms': [big(c) for c in self.expected_top_terms],
                'd_consistency': [mp.nstr(x, 5) for x in self.d_consistency],
            }
        return data


def lambda_matrix(log_rho):
    """lambda_kl: the least integer exceeding Re((ln rho_l - ln rho_k) / 2 pi i)."""
    n = len(log_rho)
    return [[int(mp.floor(((log_rho[l] - log_rho[k]) / (2j * mp.pi)).real)) + 1 if k != l else 0
             for l in range(n)] for k in range(n)]


def _grid_origin(lattice, line, samples):
    origin = mp.mpc(0, line)
    for attempt in range(1, 50):
        try:
            for j in range(samples):
                check_path(origin + mp.mpf(j) / samples, lattice)
                check_path(origin + mp.mpf(j) / samples + 1, lattice)
            return origin
        except SingularityOnPath:
            origin = mp.mpc(mp.mpf(attempt) / (7 * samples * 3), line)
    raise SingularityOnPath('no sampling line at Im z = {} avoids the singular points'.format(line))


def fit_monodromy(report, r, tol=1e-8, strict=False):
    """
    Least squares fit of each entry of P to
    p_kk = sum_{s=0..r} c_kk^(s) e**(2 pi i s z) and
    p_kl = sum_{s<r} c_kl^(s) e**(2 pi i (lambda_kl + s) z).
    """
    n = report.n
    m = len(report.points)
    worst = mp.mpf(0)
    for k in range(n):
        for l in range(n):
            if k == l:
                frequencies = list(range(r + 1))
            else:
                frequencies = [report.lambdas[k][l] + s for s in range(r)]
            data = mp.matrix([v[k, l] for v in report.values])
            if frequencies:
                basis = mp.matrix(m, len(frequencies))
                for j, z in enumerate(report.points):
                    for s, f in enumerate(frequencies):
                        basis[j, s] = mp.exp(2j * mp.pi * f * z)
                solution, _ = mp.qr_solve(basis, data)
                coefficients = [solution[s] for s in range(len(frequencies))]
                fitted = basis * solution
                residual = max(abs(fitted[j] - data[j]) for j in range(m))
            else:
                coefficients = []
                residual = max(abs(data[j]) for j in range(m))
            report.coefficients[k, l] = coefficients
            report.entry_residuals[k, l] = residual
            worst = max(worst, residual)
    report.fit_residual = worst
    report.constant_terms = [report.coefficients[k, k][0] for k in range(n)]
    report.top_terms = [report.coefficients[k, k][r] for k in range(n)]
    # the z**(r z) e**(-r z) z**(-r/2) prefactor contributes (-1)**r to the top term
    report.r = r
    report.expected_top_terms = [(-1) ** r * mp.exp(2j * mp.pi * to_big(d)) for d in report.d]
    report.d_consistency = [abs(t - e) for t, e in zip(report.top_terms, report.expected_top_terms)]
    if worst > tol:
        message = 'monodromy fit residual {} exceeds {}'.format(mp.nstr(worst, 5), tol)
        if strict:
            raise FitResidualTooLarge(message)
        logger.warning(message)
    return report


def monodromy_difference(system, samples=0, precision=128, order=40, tol=1e-8,
                         anchor_line=Fraction(1, 2), fit=True, strict=False):
    """
    Sample P(z) = Y_r(z)**-1 Y_l(z) on a horizontal line, check
    P(z+1) = P(z) and fit the exponential polynomial structure.
    """
    with working_precision(precision):
        big = system.to_big()
        big.require_hypotheses()
        n, r = big.n, big.r
        formal = formal_solution_difference(big, order)
        count = samples or 2 * (r + 2) + 1
        if count <= 2 * r + 2:
            count = 2 * r + 3
        lattice = big.singular_points(precision)
        origin = _grid_origin(lattice, to_big(anchor_line).real, count)
        points = [origin + mp.mpf(j) / count for j in range(count)]
        target = _default_tol(None)
        values, periodicity, error = [], mp.mpf(0), mp.mpf(0)
        for z in points:
            pair = []
            for w in (z, z + 1):
                left, _, _, e_left = propagate(big, formal, w, 'left', target)
                right, _, _, e_right = propagate(big, formal, w, 'right', target)
                pair.append(mp.inverse(right) * left)
                error = max(error, e_left, e_right)
            values.append(pair[0])
            difference = pair[1] - pair[0]
            periodicity = max(periodicity, max(abs(difference[i, j])
                                               for i in range(n) for j in range(n)))
        log_rho = [mp.log(to_big(x)) for x in big.rho]
        report = DiffMonodromyReport(points, values, periodicity, list(big.d), list(big.rho),
                                     log_rho, lambda_matrix(log_rho), precision, error)
        logger.info('difference monodromy: %d samples, periodicity residual %s',
                    count, mp.nstr(periodicity, 5))
        if periodicity > tol:
            logger.warning('periodicity residual %s exceeds %s', mp.nstr(periodicity, 5), tol)
        if fit:
            fit_monodromy(report, r, tol, strict)
        return report


def gauge_covariance(system, gauge, samples=0, precision=128, order=40, tol=1e-8,
                     anchor_line=Fraction(1, 2)):
    """
    Compare the monodromy of A with the monodromy of
    R(z+1) A(z) R(z)**-1 for a gauge R invertible off {0, infinity}.

    Returns
    -------
    (bool, mpf)
        Whether both samples agree up to constant diagonal factors, and
        the largest discrepancy.
    """
    from .gauge.transformation import GaugeTransformation, apply_gauge
    from .monodromy import monodromy_equivalent

    if not isinstance(gauge, GaugeTransformation):
        gauge = GaugeTransformation(gauge, 'difference')
    transformed = apply_gauge(gauge, system)
    original = monodromy_difference(system, samples, precision, order, tol, anchor_line, fit=False)
    count = len(original.points)
    moved = monodromy_difference(transformed, count, precision, order, tol, anchor_line, fit=False)
    if any(abs(a - b) > tol for a, b in zip(original.points, moved.points)):
        raise SingularityOnPath('the gauged system needs a different sampling line')
    with working_precision(precision):
        return monodromy_equivalent(original.values, moved.values, tol)
