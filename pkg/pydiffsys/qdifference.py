# -*- coding: utf-8 -*-
"""
q-difference systems Y(qz) = Q(z) Y(z) with |q| > 1.

Everything is evaluated in the t-plane, z = exp(t ln q) with the
principal ln q, so that z**rho = exp(t ln lambda) and the Gaussian
prefactor q**((t**2 - t)/2) carry no branch cuts. The local solutions are

    Y_0(t) = A(z) diag(lambda_i**t),        Q(0) A_0 = A_0 diag(lambda_i)
    Y_inf(t) = q**(mu (t**2 - t)/2) B(z) diag(m_i**t),   Q_mu B_0 = B_0 diag(m_i)

with lambda_i = q**rho_i and m_i = q**(-sigma_i).
"""

import logging
import warnings

from mpmath import mp

from .difference import Rationalization, split_denominator, denominator_roots, PATH_MARGIN
from .elliptic import PeriodLattice
from .exceptions import (ZeroDeterminant, ResonanceError, DomainError, SingularityOnPath,
                         PrecisionExhausted, ParseError, BranchCutCrossing)
from .laurent import (LaurentPoly, RationalMatrix, poly_det, solve,
                      to_mp_matrix, max_norm)
from .roots import eigen_decomposition, magnitude_key, poly_roots
from .scalar import ExactComplex, is_exact, to_big, is_zero, magnitude, working_precision
from . import serialization

logger = logging.getLogger(__name__)

MAX_STEPS = 400
ZERO_RADIUS = mp.mpf(1) / 2
CIRCLE_RADIUS = mp.mpf(1) / 100
CIRCLE_POINTS = 16


def _coerce_q(q):
    if is_exact(q):
        q = ExactComplex.coerce(q)
    else:
        q = to_big(q)
    if not magnitude(q) > 1:
        raise DomainError('|q| must exceed 1, got {}'.format(q))
    return q


def _norm(matrix):
    return max(abs(matrix[i, j]) for i in range(matrix.rows) for j in range(matrix.cols))


class QDifferenceSystem(object):
    """
    Validated coefficient matrix of Y(qz) = Q(z) Y(z).

    `mu` is the top degree of Q; `low` its lowest exponent.
    """

    kind = 'qdifference'

    def __init__(self, matrix, q):
        if isinstance(matrix, RationalMatrix):
            matrix = matrix.simplify()
            if isinstance(matrix, RationalMatrix):
                raise DomainError('Q(z) has poles off the origin; use rationalize_q')
        self.q = _coerce_q(q)
        if matrix.is_zero() or poly_det(matrix).is_zero():
            raise ZeroDeterminant('det Q(z) vanishes identically')
        self.matrix = matrix
        self.n = matrix.n
        self.mu = matrix.high
        self.low = matrix.low
        self._spectra = {}
        self._roots = None

    @staticmethod
    def from_json(data, location='$', rationalize=False):
        if not isinstance(data, dict) or data.get('kind') != 'qdifference':
            raise ParseError('expected kind "qdifference"', location + '.kind')
        if 'q' not in data:
            raise ParseError('missing key {!r}'.format('q'), location)
        q = serialization.scalar_from_json(data['q'], location + '.q')
        matrix = serialization.coefficient_matrix_from_json(data, location)
        if rationalize:
            system = rationalize_q(matrix, q).system
        else:
            system = QDifferenceSystem(matrix, q)
        if 'mu' in data and data['mu'] != system.mu:
            raise ParseError('declared degree {} but the coefficients have degree {}'.format(
                data['mu'], system.mu), location + '.mu')
        return system

    def to_json(self):
        return {'kind': self.kind, 'n': self.n, 'mu': self.mu,
                'q': serialization.scalar_to_json(self.q),
                'coefficients': serialization.coefficients_to_json(self.matrix)}

    # structure

    def is_exact(self):
        return self.matrix.is_exact() and is_exact(self.q)

    def to_big(self):
        return QDifferenceSystem(self.matrix.to_big(), to_big(self.q))

    @property
    def log_q(self):
        return mp.log(to_big(self.q))

    def coefficient(self, k):
        return self.matrix.coefficient(k)

    @property
    def leading(self):
        return self.coefficient(self.mu)

    def is_normalized(self, tol=None):
        """Q_mu diagonal."""
        tol = 0 if self.is_exact() else (tol or mp.mpf(2) ** (-mp.prec // 2))
        lead = self.leading
        return all(is_zero(lead[i][j], tol) for i in range(self.n) for j in range(self.n) if i != j)

    def spectrum(self, site):
        """Eigenpairs of Q(0) ('zero') or of Q_mu ('infinity')."""
        if site not in self._spectra:
            if site == 'zero':
                if self.low != 0:
                    raise DomainError('Q(z) must be polynomial with det Q(0) != 0 at the origin')
                matrix = self.coefficient(0)
            elif site == 'infinity':
                matrix = self.leading
            else:
                raise ValueError('site must be "zero" or "infinity"')
            pairs = eigen_decomposition(matrix)
            if site == 'zero':
                pairs = sorted(pairs, key=lambda pair: magnitude_key(pair[0]))
            if any(magnitude(value) == 0 for value, _ in pairs):
                raise DomainError('the {} coefficient of Q is singular'.format(
                    'constant' if site == 'zero' else 'leading'))
            self._spectra[site] = pairs
        return self._spectra[site]

    @property
    def sigma(self):
        log_q = self.log_q
        return [-mp.log(to_big(m)) / log_q for m, _ in self.spectrum('infinity')]

    @property
    def rho(self):
        log_q = self.log_q
        return [mp.log(to_big(lam)) / log_q for lam, _ in self.spectrum('zero')]

    def evaluate(self, z):
        value = self.matrix.evaluate(z)
        return to_mp_matrix(value) if isinstance(value, list) else value

    def evaluate_t(self, t):
        return self.evaluate(mp.exp(to_big(t) * self.log_q))

    def det_roots(self):
        """Nonzero roots of det Q at the working precision, cached."""
        if self._roots is None:
            found = poly_roots(poly_det(self.matrix))
            self._roots = [root for root, _ in found.roots]
        return self._roots

    def hypotheses(self):
        flags = {'normalized': self.is_normalized()}
        for site in ('zero', 'infinity'):
            try:
                pairs = self.spectrum(site)
                check_nonresonant([v for v, _ in pairs], self.q, site)
                flags[site] = True
            except (DomainError, ResonanceError) as e:
                logger.debug('%s hypothesis fails: %s', site, e)
                flags[site] = False
        return flags

    def __repr__(self):
        return 'QDifferenceSystem(n={}, mu={}, q={})'.format(self.n, self.mu, self.q)


def check_nonresonant(multipliers, q, site):
    """
    Raise ResonanceError when two local multipliers differ by a factor
    q**k, k != 0.
    """
    qb = to_big(q)
    log_abs_q = mp.log(abs(qb))
    for i, a in enumerate(multipliers):
        for l, b in enumerate(multipliers):
            if i == l:
                continue
            ratio = b / a
            k = int(mp.nint(mp.log(magnitude(ratio)) / log_abs_q))
            if k < 1:
                continue
            if is_exact(ratio) and is_exact(q):
                resonant = ratio == ExactComplex.coerce(q) ** k
            else:
                resonant = abs(to_big(ratio) - qb ** k) < PATH_MARGIN * abs(qb ** k)
            if resonant:
                raise ResonanceError('{} multipliers {} and {} differ by q**{}'.format(
                    site, a, b, k))


# scalar equations

class ScalarQSolution(object):
    """
    Solutions of g(qz) = (z - m) g(z).

    For m = 0 both are f(t) = q**((t**2 - t)/2). Otherwise z = m zbar,
    tbar = t - ln m / ln q and

        g_0(t) = exp(pi i tbar) m**tbar y_0(zbar),  y_0 = prod_{k>=1} (1 - zbar/q**k)
        g_inf(t) = exp(pi i tbar) m**tbar y_inf(tbar)

    with y_inf = q**((tbar**2 - tbar)/2) exp(-pi i tbar) prod_{k>=0} (1 - q**-k/zbar)**-1.
    """

    def __init__(self, m, q):
        self.m = m
        self.q = _coerce_q(q)

    @property
    def log_q(self):
        return mp.log(to_big(self.q))

    def gaussian(self, t):
        """q**((t**2 - t)/2); exact for an integer t and exact q."""
        if isinstance(t, int) and is_exact(self.q):
            return self.q ** ((t * t - t) // 2)
        t = to_big(t)
        return mp.exp((t * t - t) / 2 * self.log_q)

    def _product_terms(self, first):
        """first, first/q, first/q**2, ... until the tail is below 2**-prec."""
        q = to_big(self.q)
        bound = mp.mpf(2) ** (-mp.prec) * (abs(q) - 1) / abs(q)
        term = first
        for _ in range(100000):
            yield term
            if abs(term) < bound:
                return
            term = term / q
        raise PrecisionExhausted('infinite product did not converge')

    def y0(self, zbar):
        zbar = to_big(zbar)
        value = mp.mpc(1)
        for term in self._product_terms(zbar / to_big(self.q)):
            factor = 1 - term
            if abs(factor) < PATH_MARGIN:
                raise DomainError('y_0 is evaluated at its zero {}'.format(mp.nstr(zbar, 10)))
            value *= factor
        return value

    def yinf(self, tbar):
        tbar = to_big(tbar)
        zbar = mp.exp(tbar * self.log_q)
        value = mp.mpc(1)
        for term in self._product_terms(1 / zbar):
            factor = 1 - term
            if abs(factor) < PATH_MARGIN:
                raise DomainError('y_inf is evaluated at its pole {}'.format(mp.nstr(zbar, 10)))
            value /= factor
        return self.gaussian(tbar) * mp.exp(-1j * mp.pi * tbar) * value

    def _shift(self, t):
        log_m = mp.log(to_big(self.m))
        tbar = to_big(t) - log_m / self.log_q
        return tbar, mp.exp(1j * mp.pi * tbar + tbar * log_m)

    def zero_solution(self, t):
        if self.m == 0:
            return self.gaussian(t)
        tbar, prefactor = self._shift(t)
        return prefactor * self.y0(mp.exp(tbar * self.log_q))

    def infinity_solution(self, t):
        if self.m == 0:
            return self.gaussian(t)
        tbar, prefactor = self._shift(t)
        return prefactor * self.yinf(tbar)

    def residual(self, t, site='zero'):
        """|g(t+1) - (z - m) g(t)| / |g(t+1)|."""
        solution = self.zero_solution if site == 'zero' else self.infinity_solution
        t = to_big(t)
        z = mp.exp(t * self.log_q)
        after = solution(t + 1)
        return abs(after - (z - to_big(self.m)) * solution(t)) / abs(after)


def scalar_q_solution(m, q):
    return ScalarQSolution(m, q)


class QScalarGauge(object):
    """
    prod g_i over the poles a_i: multiplying solutions by it multiplies
    Q(z) by prod (z - a_i).
    """

    def __init__(self, poles, q):
        self.poles = list(poles)
        self.q = q
        self._solutions = [scalar_q_solution(a, q) for a in self.poles]

    def factor(self):
        return LaurentPoly.from_roots(self.poles)

    def evaluate(self, t, site='zero'):
        value = mp.mpc(1)
        for solution in self._solutions:
            if site == 'zero':
                value *= solution.zero_solution(t)
            else:
                value *= solution.infinity_solution(t)
        return value

    def shift_ratio(self, t, site='zero'):
        t = to_big(t)
        return self.evaluate(t + 1, site) / self.evaluate(t, site)

    def to_json(self):
        return {'type': 'q_scalar', 'q': serialization.scalar_to_json(self.q),
                'poles': [serialization.scalar_to_json(a) for a in self.poles]}


def rationalize_q(raw, q):
    """
    Multiply a rational coefficient matrix by the monic common denominator
    (z - a_1)...(z - a_l), recording the matching QScalarGauge.

    Returns
    -------
    Rationalization
    """
    numerator, denominator = split_denominator(raw)
    poles = denominator_roots(denominator)
    polynomial = numerator * (1 / denominator.leading())
    logger.debug('q-rationalized with %d poles', len(poles))
    return Rationalization(QDifferenceSystem(polynomial, q), QScalarGauge(poles, q))


# local solutions

class QLocalSolution(object):
    """
    Truncated local series at 0 (A_k, powers z**k) or at infinity
    (B_k, powers z**-k) with the local multipliers.
    """

    def __init__(self, system, site, coefficients, multipliers):
        self.system = system
        self.site = site
        self.coefficients = coefficients
        self.multipliers = multipliers
        self.n = system.n
        self.mu = system.mu
        self.q = system.q
        self.order = len(coefficients) - 1
        self._big = None
        self._radius = None

    @property
    def log_q(self):
        return mp.log(to_big(self.q))

    @property
    def exponents(self):
        """rho at the origin, sigma at infinity."""
        logs = [mp.log(to_big(x)) / self.log_q for x in self.multipliers]
        return logs if self.site == 'zero' else [-x for x in logs]

    @property
    def prefactor(self):
        if self.site == 'zero':
            return None
        return {'type': 'q_gaussian', 'power': serialization.scalar_to_json(
            ExactComplex(self.mu) / 2)}

    def big_coefficients(self):
        if self._big is None:
            self._big = [to_mp_matrix(c) for c in self.coefficients]
        return self._big

    def defects(self):
        """
        Defect of the defining recursion at every computed order; zero
        matrices in exact mode.
        """
        q = self.q
        n = self.n
        out = []
        for k, c in enumerate(self.coefficients):
            if self.site == 'zero':
                scale = q ** k
                terms = [(self.system.coefficient(j), self.coefficients[k - j])
                         for j in range(0, min(k, self.mu) + 1)]
            else:
                scale = q ** (-k)
                terms = [(self.system.coefficient(self.mu - l), self.coefficients[k - l])
                         for l in range(0, min(k, self.mu - self.system.low) + 1)]
            defect = [[c[i][j] * scale * self.multipliers[j]
                       - sum((t[i][a] * b[a][j] for t, b in terms for a in range(n)), c[i][j] * 0)
                       for j in range(n)] for i in range(n)]
            out.append(defect)
        return out

    def recursion_residual(self):
        return max(max_norm(d) for d in self.defects())

    def series(self, z, terms=None):
        terms = self.order + 1 if terms is None else terms
        z = to_big(z)
        step = z if self.site == 'zero' else 1 / z
        total = mp.zeros(self.n, self.n)
        power = mp.mpc(1)
        for coefficient in self.big_coefficients()[:terms]:
            total += coefficient * power
            power *= step
        return total

    def tail(self, z):
        """Size of the last two series terms at z."""
        z = abs(to_big(z))
        step = z if self.site == 'zero' else 1 / z
        sizes = [_norm(c) * step ** k for k, c in enumerate(self.big_coefficients())]
        return max(sizes[-2:])

    def reliable_radius(self):
        """Radius beyond which the series at infinity is started."""
        if self._radius is None:
            roots = self.system.det_roots()
            self._radius = 2 * max([mp.mpf(1)] + [abs(r) for r in roots])
        return self._radius

    def to_json(self):
        return {
            'site': self.site,
            'order': self.order,
            'multipliers': [serialization.scalar_to_json(x) for x in self.multipliers],
            'exponents': [serialization.scalar_to_json(x) for x in self.exponents],
            'prefactor': self.prefactor,
            'coefficients': [serialization.scalar_matrix_to_json(c) for c in self.coefficients],
        }


def local_series_q(system, site, order):
    """
    Series coefficients of the local solution at 0 or infinity.

    At 0, column i solves (q**k lambda_i - Q_0) a_k = sum_{j>=1} Q_j a_{k-j};
    at infinity (q**-k m_i - Q_mu) b_k = sum_{l>=1} Q_{mu-l} b_{k-l}.
    """
    pairs = system.spectrum(site)
    multipliers = [v for v, _ in pairs]
    check_nonresonant(multipliers, system.q, site)
    exact_mode = system.is_exact() and all(is_exact(v) for v in multipliers)
    lift = ExactComplex.coerce if exact_mode else to_big
    q = lift(system.q)
    n, mu, low = system.n, system.mu, system.low
    if site == 'zero':
        lead = system.coefficient(0)
        tail = {j: system.coefficient(j) for j in range(1, mu + 1)}
    else:
        lead = system.leading
        tail = {l: system.coefficient(mu - l) for l in range(1, mu - low + 1)}
    lead = [[lift(x) for x in row] for row in lead]
    tail = {j: [[lift(x) for x in row] for row in m] for j, m in tail.items()}
    columns = []
    for i, (value, vector) in enumerate(pairs):
        value = lift(value)
        ys = [[lift(x) for x in vector]]
        for k in range(1, order + 1):
            rhs = [lift(0)] * n
            for j, t in tail.items():
                if j > k:
                    continue
                prev = ys[k - j]
                rhs = [rhs[a] + sum((t[a][b] * prev[b] for b in range(n)), lift(0))
                       for a in range(n)]
            scale = q ** k if site == 'zero' else q ** (-k)
            shifted = [[(scale * value if a == b else 0) - lead[a][b] for b in range(n)]
                       for a in range(n)]
            if exact_mode:
                try:
                    ys.append(solve(shifted, rhs))
                except ZeroDivisionError:
                    raise ResonanceError('singular recursion at order {}'.format(k))
            else:
                column = mp.lu_solve(to_mp_matrix(shifted), mp.matrix(rhs))
                ys.append([column[a] for a in range(n)])
        columns.append(ys)
    coefficients = [[[columns[j][k][i] for j in range(n)] for i in range(n)]
                    for k in range(order + 1)]
    logger.debug('q local series at %s: n=%s mu=%s order=%s exact=%s', site, n, mu, order,
                 exact_mode)
    return QLocalSolution(system, site, coefficients,
                          [lift(v) for v in multipliers])


def evaluate_t(sol, t, tol=None):
    """
    Local solution at t (z = exp(t ln q)); returns (value, steps) where
    steps is the signed number of functional equation steps used.
    """
    tol = tol if tol is not None else mp.mpf(2) ** (-mp.prec // 2)
    t = to_big(t)
    log_q = sol.log_q
    ln_abs_q = log_q.real
    logs = [mp.log(to_big(x)) for x in sol.multipliers]
    system = sol.system
    if sol.site == 'zero':
        k = max(0, int(mp.ceil(((t * log_q).real - mp.log(ZERO_RADIUS)) / ln_abs_q)))
        while True:
            zk = mp.exp((t - k) * log_q)
            series = sol.series(zk)
            if sol.tail(zk) <= tol * max(1, _norm(series)):
                break
            k += 1
            if k > MAX_STEPS:
                raise PrecisionExhausted('local series at 0 does not converge near {}'.format(
                    mp.nstr(t, 8)))
        value = series * mp.diag([mp.exp((t - k) * x) for x in logs])
        for step in range(k, 0, -1):
            value = system.evaluate(mp.exp((t - step) * log_q)) * value
        return value, -k
    radius = sol.reliable_radius()
    k = max(0, int(mp.ceil((mp.log(radius) - (t * log_q).real) / ln_abs_q)))
    while True:
        zk = mp.exp((t + k) * log_q)
        series = sol.series(zk)
        if sol.tail(zk) <= tol * max(1, _norm(series)):
            break
        k += 1
        if k > MAX_STEPS:
            raise PrecisionExhausted('local series at infinity does not converge near {}'.format(
                mp.nstr(t, 8)))
    s = t + k
    gaussian = mp.exp(sol.mu * (s * s - s) / 2 * log_q)
    value = gaussian * series * mp.diag([mp.exp(s * x) for x in logs])
    roots = sol.system.det_roots() if k else []
    for step in range(k - 1, -1, -1):
        z = mp.exp((t + step) * log_q)
        for root in roots:
            if abs(z - root) < PATH_MARGIN * max(1, abs(root)):
                raise SingularityOnPath('propagation passes the singular point {}'.format(
                    mp.nstr(root, 10)))
        value = mp.inverse(system.evaluate(z)) * value
    return value, k


def evaluate_local(sol, z, precision=128, tol=None):
    """
    Local solution at the point z, with t = ln z / ln q (principal logs).

    The continuation runs along the q-spiral through z; when it crosses
    the negative real axis a BranchCutCrossing warning carries the
    winding number.
    """
    with working_precision(precision):
        z = to_big(z)
        if z == 0:
            raise DomainError('local solutions are evaluated off the origin')
        log_z = mp.log(z)
        t = log_z / sol.log_q
        value, steps = evaluate_t(sol, t, tol)
        if steps:
            end = z * to_big(sol.q) ** steps
            winding = int(mp.nint(((mp.log(end) - log_z - steps * sol.log_q) / (2j * mp.pi)).real))
            if winding:
                warnings.warn(BranchCutCrossing(
                    'continuation from {} crosses the branch cut {} time(s)'.format(
                        mp.nstr(z, 8), abs(winding)),
                    branch={'site': sol.site, 'steps': steps, 'winding': winding}))
        return value


# monodromy

class QMonodromyReport(object):
    """
    Samples of P(t) = Y_inf(t)**-1 Y_0(t) on the parallelogram
    t0 + [0, 1) + [0, 1) omega', the two circuit residuals and, once
    fitted, the sigma-form constants per entry.
    """

    def __init__(self, points, values, periodicity_residual, circuit_residual, sigma, rho, mu,
                 q, lattice, evaluator, t0, precision):
        self.points = points
        self.values = values
        self.periodicity_residual = periodicity_residual
        self.circuit_residual = circuit_residual
        self.sigma = sigma
        self.rho = rho
        self.mu = mu
        self.q = q
        self.lattice = lattice
        self.evaluator = evaluator
        self.t0 = t0
        self.precision = precision
        self.fit = None

    @property
    def n(self):
        return len(self.sigma)

    def evaluate(self, t):
        return self.evaluator(to_big(t))

    def circuit_factor(self, i, j, t):
        return circuit_factor(self.lattice, self.mu, self.sigma[i], self.rho[j], t)

    def to_json(self):
        def big(x):
            return serialization.scalar_to_json(x)

        data = {
            'kind': 'qdifference',
            'precision': self.precision,
            'q': big(self.q),
            'mu': self.mu,
            't0': big(self.t0),
            'lattice': self.lattice.to_json(),
            'points': [big(t) for t in self.points],
            'periodicity_residual': mp.nstr(self.periodicity_residual, 5),
            'circuit_residual': mp.nstr(self.circuit_residual, 5),
            'sigma': [big(x) for x in self.sigma],
            'rho': [big(x) for x in self.rho],
            'log_branch': 'principal',
        }
        if self.fit is not None:
            data['fit'] = self.fit.to_json()
        return data


def circuit_factor(lattice, mu, sigma, rho, t):
    """p_ij(t + omega') / p_ij(t)."""
    t = to_big(t)
    return ((-1) ** mu * mp.exp(-2j * mp.pi * mu * t) * mp.exp(2 * mp.pi ** 2 * mu / lattice.log_q)
            * mp.exp(2j * mp.pi * (sigma + rho)))


def parallelogram_grid(lattice, samples, t0=0):
    """Cell centers t0 + (a + 1/2)/m + (b + 1/2)/m omega'."""
    t0 = to_big(t0)
    m = samples
    return [t0 + (mp.mpf(a) + 0.5) / m + (mp.mpf(b) + 0.5) / m * lattice.omega_prime
            for b in range(m) for a in range(m)]


def circle_mean(f, t, radius=CIRCLE_RADIUS, points=CIRCLE_POINTS):
    """
    Mean of f over `points` nodes of the circle |s - t| = radius; for f
    analytic near t this is f(t) up to O(radius**points). P is entire in
    t while the local solutions behind it are singular at the images of
    the roots of det Q.
    """
    t = to_big(t)
    total = f(t + radius)
    for k in range(1, points):
        total += f(t + radius * mp.expjpi(mp.mpf(2 * k) / points))
    return total / points


def monodromy_q(system, grid=None, precision=128, order=40, tol=1e-8, t0=0, samples=0):
    """
    Sample P(t) = Y_inf(t)**-1 Y_0(t) and check P(t + 1) = P(t) and
    p_ij(t + omega') = (-1)**mu e**(-2 pi i mu t) e**(2 pi**2 mu / ln q)
    e**(2 pi i (sigma_i + rho_j)) p_ij(t).

    Parameters
    ----------
    grid : list of complex
        Sample points in the t-plane; by default a samples x samples
        grid of cell centers of the fundamental parallelogram at t0.

    Returns
    -------
    QMonodromyReport
    """
    with working_precision(precision):
        big = system.to_big()
        zero = local_series_q(big, 'zero', order)
        infinity = local_series_q(big, 'infinity', order)
        lattice = PeriodLattice(big.q)
        target = mp.mpf(2) ** (-precision // 2)

        def direct(t):
            y0, _ = evaluate_t(zero, t, target)
            yinf, _ = evaluate_t(infinity, t, target)
            return mp.inverse(yinf) * y0

        def evaluator(t):
            try:
                return direct(t)
            except SingularityOnPath:
                return circle_mean(direct, t)

        if grid is None:
            grid = parallelogram_grid(lattice, samples or 4, t0)
        points = [to_big(t) for t in grid]
        sigma, rho = infinity.exponents, zero.exponents
        n, mu = big.n, big.mu
        values = []
        periodicity, circuit = mp.mpf(0), mp.mpf(0)
        for t in points:
            value = evaluator(t)
            scale = max(_norm(value), mp.eps)
            values.append(value)
            periodicity = max(periodicity, _norm(evaluator(t + 1) - value) / scale)
            moved = evaluator(t + lattice.omega_prime)
            expected = mp.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    expected[i, j] = circuit_factor(lattice, mu, sigma[i], rho[j], t) * value[i, j]
            circuit = max(circuit, _norm(moved - expected) / max(_norm(expected), mp.eps))
        logger.info('q monodromy: %d samples, periodicity %s, circuit %s', len(points),
                    mp.nstr(periodicity, 5), mp.nstr(circuit, 5))
        if periodicity > tol or circuit > tol:
            logger.warning('q monodromy residuals (%s, %s) exceed %s', mp.nstr(periodicity, 5),
                           mp.nstr(circuit, 5), tol)
        return QMonodromyReport(points, values, periodicity, circuit, sigma, rho, mu, big.q,
                                lattice, evaluator, to_big(t0), precision)
