# -*- coding: utf-8 -*-
"""
Fit the entries of a q-monodromy matrix to

    p_ij(t) = c_ij exp(-mu eta t**2 / 2 + Gamma_ij t) sigma(t - a_1) ... sigma(t - a_mu)

with Gamma_ij = eta (sigma_i + rho_j + v) - eta' (mu/2 + u) and
a_1 + ... + a_mu = sigma_i + rho_j - mu pi i / ln q + v - u omega'.
"""

import logging

from mpmath import mp

from .elliptic import sigma_eval
from .exceptions import (ZeroCountMismatch, MultipleZeroDetected, FitResidualTooLarge,
                         SingularityOnPath)
from .scalar import to_big
from . import serialization

logger = logging.getLogger(__name__)

BOUNDARY_POINTS = 48
CELL_POINTS = 2
MAX_BISECTIONS = 14
MAX_SPLITS = 6
MAX_ARG_STEP = mp.pi / 4
NEAR_ZERO = 1e-20


class EntryFit(object):

    def __init__(self, i, j, zeros, c, gamma, u, v, lattice_residual, fit_residual):
        self.i = i
        self.j = j
        self.zeros = zeros
        self.c = c
        self.gamma = gamma
        self.u = u
        self.v = v
        self.lattice_residual = lattice_residual
        self.fit_residual = fit_residual

    def to_json(self):
        big = serialization.scalar_to_json
        return {'zeros': [big(a) for a in self.zeros], 'c': big(self.c),
                'gamma': big(self.gamma), 'u': self.u, 'v': self.v,
                'lattice_residual': mp.nstr(self.lattice_residual, 5),
                'fit_residual': mp.nstr(self.fit_residual, 5)}


class SigmaFormFit(object):

    def __init__(self, entries, zero_entries, counts, det_zeros, origin, evaluate):
        self.entries = entries
        self.zero_entries = zero_entries
        self.counts = counts
        self.det_zeros = det_zeros
        self.origin = origin
        self._evaluate = evaluate

    @property
    def residual(self):
        return max([e.fit_residual for e in self.entries.values()] or [mp.mpf(0)])

    @property
    def lattice_residual(self):
        return max([e.lattice_residual for e in self.entries.values()] or [mp.mpf(0)])

    def evaluate(self, i, j, t):
        """The fitted closed form of p_ij at t."""
        return self._evaluate(self.entries[i, j], t)

    def to_json(self):
        return {
            'origin': serialization.scalar_to_json(self.origin),
            'entries': {'{},{}'.format(i + 1, j + 1): e.to_json()
                        for (i, j), e in sorted(self.entries.items())},
            'zero_entries': ['{},{}'.format(i + 1, j + 1) for i, j in self.zero_entries],
            'zero_counts': {'{},{}'.format(i + 1, j + 1): c for (i, j), c in sorted(self.counts.items())
                            if i >= 0},
            'det_zeros': [serialization.scalar_to_json(a) for a in self.det_zeros],
            'residual': mp.nstr(self.residual, 5),
            'lattice_residual': mp.nstr(self.lattice_residual, 5),
        }


class _ContourHit(Exception):
    """A zero of the counted function lies on (or next to) the contour."""


class _Cache(object):

    def __init__(self, evaluate):
        self._evaluate = evaluate
        self._values = {}

    def __call__(self, t):
        key = (t.real, t.imag)
        if key not in self._values:
            self._values[key] = self._evaluate(t)
        return self._values[key]


def _scalar_functions(n):
    """Entry extractors plus the determinant, keyed (i, j) and (-1, -1)."""
    functions = {(i, j): (lambda m, i=i, j=j: m[i, j]) for i in range(n) for j in range(n)}
    functions[-1, -1] = mp.det
    return functions


def _boundary(lattice, origin):
    w = lattice.omega_prime
    return [origin, origin + 1, origin + 1 + w, origin + w, origin]


def _jumps(values, functions, ta, tb):
    ma, mb = values(ta), values(tb)
    jumps = {}
    for key, f in functions.items():
        fa, fb = f(ma), f(mb)
        small, large = sorted((abs(fa), abs(fb)))
        if small == 0 or small < NEAR_ZERO * large:
            raise _ContourHit()
        jumps[key] = mp.arg(fb / fa)
    return jumps


def _edge(values, functions, ta, tb, depth):
    """Argument increments along [ta, tb], bisected until they are resolved."""
    mid = (ta + tb) / 2
    whole = _jumps(values, functions, ta, tb)
    left = _jumps(values, functions, ta, mid)
    right = _jumps(values, functions, mid, tb)
    resolved = all(abs(whole[key]) <= MAX_ARG_STEP and abs(left[key]) <= MAX_ARG_STEP
                   and abs(right[key]) <= MAX_ARG_STEP
                   for key in functions)
    if resolved:
        return whole
    if depth == MAX_BISECTIONS:
        raise _ContourHit()
    left = _edge(values, functions, ta, mid, depth + 1)
    right = _edge(values, functions, mid, tb, depth + 1)
    return {key: left[key] + right[key] for key in functions}


def winding_numbers(values, functions, corners, points_per_side=BOUNDARY_POINTS):
    """
    Argument principle along the closed polygon `corners`, one count per
    function of the sampled value.

    Returns
    -------
    dict or None
        None when a function (nearly) vanishes on the contour or a
        singular point of the evaluation lies on it.
    """
    totals = {key: mp.mpf(0) for key in functions}
    try:
        for a, b in zip(corners, corners[1:]):
            for k in range(points_per_side):
                ta = a + (b - a) * mp.mpf(k) / points_per_side
                tb = a + (b - a) * mp.mpf(k + 1) / points_per_side
                for key, jump in _edge(values, functions, ta, tb, 0).items():
                    totals[key] += jump
    except (_ContourHit, SingularityOnPath):
        return None
    counts = {}
    for key, total in totals.items():
        turns = total / (2 * mp.pi)
        if abs(turns - mp.nint(turns)) > 0.1:
            return None
        counts[key] = int(mp.nint(turns))
    return counts


def _cell_corners(lattice, origin, x0, x1, y0, y1):
    w = lattice.omega_prime
    return [origin + x0 + y0 * w, origin + x1 + y0 * w, origin + x1 + y1 * w,
            origin + x0 + y1 * w, origin + x0 + y0 * w]


def _cell_count(f, lattice, origin, cell):
    counts = winding_numbers(f, {0: lambda x: x}, _cell_corners(lattice, origin, *cell),
                             CELL_POINTS)
    if counts is None:
        raise _ContourHit()
    return counts[0]


def _converged(f, lattice, origin, cell, tol):
    """A secant root of f inside the cell, or None when the iteration failed."""
    x0, x1, y0, y1 = cell
    w = lattice.omega_prime
    center = origin + (x0 + x1) / 2 + (y0 + y1) / 2 * w
    second = center + (x1 - x0) / 8 + (y1 - y0) / 8 * w
    try:
        root = mp.findroot(f, (center, second), tol=tol ** 2, verify=False, maxsteps=60)
        value = f(root)
    except (ZeroDivisionError, ValueError, SingularityOnPath):
        return None
    scale = max(abs(f(t)) for t in _cell_corners(lattice, origin, *cell)[:4])
    if not abs(value) <= tol * scale:
        return None
    x, y = lattice.coordinates(root, origin)
    slack = (x1 - x0) / 16
    if not (x0 - slack <= x <= x1 + slack and y0 - slack <= y <= y1 + slack):
        return None
    return root


def _refine(f, lattice, origin, cell, count, depth, tol):
    """The `count` zeros of f inside the cell (x0, x1, y0, y1) in lattice coordinates."""
    x0, x1, y0, y1 = cell
    if count == 1:
        root = _converged(f, lattice, origin, cell, tol)
        if root is not None:
            return [root]
    if depth == MAX_SPLITS:
        if count > 1:
            raise MultipleZeroDetected('{} zeros within {} of each other near {}'.format(
                count, mp.nstr(x1 - x0, 3), mp.nstr(origin + x0 + y0 * lattice.omega_prime, 10)))
        raise ZeroCountMismatch('the zero near {} could not be refined'.format(
            mp.nstr(origin + x0 + y0 * lattice.omega_prime, 10)))
    xm, ym = (x0 + x1) / 2, (y0 + y1) / 2
    quarters = [(x0, xm, y0, ym), (xm, x1, y0, ym), (x0, xm, ym, y1), (xm, x1, ym, y1)]
    counts = [_cell_count(f, lattice, origin, q) for q in quarters]
    if sum(counts) != count:
        raise _ContourHit()
    zeros = []
    for quarter, k in zip(quarters, counts):
        if k:
            zeros.extend(_refine(f, lattice, origin, quarter, k, depth + 1, tol))
    return zeros


def locate_zeros(f, count, lattice, origin, density, tol):
    """
    Zeros of f in the fundamental parallelogram at `origin`: the argument
    principle on a density x density grid of cells, split where a cell
    holds several zeros, then a secant iteration from the cell center.

    Raises
    ------
    ZeroCountMismatch
        The cells do not account for `count` zeros.
    MultipleZeroDetected
        Several zeros stay together after repeated splitting.
    """
    if count == 0:
        return []
    g = density
    step = mp.mpf(1) / g
    for attempt in range(4):
        offset = mp.mpf(attempt) / (97 * g)
        try:
            zeros = []
            for b in range(g):
                for a in range(g):
                    cell = (a * step + offset, (a + 1) * step + offset,
                            b * step + offset, (b + 1) * step + offset)
                    k = _cell_count(f, lattice, origin, cell)
                    if k < 0:
                        raise ZeroCountMismatch('cell {} has {} zeros'.format(cell, k))
                    if k:
                        zeros.extend(_refine(f, lattice, origin, cell, k, 0, tol))
        except _ContourHit:
            logger.debug('zero on a cell contour, offsetting the grid')
            continue
        zeros = [_inside(lattice, root, origin) for root in zeros]
        if len(zeros) != count:
            raise ZeroCountMismatch('found {} zeros, the argument principle counts {}'.format(
                len(zeros), count))
        for k, first in enumerate(zeros):
            for second in zeros[k + 1:]:
                if abs(first - second) < mp.sqrt(tol):
                    raise MultipleZeroDetected('zeros {} and {} coincide'.format(
                        mp.nstr(first, 10), mp.nstr(second, 10)))
        return sorted(zeros, key=lambda z: (z.imag, z.real))
    raise ZeroCountMismatch('every cell grid passes through a zero')


def _inside(lattice, t, origin):
    reduced, _, _ = lattice.reduce(t, origin)
    return reduced


def model(lattice, mu, gamma, zeros, t):
    """exp(-mu eta t**2 / 2 + gamma t) prod sigma(t - a_k)."""
    t = to_big(t)
    value = mp.exp(-mu * lattice.eta * t * t / 2 + gamma * t)
    for a in zeros:
        value *= sigma_eval(t - a, lattice)
    return value


def lattice_integers(lattice, mu, sigma, rho, zeros):
    """
    Integers (u, v) with sum a_k = sigma + rho - mu pi i / ln q + v - u omega',
    and the distance of the remainder to that lattice point.
    """
    target = sigma + rho - mu * mp.pi * 1j / lattice.log_q
    delta = sum(zeros, mp.mpc(0)) - target
    x, y = lattice.coordinates(delta)
    v, u = int(mp.nint(x)), -int(mp.nint(y))
    residual = abs(delta - (v - u * lattice.omega_prime))
    return u, v, residual


def gamma_constant(lattice, mu, sigma, rho, u, v):
    return lattice.eta * (sigma + rho + v) - lattice.eta_prime * (mp.mpf(mu) / 2 + u)


def _zero_entries(report, threshold):
    """Entries negligible against the largest entry at every sample."""
    n = report.n
    out = []
    for i in range(n):
        for j in range(n):
            if all(abs(v[i, j]) < threshold * max(abs(v[k, l]) for k in range(n) for l in range(n))
                   for v in report.values):
                out.append((i, j))
    return out


def fit_sigma_form(report, tol=1e-6, density=None, check_det=True, strict=False):
    """
    Locate the zeros of every entry of P, fit c_ij and verify the sum
    condition on the zeros modulo the period lattice.

    Parameters
    ----------
    report : QMonodromyReport
    tol : float
        Bound on the relative fit residual.
    density : int
        Cells per side of the zero scan (default max(4, 2 mu)).
    check_det : bool
        Also require the zeros of det P to be simple.

    Returns
    -------
    SigmaFormFit
        Also stored on report.fit.
    """
    with mp.workprec(report.precision):
        lattice = report.lattice
        mu, n = report.mu, report.n
        values = _Cache(report.evaluate)
        target = mp.mpf(2) ** (-report.precision // 3)
        zero_entries = _zero_entries(report, target)
        functions = {key: f for key, f in _scalar_functions(n).items() if key not in zero_entries}
        if not check_det:
            del functions[-1, -1]
        origin = report.t0
        shift = (1 + lattice.omega_prime) / 97
        counts = None
        for attempt in range(6):
            counts = winding_numbers(values, functions, _boundary(lattice, origin))
            if counts is not None:
                break
            logger.debug('zero on the parallelogram boundary at origin %s', mp.nstr(origin, 8))
            origin += shift
        if counts is None:
            raise ZeroCountMismatch('every tried contour passes through a zero')
        scan = density or max(4, 2 * mu)
        entries = {}
        for i in range(n):
            for j in range(n):
                if (i, j) in zero_entries:
                    continue
                if counts[i, j] != mu:
                    raise ZeroCountMismatch('entry ({}, {}) has {} zeros, expected {}'.format(
                        i + 1, j + 1, counts[i, j], mu))
                f = (lambda t, i=i, j=j: values(to_big(t))[i, j])
                zeros = locate_zeros(f, mu, lattice, origin, scan, target)
                sigma, rho = report.sigma[i], report.rho[j]
                u, v, residual = lattice_integers(lattice, mu, sigma, rho, zeros)
                gamma = gamma_constant(lattice, mu, sigma, rho, u, v)
                ratios = [x[i, j] / model(lattice, mu, gamma, zeros, t)
                          for x, t in zip(report.values, report.points)]
                c = sum(ratios, mp.mpc(0)) / len(ratios)
                fit_residual = max(abs(r - c) for r in ratios) / abs(c)
                entries[i, j] = EntryFit(i, j, zeros, c, gamma, u, v, residual, fit_residual)
                logger.debug('p_%d%d: zeros %s, u=%d v=%d, residual %s', i + 1, j + 1,
                             [mp.nstr(a, 8) for a in zeros], u, v, mp.nstr(fit_residual, 5))
        det_zeros = []
        if check_det and counts.get((-1, -1)):
            det_zeros = locate_zeros(lambda t: mp.det(values(to_big(t))), counts[-1, -1],
                                     lattice, origin, scan, target)

        def evaluate(entry, t):
            return entry.c * model(lattice, mu, entry.gamma, entry.zeros, t)

        fit = SigmaFormFit(entries, zero_entries, counts, det_zeros, origin, evaluate)
        report.fit = fit
        if fit.residual > tol or fit.lattice_residual > tol:
            message = 'sigma form residuals (fit {}, lattice {}) exceed {}'.format(
                mp.nstr(fit.residual, 5), mp.nstr(fit.lattice_residual, 5), tol)
            if strict:
                raise FitResidualTooLarge(message)
            logger.warning(message)
        return fit
