# -*- coding: utf-8 -*-
"""
End-to-end normalization: move the characteristic constants at infinity
by integer targets while keeping the system polynomial of the same top
degree and its monodromy unchanged.

The pipeline diagonalizes the leading coefficient, builds the shifted
infinity side with shift_constant, splits the accumulated gauge with the
Sauvage factorization and merges both sides by norm reduction.
"""

import logging

from mpmath import mp
import numpy as np

from ..exceptions import DomainError, PipelineDiverged, NormalizationLost
from ..scalar import to_big, working_precision
from .reduction import ReductionState, catalog_roots, check_profile, reduce_norm_step, top_degree
from .sauvage import sauvage_factorize
from .transformation import (GaugeTransformation, apply_gauge, compose, normalize_leading,
                             shift_constant, default_tolerance, close)

logger = logging.getLogger(__name__)


class NormalizationResult(object):
    """
    Output of normalize_system.

    Attributes
    ----------
    system
        The normalized polynomial system.
    gauge : GaugeTransformation
        Composite zero-side gauge from the input to `system`.
    log : list of dict
        Every elementary gauge in order, tagged with the side it acts on;
        the 'zero' entries replay the pipeline.
    shifts : list of int
        D after the Sauvage split.
    trajectory : list of int
        |D|_1 before each reduction step.
    """

    def __init__(self, system, gauge, log, shifts, trajectory, targets):
        self.system = system
        self.gauge = gauge
        self.log = log
        self.shifts = shifts
        self.trajectory = trajectory
        self.targets = targets

    @property
    def steps(self):
        return max(len(self.trajectory) - 1, 0)

    def to_json(self):
        return {'system': self.system.to_json(), 'targets': list(self.targets),
                'shifts': list(self.shifts), 'trajectory': list(self.trajectory),
                'gauge_log': self.log}


def _entries(gauge, side):
    if gauge.is_identity():
        return []
    entry = gauge.to_json()
    entry['side'] = side
    return [entry]


def _check_input(system):
    if system.kind == 'qdifference':
        if system.low != 0:
            raise DomainError('the q-difference pipeline needs a polynomial Q(z) with '
                              'det Q(0) != 0')
        system.spectrum('zero')
    elif not system.is_polynomial():
        raise DomainError('the difference pipeline needs a polynomial A(z); rationalize first')


def _expected_order(system, targets):
    """Leading eigenvalues of the output, in the order of the input."""
    n = system.n
    lead = system.leading
    if system.kind == 'difference':
        return [lead[k][k] for k in range(n)]
    q = system.q if system.is_exact() else to_big(system.q)
    return [lead[k][k] * q ** targets[k] for k in range(n)]


def _check_output(start, result, targets, top, tol):
    n = start.n
    if not result.matrix.is_polynomial() or top_degree(result) != top:
        raise NormalizationLost('output is not polynomial of top degree {}'.format(top))
    if result.kind == 'difference':
        expected = [d - targets[k] for k, d in enumerate(start.d)]
        found = result.d
    else:
        expected = _expected_order(start, targets)
        found = [result.leading[k][k] for k in range(n)]
    if not all(close(a, b, tol) for a, b in zip(found, expected)):
        raise NormalizationLost('output constants {} differ from the expected {}'.format(
            [str(x) for x in found], [str(x) for x in expected]))


def normalize_system(system, targets, tol=None, margin=None):
    """
    Polynomial system of the same top degree whose exponents at infinity
    are the input's minus `targets` (sigma for q-difference systems, d
    for difference systems) and whose zero-side exponents are unchanged.

    Parameters
    ----------
    system : QDifferenceSystem or DifferenceSystem
        Polynomial; the determinant roots must be simple and pairwise
        non-congruent.
    targets : list of int

    Returns
    -------
    NormalizationResult

    Raises
    ------
    CongruentRoots, ProgressImpossible, PipelineDiverged, NormalizationLost
    """
    n = system.n
    targets = [int(t) for t in targets]
    if len(targets) != n:
        raise ValueError('expected {} targets, got {}'.format(n, len(targets)))
    _check_input(system)
    if not any(targets):
        logger.info('zero targets: system returned unchanged')
        return NormalizationResult(system, GaugeTransformation.identity(n, system.kind), [],
                                   [0] * n, [0], targets)
    top = top_degree(system)
    tol = default_tolerance(system.is_exact(), tol)
    start, leading = normalize_leading(system, tol=tol)
    log = _entries(leading, 'zero')

    shifted, accumulated = start, GaugeTransformation.identity(n, system.kind)
    for k, target in enumerate(targets):
        delta = -1 if target > 0 else 1
        for _ in range(abs(target)):
            shifted, step = shift_constant(shifted, k, delta, tol)
            accumulated = compose(step, accumulated, tol)
            log.extend(_entries(step, 'infinity'))
    logger.info('infinity side shifted by %s', [-t for t in targets])

    split = sauvage_factorize(accumulated.inverse, tol)
    unimodular = GaugeTransformation(split.u, system.kind, [{'op': 'sauvage', 'k': split.k}],
                                     inverse=split.u.inverse())
    zero_side = apply_gauge(unimodular, start, tol)
    log.extend(_entries(unimodular, 'zero'))
    check_profile(zero_side, split.k, top, tol)
    kwargs = {} if margin is None else {'margin': margin}
    roots = catalog_roots(zero_side, **kwargs)
    state = ReductionState(zero_side, split.k, top, roots=roots)
    logger.info('Sauvage split: D = %s, |D|_1 = %d', split.k, state.norm)
    cap = state.norm
    while state.norm:
        state = reduce_norm_step(state, tol)
        if state.steps > cap:
            raise PipelineDiverged('{} steps exceed the initial |D|_1 = {}'.format(
                state.steps, cap))
    for gauge in state.gauges:
        log.extend(_entries(gauge, 'zero'))

    final, ordering = normalize_leading(state.system, _expected_order(start, targets), tol)
    log.extend(_entries(ordering, 'zero'))
    _check_output(start, final, targets, top, tol)

    total = leading
    for gauge in [unimodular] + state.gauges + [ordering]:
        total = compose(gauge, total, tol)
    logger.info('normalized in %d reduction steps, |D|_1 trajectory %s', state.steps,
                state.trajectory)
    return NormalizationResult(final, total, log, split.k, state.trajectory, targets)


def replay(system, log, tol=None):
    """Re-apply the zero-side entries of a gauge log to `system`."""
    for entry in log:
        if entry.get('side', 'zero') != 'zero':
            continue
        gauge = GaugeTransformation.from_json(entry)
        system = apply_gauge(gauge, system, tol)
    return system


def verify_monodromy(original, result, precision=128, order=40, tol=1e-8, samples=0,
                     seed=None):
    """
    Sample the monodromy of both systems on one grid and compare them up
    to constant diagonal factors.

    With a `seed`, the q-case grid is anchored at a random offset drawn
    from numpy.random.RandomState(seed) instead of t = 0.

    Returns
    -------
    (bool, mpf)
    """
    from ..monodromy import monodromy_equivalent
    if original.kind == 'qdifference':
        from ..qdifference import monodromy_q
        t0 = 0
        if seed is not None:
            rng = np.random.RandomState(seed)
            t0 = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
            logger.debug('monodromy grid anchored at %s', t0)
        before = monodromy_q(original, precision=precision, order=order, tol=tol, t0=t0,
                             samples=samples)
        after = monodromy_q(result, grid=before.points, precision=precision, order=order,
                            tol=tol)
    else:
        from ..difference import monodromy_difference
        before = monodromy_difference(original, samples, precision, order, tol, fit=False)
        after = monodromy_difference(result, len(before.points), precision, order, tol,
                                     fit=False)
    with working_precision(precision):
        if any(abs(a - b) > mp.mpf(tol) for a, b in zip(before.points, after.points)):
            raise DomainError('the normalized system needs a different sampling grid')
        return monodromy_equivalent(before.values, after.values, tol)
