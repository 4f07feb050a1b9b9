# -*- coding: utf-8 -*-
import argparse
import logging
import warnings

from .config import RunConfig, add_run_arguments
from .difference import verify_fuchs
from .exceptions import CongruentRoots, DomainError, NonDiagonalizable, HypothesisWarning
from .gauge.reduction import determinant_roots
from .roots import check_non_congruent
from .scalar import working_precision
from .serialization import scalar_to_json
from .utils import SystemReader, emit

logger = logging.getLogger(__name__)


def _non_congruent(system):
    try:
        roots = determinant_roots(system)
        check_non_congruent(roots, system.kind, getattr(system, 'q', None))
    except CongruentRoots as e:
        logger.debug('non-congruence fails: %s', e)
        return roots, False
    return roots, True


def _analyze_difference(system):
    flags = system.hypotheses()
    report = {'kind': system.kind, 'n': system.n, 'r': system.r, 'exact': system.is_exact(),
              'rho': [scalar_to_json(x) for x in system.rho]}
    solvable = flags['leading_diagonal'] and flags['rho_nonzero']
    if solvable:
        report['d'] = [scalar_to_json(x) for x in system.d]
    report['singular_points'] = [scalar_to_json(x) for x in system.singular_points()]
    if system.is_polynomial():
        roots, flags['non_congruent'] = _non_congruent(system)
        report['det_roots'] = [{'root': scalar_to_json(x), 'multiplicity': m} for x, m in roots]
        if solvable:
            fuchs = verify_fuchs(system)
            report['fuchs'] = {'d_sum': scalar_to_json(fuchs.d_sum),
                               'root_sum': scalar_to_json(fuchs.root_sum),
                               'residual': scalar_to_json(fuchs.residual)}
    report['hypotheses'] = flags
    return report


def _analyze_q(system):
    flags = system.hypotheses()
    report = {'kind': system.kind, 'n': system.n, 'mu': system.mu, 'q': scalar_to_json(system.q),
              'exact': system.is_exact()}
    for site, name in (('infinity', 'sigma'), ('zero', 'rho')):
        try:
            pairs = system.spectrum(site)
        except (DomainError, NonDiagonalizable) as e:
            logger.debug('no exponents at %s: %s', site, e)
            flags[site] = False
            continue
        report['multipliers_' + site] = [scalar_to_json(v) for v, _ in pairs]
        report[name] = [scalar_to_json(x) for x in getattr(system, name)]
    if system.low == 0:
        roots, flags['non_congruent'] = _non_congruent(system)
        report['det_roots'] = [{'root': scalar_to_json(x), 'multiplicity': m} for x, m in roots]
    report['hypotheses'] = flags
    return report


def analyze(system, precision=128):
    """
    JSON report of the kind, degree, local exponents, determinant roots
    and hypothesis flags of a system; failed hypotheses also warn.
    """
    with working_precision(precision):
        if system.kind == 'difference':
            report = _analyze_difference(system)
        else:
            report = _analyze_q(system)
    for name, value in sorted(report['hypotheses'].items()):
        if not value:
            warnings.warn(HypothesisWarning('hypothesis {} fails'.format(name)))
    report['precision'] = precision
    return report


def init_parser(subparser, str2bool):
    parser = subparser.add_parser(
        'analyze',
        help='Print the invariants and hypothesis diagnostics of a system file.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        'file',
        help='System file (JSON).')
    parser.add_argument(
        '--rationalize',
        help='Clear the denominators of a rational system first.',
        default=False,
        type=str2bool)
    add_run_arguments(parser)


def main(args):
    config = RunConfig.from_args(args)
    system = SystemReader(args.rationalize).read_file(args.file)
    emit(analyze(system, config.precision), config.out)
