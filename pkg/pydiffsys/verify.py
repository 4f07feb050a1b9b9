# -*- coding: utf-8 -*-
import argparse
import logging

from mpmath import mp

from .config import RunConfig, add_run_arguments
from .difference import verify_fuchs, monodromy_difference
from .elliptic import PeriodLattice, quasi_periodicity_residual
from .exceptions import SuiteInapplicable, NumericError
from .monodromy import write_monodromy_csv
from .qdifference import monodromy_q
from .scalar import is_exact, to_big, working_precision
from .sigma_form import fit_sigma_form
from .utils import SystemReader, emit

logger = logging.getLogger(__name__)

SUITES = ('fuchs', 'legendre', 'periodicity', 'circuit', 'sigma-form')

QUASI_PERIOD_POINTS = (mp.mpc('0.3', '0.1'), mp.mpc('-0.7', '0.45'), mp.mpc('1.2', '-0.3'))


def _require(system, kind, suite):
    if system.kind != kind:
        raise SuiteInapplicable('suite {} needs a {} system, got {}'.format(suite, kind,
                                                                          system.kind))


def _number(x):
    return mp.nstr(x, 5)


def _fuchs(system, config, csv):
    _require(system, 'difference', 'fuchs')
    if not system.is_polynomial():
        raise SuiteInapplicable('suite fuchs needs a polynomial system; use --rationalize')
    check = verify_fuchs(system)
    if is_exact(check.residual):
        passed = check.residual == 0
    else:
        passed = abs(to_big(check.residual)) < config.tol
    return passed, {'residual': str(check.residual), 'd_sum': str(check.d_sum),
                    'root_sum': str(check.root_sum)}


def _legendre(system, config, csv):
    _require(system, 'qdifference', 'legendre')
    lattice = PeriodLattice(system.q)
    legendre = lattice.legendre_residual()
    quasi = quasi_periodicity_residual(lattice, QUASI_PERIOD_POINTS)
    return max(legendre, quasi) < config.tol, {'legendre': _number(legendre),
                                               'quasi_periodicity': _number(quasi),
                                               'lattice': lattice.to_json()}


def _q_report(system, config):
    return monodromy_q(system, precision=config.precision, order=config.order, tol=config.tol,
                       t0=config.t0, samples=config.samples)


def _periodicity(system, config, csv):
    if system.kind == 'qdifference':
        report = _q_report(system, config)
    else:
        report = monodromy_difference(system, config.samples, config.precision, config.order,
                                      config.tol, config.anchor_line, fit=False)
    if csv:
        write_monodromy_csv(report, csv)
    residual = report.periodicity_residual
    return residual < config.tol, {'periodicity': _number(residual),
                                   'samples': len(report.points)}


def _circuit(system, config, csv):
    _require(system, 'qdifference', 'circuit')
    report = _q_report(system, config)
    if csv:
        write_monodromy_csv(report, csv)
    residual = report.circuit_residual
    return residual < config.tol, {'circuit': _number(residual),
                                   'periodicity': _number(report.periodicity_residual)}


def _sigma_form(system, config, csv):
    _require(system, 'qdifference', 'sigma-form')
    report = _q_report(system, config)
    fit = fit_sigma_form(report, tol=config.tol)
    passed = fit.residual < config.tol and fit.lattice_residual < config.tol
    return passed, {'fit': _number(fit.residual), 'lattice': _number(fit.lattice_residual),
                    'sigma_form': fit.to_json()}


_RUNNERS = {
    'fuchs': _fuchs,
    'legendre': _legendre,
    'periodicity': _periodicity,
    'circuit': _circuit,
    'sigma-form': _sigma_form,
}


def run_suite(system, suite, config=None, csv=None):
    """
    Run one verification suite.

    Returns
    -------
    dict
        {"suite", "kind", "pass", "residuals", "tol", "precision"}.

    Raises
    ------
    SuiteInapplicable
        Unknown suite or a suite that does not apply to the system kind.
    """
    if suite not in _RUNNERS:
        raise SuiteInapplicable('unknown suite {!r}, expected one of {}'.format(suite, SUITES))
    config = config or RunConfig()
    with working_precision(config.precision):
        passed, residuals = _RUNNERS[suite](system, config, csv)
    logger.info('suite %s: %s', suite, 'pass' if passed else 'fail')
    return {'suite': suite, 'kind': system.kind, 'pass': bool(passed), 'residuals': residuals,
            'tol': config.tol, 'precision': config.precision}


def init_parser(subparser, str2bool):
    parser = subparser.add_parser(
        'verify',
        help='Run a verification suite on a system file.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        'file',
        help='System file (JSON).')
    parser.add_argument(
        '--suite',
        help='Verification suite.',
        choices=SUITES,
        default='periodicity')
    parser.add_argument(
        '--csv',
        help='Also write the sampled monodromy grid to this CSV file.',
        type=str)
    parser.add_argument(
        '--rationalize',
        help='Clear the denominators of a rational system first.',
        default=False,
        type=str2bool)
    add_run_arguments(parser)


def main(args):
    config = RunConfig.from_args(args)
    system = SystemReader(args.rationalize).read_file(args.file)
    report = run_suite(system, args.suite, config, args.csv)
    emit(report, config.out)
    return 0 if report['pass'] else NumericError.exit_code
