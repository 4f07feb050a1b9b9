# -*- coding: utf-8 -*-
import argparse
import logging
import sys

from mpmath import mp

from .config import RunConfig, add_run_arguments
from .exceptions import ConfigError, FitResidualTooLarge
from .gauge import normalize_system, verify_monodromy
from .scalar import working_precision
from .utils import SystemReader, emit

logger = logging.getLogger(__name__)


def parse_targets(text, n=None):
    """'1,-1' -> [1, -1]."""
    try:
        targets = [int(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise ConfigError('targets must be comma separated integers, got {!r}'.format(text))
    if n is not None and len(targets) != n:
        raise ConfigError('expected {} targets, got {}'.format(n, len(targets)))
    return targets


def run(system, targets, config, verify=False):
    """
    Normalize a system and build the JSON report; with `verify`, also
    compare the sampled monodromy of input and output.
    """
    with working_precision(config.precision):
        result = normalize_system(system, targets)
        report = result.to_json()
        report['precision'] = config.precision
        if verify:
            same, residual = verify_monodromy(system, result.system, config.precision,
                                              config.order, config.tol, config.samples,
                                              config.seed)
            report['monodromy'] = {'equivalent': bool(same), 'residual': mp.nstr(residual, 5)}
            if not same:
                logger.warning('monodromy changed by %s', mp.nstr(residual, 5))
    return result, report


def init_parser(subparser, str2bool):
    parser = subparser.add_parser(
        'normalize',
        help='Shift the exponents at infinity by integers, keeping the monodromy.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        'file',
        help='Polynomial system file (JSON).')
    parser.add_argument(
        '--targets',
        help='Comma separated integer shifts, one per exponent (write --targets=-1,1 when the first is negative).',
        required=True,
        type=str)
    parser.add_argument(
        '--verify',
        help='Check that the monodromy of the output matches the input.',
        default=False,
        type=str2bool)
    parser.add_argument(
        '--system-out',
        help='Also write the normalized system alone, as a system file.',
        default=None,
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
    targets = parse_targets(args.targets, system.n)
    result, report = run(system, targets, config, args.verify)
    sys.stderr.write('|D|_1 trajectory: {}\n'.format(' -> '.join(str(x) for x in result.trajectory)))
    emit(report, config.out)
    if args.system_out:
        emit(result.system.to_json(), args.system_out)
    if not report.get('monodromy', {}).get('equivalent', True):
        return FitResidualTooLarge.exit_code
    return 0
