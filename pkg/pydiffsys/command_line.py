import argparse
import logging
import sys
import traceback
import warnings

import pydiffsys.analyze as analyze
import pydiffsys.normalize as normalize
import pydiffsys.verify as verify
from pydiffsys.exceptions import PyDiffSysError


# https://stackoverflow.com/a/43357954
def str2bool(v):
    if v.lower() in ('yes', 'true', 't', 'y', '1'):
        return True
    elif v.lower() in ('no', 'false', 'f', 'n', '0'):
        return False
    else:
        raise argparse.ArgumentTypeError('Boolean value expected.')


def log_level(verbose):
    if verbose < 0:
        return logging.ERROR
    if verbose == 0:
        return logging.WARNING
    if verbose == 1:
        return logging.INFO
    return logging.DEBUG


def main(argv=None):
    parser = argparse.ArgumentParser(
        description='Analyze and normalize linear difference and q-difference systems',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    parser.add_argument(
        '--verbose',
        help='Print logs (-1: errors only, 0: warnings, 1: progress, 2+: numerics)',
        default=0, type=int)
    sub_parsers = parser.add_subparsers(dest='command')

    # init subparsers
    analyze.init_parser(sub_parsers, str2bool)
    verify.init_parser(sub_parsers, str2bool)
    normalize.init_parser(sub_parsers, str2bool)

    args = parser.parse_args(argv)
    logging.basicConfig(level=log_level(args.verbose),
                        format='%(levelname)s %(name)s: %(message)s')
    logging.captureWarnings(True)
    if args.verbose < 0:
        warnings.simplefilter('ignore')

    try:
        if args.command == 'analyze':
            code = analyze.main(args)
        elif args.command == 'verify':
            code = verify.main(args)
        elif args.command == 'normalize':
            code = normalize.main(args)
        else:
            parser.print_help()
            code = 0
    except PyDiffSysError as e:
        sys.stderr.write('error ({}): {}\n'.format(type(e).__name__, e))
        if args.verbose >= 2:
            traceback.print_exc()
        code = e.exit_code
    return code or 0


if __name__ == '__main__':
    sys.exit(main())
