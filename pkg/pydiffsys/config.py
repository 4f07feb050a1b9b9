# -*- coding: utf-8 -*-
"""
Run configuration shared by the commands.

Precedence: explicit command line flags, then PYDIFFSYS_* environment
variables, then the defaults below.
"""

from fractions import Fraction
import os

from .exceptions import ConfigError
from .scalar import MIN_PRECISION

ENV_PREFIX = 'PYDIFFSYS_'

DEFAULTS = {
    'precision': 128,
    'order': 40,
    'samples': 0,
    'tol': 1e-8,
    'seed': 0,
    'out': None,
    'anchor_line': Fraction(1, 2),
    't0': 0,
}

_ENV_TYPES = {
    'precision': int,
    'order': int,
    'samples': int,
    'tol': float,
    'seed': int,
}


class RunConfig(object):

    def __init__(self, precision=None, order=None, samples=None, tol=None, seed=None,
                 out=None, anchor_line=None, t0=None, environ=None):
        values = dict(DEFAULTS)
        values.update(self._from_environment(os.environ if environ is None else environ))
        explicit = {'precision': precision, 'order': order, 'samples': samples, 'tol': tol,
                    'seed': seed, 'out': out, 'anchor_line': anchor_line, 't0': t0}
        values.update({k: v for k, v in explicit.items() if v is not None})

        self.precision = values['precision']
        self.order = values['order']
        self.samples = values['samples']
        self.tol = values['tol']
        self.seed = values['seed']
        self.out = values['out']
        self.anchor_line = values['anchor_line']
        self.t0 = values['t0']
        self.validate()

    @staticmethod
    def _from_environment(environ):
        values = {}
        for key, kind in _ENV_TYPES.items():
            raw = environ.get(ENV_PREFIX + key.upper())
            if raw is None or raw == '':
                continue
            try:
                values[key] = kind(raw)
            except ValueError:
                raise ConfigError('{}{} must be {}, got {!r}'.format(
                    ENV_PREFIX, key.upper(), kind.__name__, raw))
        return values

    @staticmethod
    def from_args(args, environ=None):
        """Build from an argparse namespace; missing attributes fall back."""
        return RunConfig(**{key: getattr(args, key, None)
                            for key in ('precision', 'order', 'samples', 'tol', 'seed', 'out')},
                         environ=environ)

    def validate(self):
        if self.precision < MIN_PRECISION:
            raise ConfigError('precision must be at least {} bits, got {}'.format(
                MIN_PRECISION, self.precision))
        if not self.tol > 0:
            raise ConfigError('tol must be positive, got {}'.format(self.tol))
        if self.order < 1:
            raise ConfigError('order must be positive, got {}'.format(self.order))
        if self.samples < 0:
            raise ConfigError('samples must be nonnegative, got {}'.format(self.samples))
        if not self.anchor_line > 0:
            raise ConfigError('anchor_line must be positive, got {}'.format(self.anchor_line))

    def to_json(self):
        return {'precision': self.precision, 'order': self.order, 'samples': self.samples,
                'tol': self.tol, 'seed': self.seed}

    def __repr__(self):
        return 'RunConfig({})'.format(', '.join('{}={!r}'.format(k, v)
                                               for k, v in sorted(self.to_json().items())))


def add_run_arguments(parser):
    """The flags every command shares; unset flags fall back to RunConfig."""
    parser.add_argument(
        '--precision', type=int,
        help='Binary precision of the numerics (default {}).'.format(DEFAULTS['precision']))
    parser.add_argument(
        '--order', type=int,
        help='Series truncation order (default {}).'.format(DEFAULTS['order']))
    parser.add_argument(
        '--samples', type=int,
        help='Number of sample points, 0 for automatic (default {}).'.format(
            DEFAULTS['samples']))
    parser.add_argument(
        '--tol', type=float,
        help='Tolerance of the residual checks (default {}).'.format(DEFAULTS['tol']))
    parser.add_argument(
        '--seed', type=int,
        help='Seed of randomized checks (default {}).'.format(DEFAULTS['seed']))
    parser.add_argument(
        '--out', type=str,
        help='Write the JSON report to this file instead of stdout.')
