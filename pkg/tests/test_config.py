# -*- coding: utf-8 -*-

import argparse
import unittest

from pydiffsys.config import DEFAULTS, RunConfig, add_run_arguments
from pydiffsys.exceptions import ConfigError


class TestRunConfig(unittest.TestCase):

    def test_defaults(self):
        config = RunConfig(environ={})
        self.assertEqual(config.precision, 128)
        self.assertEqual(config.order, 40)
        self.assertEqual(config.samples, 0)
        self.assertEqual(config.tol, 1e-8)
        self.assertEqual(config.seed, 0)
        self.assertIsNone(config.out)
        self.assertEqual(config.anchor_line, DEFAULTS['anchor_line'])

    def test_environment_then_flags(self):
        environ = {'PYDIFFSYS_PRECISION': '256', 'PYDIFFSYS_TOL': '1e-12', 'PYDIFFSYS_SEED': ''}
        config = RunConfig(environ=environ)
        self.assertEqual(config.precision, 256)
        self.assertEqual(config.tol, 1e-12)
        self.assertEqual(config.seed, 0)
        config = RunConfig(precision=192, environ=environ)
        self.assertEqual(config.precision, 192)

    def test_validation(self):
        with self.assertRaises(ConfigError):
            RunConfig(precision=32, environ={})
        with self.assertRaises(ConfigError):
            RunConfig(tol=0.0, environ={})
        with self.assertRaises(ConfigError):
            RunConfig(order=0, environ={})
        with self.assertRaises(ConfigError):
            RunConfig(environ={'PYDIFFSYS_ORDER': 'forty'})

    def test_from_args(self):
        parser = argparse.ArgumentParser()
        add_run_arguments(parser)
        args = parser.parse_args(['--precision', '96', '--samples', '3'])
        config = RunConfig.from_args(args, environ={'PYDIFFSYS_SAMPLES': '5'})
        self.assertEqual(config.precision, 96)
        self.assertEqual(config.samples, 3)
        self.assertEqual(config.to_json(), {'precision': 96, 'order': 40, 'samples': 3,
                                            'tol': 1e-8, 'seed': 0})
