# -*- coding: utf-8 -*-

import sys

from .difference import DifferenceSystem, rationalize_difference
from .exceptions import ParseError
from .laurent import RationalMatrix
from .qdifference import QDifferenceSystem
from . import serialization


class SystemReader(object):
    """Reads system files of both kinds."""

    def __init__(self, rationalize=False):
        self.rationalize = rationalize

    def read_file(self, filename):
        return self.read_json(serialization.read_json(filename))

    def read_json(self, data, location='$'):
        if not isinstance(data, dict):
            raise ParseError('a system file holds a JSON object', location)
        kind = data.get('kind')
        if kind == 'difference':
            if self.rationalize:
                matrix = serialization.coefficient_matrix_from_json(data, location)
                if isinstance(matrix, RationalMatrix):
                    return rationalize_difference(matrix).system
            return DifferenceSystem.from_json(data, location)
        if kind == 'qdifference':
            return QDifferenceSystem.from_json(data, location, rationalize=self.rationalize)
        raise ParseError('unknown system kind {!r}'.format(kind), location + '.kind')


def emit(data, out=None):
    """Write a JSON report to `out`, or print it."""
    if out:
        serialization.write_json(out, data)
    else:
        sys.stdout.write(serialization.dumps(data))
        sys.stdout.write('\n')
