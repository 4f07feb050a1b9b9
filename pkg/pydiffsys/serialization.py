# -*- coding: utf-8 -*-
"""
JSON codec for scalars, Laurent polynomials and matrices.

Exact scalars are {"re": "p/q", "im": "p/q"}; a bare string or JSON
integer is an exact real; a JSON float is read as a big (inexact)
scalar. Laurent polynomials are {"exponent": coefficient} maps and
matrices are row-major lists.
"""

from fractions import Fraction
import json
import numbers

from mpmath import mp

from .exceptions import ParseError
from .laurent import LaurentPoly, MatrixLaurentPoly, RationalMatrix
from .scalar import ExactComplex, is_exact, to_big


def scalar_to_json(value):
    if is_exact(value):
        return ExactComplex.coerce(value).to_json()
    value = to_big(value)
    digits = int(mp.prec * 0.30103) + 1
    return {'re': mp.nstr(value.real, digits), 'im': mp.nstr(value.imag, digits)}


def _rational(text, location):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise ParseError('not a rational number: {!r}'.format(text), location)


def scalar_from_json(data, location='$'):
    if isinstance(data, bool):
        raise ParseError('booleans are not scalars', location)
    if isinstance(data, dict):
        unknown = set(data) - {'re', 'im'}
        if unknown:
            raise ParseError('unexpected scalar keys {}'.format(sorted(unknown)), location)
        re = data.get('re', 0)
        im = data.get('im', 0)
        if isinstance(re, float) or isinstance(im, float):
            return mp.mpc(re, im)
        return ExactComplex(_rational(str(re), location + '.re'),
                            _rational(str(im), location + '.im'))
    if isinstance(data, numbers.Integral):
        return ExactComplex(data)
    if isinstance(data, float):
        return mp.mpc(data)
    if isinstance(data, str):
        return ExactComplex(_rational(data, location))
    raise ParseError('expected a scalar, got {}'.format(type(data).__name__), location)


def laurent_to_json(p):
    return {str(k): scalar_to_json(c) for k, c in p.items()}


def laurent_from_json(data, location='$'):
    if isinstance(data, dict):
        coeffs = {}
        for key, value in data.items():
            try:
                exponent = int(key)
            except ValueError:
                raise ParseError('exponent keys must be integers, got {!r}'.format(key), location)
            coeffs[exponent] = scalar_from_json(value, '{}[{!r}]'.format(location, key))
        try:
            return LaurentPoly(coeffs)
        except OverflowError as e:
            raise ParseError(str(e), location)
    return LaurentPoly.constant(scalar_from_json(data, location))


def _check_square(rows, n, location):
    if not isinstance(rows, list) or len(rows) != n:
        raise ParseError('expected {} rows'.format(n), location)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError('expected {} entries'.format(n), '{}[{}]'.format(location, i))


def scalar_matrix_from_json(rows, n, location='$'):
    _check_square(rows, n, location)
    return [[scalar_from_json(x, '{}[{}][{}]'.format(location, i, j)) for j, x in enumerate(row)]
            for i, row in enumerate(rows)]


def scalar_matrix_to_json(matrix):
    n = len(matrix)
    return [[scalar_to_json(matrix[i][j]) for j in range(len(matrix[i]))] for i in range(n)]


def matrix_to_json(m):
    return [[laurent_to_json(e) for e in row] for row in m.entries]


def matrix_from_json(rows, n, location='$'):
    """Matrix given entrywise as Laurent maps."""
    _check_square(rows, n, location)
    return MatrixLaurentPoly([[laurent_from_json(x, '{}[{}][{}]'.format(location, i, j))
                               for j, x in enumerate(row)] for i, row in enumerate(rows)])


def coefficients_from_json(data, n, location='$.coefficients'):
    """
    Coefficient matrices either as a list (exponents 0, 1, ...) or as
    an {"exponent": matrix} map.
    """
    if isinstance(data, list):
        items = list(enumerate(data))
    elif isinstance(data, dict):
        items = []
        for key, value in data.items():
            try:
                items.append((int(key), value))
            except ValueError:
                raise ParseError('exponent keys must be integers, got {!r}'.format(key), location)
    else:
        raise ParseError('coefficients must be a list or a map', location)
    if not items:
        raise ParseError('no coefficient matrices', location)
    coefficients = {}
    for k, rows in items:
        coefficients[k] = scalar_matrix_from_json(rows, n, '{}[{}]'.format(location, k))
    return MatrixLaurentPoly.from_coefficients(coefficients)


def coefficients_to_json(m):
    low, high = m.low, m.high
    if low is None:
        return {}
    return {str(k): scalar_matrix_to_json(m.coefficient(k)) for k in range(low, high + 1)}


def coefficient_matrix_from_json(data, location='$'):
    """
    The coefficient matrix of a system file: `coefficients` (matrix
    coefficients), or `entries` (Laurent map per entry), optionally over
    a scalar `denominator`. Returns a MatrixLaurentPoly, or a
    RationalMatrix when a denominator is present.
    """
    n = require(data, 'n', int, location)
    if n < 1:
        raise ParseError('dimension must be positive', location + '.n')
    if 'coefficients' in data:
        m = coefficients_from_json(data['coefficients'], n, location + '.coefficients')
    elif 'entries' in data:
        m = matrix_from_json(data['entries'], n, location + '.entries')
    else:
        raise ParseError('missing "coefficients" or "entries"', location)
    if 'denominator' in data:
        denominator = laurent_from_json(data['denominator'], location + '.denominator')
        if denominator.is_zero():
            raise ParseError('zero denominator', location + '.denominator')
        return RationalMatrix(m, denominator)
    return m


def require(data, key, kind, location='$'):
    if not isinstance(data, dict) or key not in data:
        raise ParseError('missing key {!r}'.format(key), location)
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise ParseError('{!r} must be of type {}'.format(key, kind.__name__),
                         '{}.{}'.format(location, key))
    return value


def read_json(path):
    try:
        with open(path, 'r') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, '{}:{}:{}'.format(path, e.lineno, e.colno))
    except OSError as e:
        raise ParseError(str(e), str(path))


def dumps(data):
    return json.dumps(data, indent=2, sort_keys=True)


def write_json(path, data):
    with open(path, 'w') as f:
        f.write(dumps(data))
        f.write('\n')
