# -*- coding: utf-8 -*-
"""
Scalar tower: exact Gaussian rationals for the algebra and mpmath
complex floats (the "big" scalars) for the analysis. Promotion goes
exact -> big only, through `to_big`.
"""

from contextlib import contextmanager
from fractions import Fraction
import numbers

from mpmath import mp

from .exceptions import ConfigError

MIN_PRECISION = 64


def _fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, float):
        return Fraction(value)
    raise TypeError('Cannot build a rational from {!r}'.format(value))


class ExactComplex(object):
    """
    Gaussian rational re + i*im. Immutable; `re` and `im` are always
    reduced `fractions.Fraction` instances.
    """

    __slots__ = ('re', 'im')

    def __init__(self, re=0, im=0):
        object.__setattr__(self, 're', _fraction(re))
        object.__setattr__(self, 'im', _fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError('ExactComplex is immutable')

    @staticmethod
    def coerce(value):
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, complex):
            return ExactComplex(Fraction(value.real), Fraction(value.imag))
        return ExactComplex(value)

    @staticmethod
    def from_json(data):
        """
        Parameters
        ----------
        data : dict, str or int
            {"re": "p/q", "im": "p/q"}, or a bare rational for real values.
        """
        if isinstance(data, dict):
            return ExactComplex(data.get('re', 0), data.get('im', 0))
        return ExactComplex(data)

    def to_json(self):
        return {'re': str(self.re), 'im': str(self.im)}

    def to_big(self):
        return mp.mpc(mp.mpf(self.re.numerator) / self.re.denominator,
                      mp.mpf(self.im.numerator) / self.im.denominator)

    def _mpmath_(self, prec, rounding):
        return self.to_big()

    def conjugate(self):
        return ExactComplex(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        if isinstance(other, (ExactComplex, numbers.Rational)):
            other = ExactComplex.coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, (ExactComplex, numbers.Rational)):
            other = ExactComplex.coerce(other)
            return ExactComplex(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (ExactComplex, numbers.Rational)):
            other = ExactComplex.coerce(other)
            return ExactComplex(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, numbers.Rational):
            return ExactComplex.coerce(other) - self
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)
        if isinstance(other, numbers.Rational):
            other = _fraction(other)
            return ExactComplex(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, numbers.Rational):
            other = _fraction(other)
            if other == 0:
                raise ZeroDivisionError('ExactComplex division by zero')
            return ExactComplex(self.re / other, self.im / other)
        if isinstance(other, ExactComplex):
            den = other.abs2()
            if den == 0:
                raise ZeroDivisionError('ExactComplex division by zero')
            num = self * other.conjugate()
            return ExactComplex(num.re / den, num.im / den)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, numbers.Rational):
            return ExactComplex.coerce(other) / self
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ExactComplex(1) / (self ** -exponent)
        result = ExactComplex(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return '{}i'.format(self.im)
        sign = '+' if self.im > 0 else '-'
        return '{}{}{}i'.format(self.re, sign, abs(self.im))

    def __repr__(self):
        return 'ExactComplex({!r}, {!r})'.format(str(self.re), str(self.im))


ZERO = ExactComplex(0)
ONE = ExactComplex(1)
I = ExactComplex(0, 1)


def is_exact(value):
    return isinstance(value, (ExactComplex, numbers.Rational))


def exact(value):
    return ExactComplex.coerce(value)


def to_big(value):
    """Promote any supported scalar to an mpmath complex."""
    if isinstance(value, ExactComplex):
        return value.to_big()
    if isinstance(value, Fraction):
        return mp.mpc(mp.mpf(value.numerator) / value.denominator)
    if isinstance(value, numbers.Integral):
        return mp.mpc(int(value))
    return mp.mpc(value)


def is_zero(value, tol=0):
    if is_exact(value):
        return value == 0
    return abs(value) <= tol


def magnitude(value):
    if isinstance(value, ExactComplex):
        return mp.sqrt(to_big(value.abs2()).real)
    return abs(to_big(value))


def to_fraction(x, max_denominator=None):
    """Exact value of an mpf, optionally rounded to a bounded denominator."""
    sign, man, exp, _ = mp.mpf(x)._mpf_
    value = Fraction(int(man)) * (Fraction(2) ** int(exp)) if man else Fraction(0)
    if sign:
        value = -value
    if max_denominator is not None:
        value = value.limit_denominator(max_denominator)
    return value


def rationalize(z, max_denominator=10 ** 6):
    """Nearest Gaussian rational with bounded denominators."""
    z = to_big(z)
    return ExactComplex(to_fraction(z.real, max_denominator),
                        to_fraction(z.imag, max_denominator))


@contextmanager
def working_precision(bits):
    """
    Run mpmath code at `bits` of binary precision.

    Raises ConfigError below MIN_PRECISION bits.
    """
    if bits < MIN_PRECISION:
        raise ConfigError('precision must be at least {} bits, got {}'.format(
            MIN_PRECISION, bits))
    with mp.workprec(int(bits)):
        yield
