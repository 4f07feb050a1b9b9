# -*- coding: utf-8 -*-
"""
Laurent polynomials, square matrices over them and the exact linear
algebra the gauge machinery relies on.

Coefficients are either exact (`ExactComplex`) or big (`mpmath.mpc`);
a polynomial never mixes the two. Zero coefficients are never stored.
"""

from collections import namedtuple
from fractions import Fraction
import numbers

from mpmath import mp
import sympy

from .scalar import ExactComplex, is_exact, to_big, is_zero, magnitude
from .exceptions import SingularGauge

MAX_EXPONENT = 2 ** 31

KernelVector = namedtuple('KernelVector', ['vector', 'support'])


def _scalar(value):
    if isinstance(value, ExactComplex):
        return value
    if isinstance(value, numbers.Rational):
        return ExactComplex(value)
    if isinstance(value, complex):
        return mp.mpc(value)
    if isinstance(value, (mp.mpc, mp.mpf, float)):
        return mp.mpc(value)
    raise TypeError('Unsupported coefficient {!r}'.format(value))


def _check_exponent(k):
    if not isinstance(k, numbers.Integral) or abs(k) >= MAX_EXPONENT:
        raise OverflowError('Laurent exponent out of range: {!r}'.format(k))
    return int(k)


def _binomial(n, k):
    result = 1
    for i in range(k):
        result = result * (n - i) // (i + 1)
    return result


class LaurentPoly(object):

    __slots__ = ('coeffs',)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                c = _scalar(c)
                if c != 0:
                    clean[_check_exponent(k)] = c
        object.__setattr__(self, 'coeffs', clean)

    def __setattr__(self, name, value):
        raise AttributeError('LaurentPoly is immutable')

    # builders

    @staticmethod
    def constant(c):
        return LaurentPoly({0: c})

    @staticmethod
    def monomial(c, k):
        return LaurentPoly({k: c})

    @staticmethod
    def z(k=1):
        return LaurentPoly({k: 1})

    @staticmethod
    def from_list(coefficients, low=0):
        """Coefficients in ascending order, starting at z**low."""
        return LaurentPoly({low + i: c for i, c in enumerate(coefficients)})

    @staticmethod
    def from_roots(roots, leading=1):
        p = LaurentPoly.constant(leading)
        for root in roots:
            p = p * LaurentPoly({1: 1, 0: -_scalar(root)})
        return p

    # structure

    @property
    def low(self):
        return min(self.coeffs) if self.coeffs else None

    @property
    def high(self):
        return max(self.coeffs) if self.coeffs else None

    degree = high

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    def is_monomial(self):
        return len(self.coeffs) == 1

    def is_polynomial(self):
        return not self.coeffs or self.low >= 0

    def is_exact(self):
        return all(is_exact(c) for c in self.coeffs.values())

    def coefficient(self, k):
        return self.coeffs.get(k, ExactComplex(0) if self.is_exact() else mp.mpc(0))

    def leading(self):
        return self.coeffs[self.high]

    def items(self):
        return sorted(self.coeffs.items())

    def to_big(self):
        return LaurentPoly({k: to_big(c) for k, c in self.coeffs.items()})

    def map(self, f):
        return LaurentPoly({k: f(c) for k, c in self.coeffs.items()})

    def chop(self, tol):
        return LaurentPoly({k: c for k, c in self.coeffs.items()
                            if is_exact(c) or abs(c) > tol})

    # arithmetic

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(tuple(self.items()))

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.coeffs.items()})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        result = dict(self.coeffs)
        for k, c in other.coeffs.items():
            result[k] = result[k] + c if k in result else c
        return LaurentPoly(result)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.constant(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, MatrixLaurentPoly):
                return NotImplemented
            other = _scalar(other)
            return LaurentPoly({k: c * other for k, c in self.coeffs.items()})
        result = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                result[k] = result[k] + a * b if k in result else a * b
        return LaurentPoly(result)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            if self.is_monomial() and isinstance(exponent, int):
                (k, c), = self.coeffs.items()
                return LaurentPoly({k * exponent: 1 / c ** -exponent})
            raise ValueError('Only monomials have negative powers')
        result = LaurentPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def times_z(self, m):
        """Multiply by z**m."""
        return LaurentPoly({k + m: c for k, c in self.coeffs.items()})

    # evaluation and substitutions

    def evaluate(self, z):
        if is_exact(z) and self.is_exact():
            z = ExactComplex.coerce(z)
            total = ExactComplex(0)
            for k, c in self.coeffs.items():
                total = total + c * z ** k
            return total
        zb = to_big(z)
        total = mp.mpc(0)
        for k, c in self.coeffs.items():
            total += to_big(c) * zb ** k
        return total

    __call__ = evaluate

    def substitute_scale(self, q):
        """p(q z)."""
        q = _scalar(q)
        return LaurentPoly({k: c * q ** k for k, c in self.coeffs.items()})

    def substitute_shift(self, h=1):
        """p(z + h); only defined for polynomials."""
        if not self.is_polynomial():
            raise ValueError('Shift substitution needs a polynomial')
        h = _scalar(h)
        result = {}
        for k, c in self.coeffs.items():
            for j in range(k + 1):
                term = c * _binomial(k, j) * h ** (k - j)
                result[j] = result[j] + term if j in result else term
        return LaurentPoly(result)

    def derivative(self):
        return LaurentPoly({k - 1: c * k for k, c in self.coeffs.items() if k})

    # division

    def divmod(self, divisor):
        """
        Euclidean division of polynomials. Returns (quotient, remainder)
        with deg remainder < deg divisor.
        """
        if divisor.is_zero():
            raise ZeroDivisionError('division by the zero polynomial')
        if not (self.is_polynomial() and divisor.is_polynomial()):
            raise ValueError('Euclidean division needs polynomials')
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        lead = divisor.leading()
        dh = divisor.high
        rem = dict(self.coeffs)
        quot = {}
        while rem and max(rem) >= dh:
            top = max(rem)
            factor = rem[top] / lead
            quot[top - dh] = factor
            for k, c in divisor.coeffs.items():
                key = top - dh + k
                value = rem.get(key, 0) - factor * c
                if key == top or value == 0:
                    rem.pop(key, None)
                else:
                    rem[key] = value
        return LaurentPoly(quot), LaurentPoly(rem)

    def exact_quotient(self, divisor, tol=0):
        """
        Quotient in the Laurent ring (z is a unit) when `divisor`
        divides self, else None. With `tol`, numeric remainders below it
        count as zero.
        """
        if self.is_zero():
            return LaurentPoly()
        num = self.times_z(-self.low)
        den = divisor.times_z(-divisor.low)
        quotient, remainder = num.divmod(den)
        if not remainder.is_zero():
            if not tol or any(is_exact(c) or abs(c) > tol for c in remainder.coeffs.values()):
                return None
        return quotient.times_z(self.low - divisor.low)

    def __str__(self):
        if not self.coeffs:
            return '0'
        terms = []
        for k, c in sorted(self.coeffs.items(), reverse=True):
            c = '({})'.format(c)
            if k == 0:
                terms.append(c)
            elif k == 1:
                terms.append('{}*z'.format(c))
            else:
                terms.append('{}*z^{}'.format(c, k))
        return ' + '.join(terms)

    def __repr__(self):
        return 'LaurentPoly({})'.format(self)


def _as_poly(value):
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


# sympy bridge

Z = sympy.Symbol('z')


def exact_to_sympy(value):
    """Gaussian rational as a sympy number."""
    value = ExactComplex.coerce(value)
    return (sympy.Rational(value.re.numerator, value.re.denominator)
            + sympy.Rational(value.im.numerator, value.im.denominator) * sympy.I)


def exact_from_sympy(value):
    """Sympy Gaussian rational (possibly unexpanded) as an ExactComplex."""
    parts = sympy.expand_complex(sympy.sympify(value)).as_real_imag()
    re, im = (sympy.Rational(sympy.simplify(part)) for part in parts)
    return ExactComplex(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))


def _sympy_is_zero(value):
    return sympy.expand_complex(value) == 0


def laurent_to_sympy(p):
    """Exact polynomial as an expression in z."""
    return sympy.Add(*[exact_to_sympy(c) * Z ** k for k, c in p.items()])


def laurent_from_sympy(expr, shift=0):
    """Polynomial expression in z, times z**shift, as a LaurentPoly."""
    poly = sympy.Poly(sympy.expand(expr), Z)
    return LaurentPoly({k + shift: exact_from_sympy(c) for (k,), c in poly.terms()})


def sympy_poly(p):
    """Exact polynomial (no negative powers) as a sympy Poly in z."""
    if not p.is_polynomial():
        raise ValueError('a Laurent polynomial with negative powers is not a polynomial')
    return sympy.Poly(laurent_to_sympy(p), Z, field=True)


def _is_exact_entry(x):
    return x.is_exact() if isinstance(x, LaurentPoly) else is_exact(x)


def _sympy_rows(rows):
    """
    Sympy matrix of exact scalars or Laurent polynomials, multiplied by
    z**-shift so that it is polynomial; returns (matrix, shift).
    """
    if not any(isinstance(x, LaurentPoly) for row in rows for x in row):
        return sympy.Matrix([[exact_to_sympy(x) for x in row] for row in rows]), None
    entries = [[_as_poly(x) for x in row] for row in rows]
    shift = min([e.low for row in entries for e in row if not e.is_zero()] + [0])
    return sympy.Matrix([[laurent_to_sympy(e.times_z(-shift)) for e in row]
                         for row in entries]), shift


def _from_sympy_entry(value, shift):
    if shift is None:
        return exact_from_sympy(value)
    return laurent_from_sympy(value, shift)


def determinant(rows):
    """
    Determinant of a square list of ring elements (scalars or
    LaurentPoly): Berkowitz in sympy for exact entries, cofactor
    expansion along the sparsest row otherwise.
    """
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    if all(_is_exact_entry(x) for row in rows for x in row):
        matrix, shift = _sympy_rows(rows)
        return _from_sympy_entry(matrix.det(method='berkowitz'),
                                 None if shift is None else n * shift)

    def nonzero(x):
        return bool(x)

    pivot_row = min(range(n), key=lambda i: sum(1 for x in rows[i] if nonzero(x)))
    total = None
    for j, entry in enumerate(rows[pivot_row]):
        if not nonzero(entry):
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(n) if i != pivot_row]
        term = entry * determinant(minor)
        if (pivot_row + j) % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0
    return total


class MatrixLaurentPoly(object):
    """
    Square n x n matrix of LaurentPoly entries; the carrier of A(z),
    Q(z), gauges M(z) and the Sauvage factors.
    """

    __slots__ = ('entries',)

    def __init__(self, entries):
        rows = tuple(tuple(_as_poly(e) for e in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError('MatrixLaurentPoly must be square')
        object.__setattr__(self, 'entries', rows)

    def __setattr__(self, name, value):
        raise AttributeError('MatrixLaurentPoly is immutable')

    @property
    def n(self):
        return len(self.entries)

    # builders

    @staticmethod
    def identity(n):
        return MatrixLaurentPoly([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(n):
        return MatrixLaurentPoly([[0] * n for _ in range(n)])

    @staticmethod
    def diag(values):
        n = len(values)
        return MatrixLaurentPoly([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def z_power(exponents, center=None):
        """
        diag(z**k_i), or diag((z - center)**k_i) when every exponent
        is nonnegative.
        """
        if center is None:
            return MatrixLaurentPoly.diag([LaurentPoly.z(k) for k in exponents])
        if any(k < 0 for k in exponents):
            raise ValueError('Negative powers of (z - center) are not Laurent')
        factor = LaurentPoly({1: 1, 0: -_scalar(center)})
        return MatrixLaurentPoly.diag([factor ** k for k in exponents])

    @staticmethod
    def from_coefficients(coefficients):
        """
        Parameters
        ----------
        coefficients : dict
            exponent -> n x n list of scalars.
        """
        n = len(next(iter(coefficients.values())))
        entries = [[{} for _ in range(n)] for _ in range(n)]
        for k, mat in coefficients.items():
            for i in range(n):
                for j in range(n):
                    entries[i][j][k] = mat[i][j]
        return MatrixLaurentPoly([[LaurentPoly(e) for e in row] for row in entries])

    @staticmethod
    def constant(matrix):
        return MatrixLaurentPoly([[LaurentPoly.constant(c) for c in row] for row in matrix])

    @staticmethod
    def permutation(perm):
        """Row i of the result is row perm[i] of the identity."""
        n = len(perm)
        return MatrixLaurentPoly([[1 if j == perm[i] else 0 for j in range(n)] for i in range(n)])

    # structure

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def rows(self):
        return [list(row) for row in self.entries]

    @property
    def high(self):
        values = [e.high for row in self.entries for e in row if not e.is_zero()]
        return max(values) if values else None

    @property
    def low(self):
        values = [e.low for row in self.entries for e in row if not e.is_zero()]
        return min(values) if values else None

    def coefficient(self, k):
        return [[e.coefficient(k) for e in row] for row in self.entries]

    def is_polynomial(self):
        return all(e.is_polynomial() for row in self.entries for e in row)

    def is_exact(self):
        return all(e.is_exact() for row in self.entries for e in row)

    def is_zero(self):
        return all(e.is_zero() for row in self.entries for e in row)

    def map(self, f):
        return MatrixLaurentPoly([[f(e) for e in row] for row in self.entries])

    def to_big(self):
        return self.map(LaurentPoly.to_big)

    def chop(self, tol):
        return self.map(lambda e: e.chop(tol))

    def transpose(self):
        n = self.n
        return MatrixLaurentPoly([[self.entries[j][i] for j in range(n)] for i in range(n)])

    # arithmetic

    def __eq__(self, other):
        if not isinstance(other, MatrixLaurentPoly):
            return NotImplemented
        return self.entries == other.entries

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.entries)

    def __neg__(self):
        return self.map(lambda e: -e)

    def __add__(self, other):
        n = self.n
        return MatrixLaurentPoly([[self.entries[i][j] + other.entries[i][j] for j in range(n)]
                                  for i in range(n)])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MatrixLaurentPoly):
            n = self.n
            result = []
            for i in range(n):
                row = []
                for j in range(n):
                    acc = LaurentPoly()
                    for k in range(n):
                        a = self.entries[i][k]
                        b = other.entries[k][j]
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                result.append(row)
            return MatrixLaurentPoly(result)
        return self.map(lambda e: e * other)

    def __rmul__(self, other):
        return self.map(lambda e: e * other)

    # evaluation and substitutions

    def evaluate(self, z):
        """Exact list of lists at exact points, mpmath matrix otherwise."""
        if is_exact(z) and self.is_exact():
            return [[e.evaluate(z) for e in row] for row in self.entries]
        zb = to_big(z)
        return mp.matrix([[e.evaluate(zb) for e in row] for row in self.entries])

    __call__ = evaluate

    def substitute_scale(self, q):
        return self.map(lambda e: e.substitute_scale(q))

    def substitute_shift(self, h=1):
        return self.map(lambda e: e.substitute_shift(h))

    def det(self):
        return poly_det(self)

    def adjugate(self):
        n = self.n
        rows = self.rows()
        if n == 1:
            return MatrixLaurentPoly([[1]])
        if n > 2 and self.is_exact():
            matrix, shift = _sympy_rows(rows)
            adj = matrix.adjugate(method='berkowitz')
            return MatrixLaurentPoly([[laurent_from_sympy(adj[i, j], (n - 1) * shift)
                                       for j in range(n)] for i in range(n)])
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[rows[a][b] for b in range(n) if b != j] for a in range(n) if a != i]
                cof = _as_poly(determinant(minor))
                adj[j][i] = -cof if (i + j) % 2 else cof
        return MatrixLaurentPoly(adj)

    def inverse(self):
        """
        Laurent inverse when det is a monomial, RationalMatrix otherwise.

        Raises SingularGauge when det vanishes identically.
        """
        d = self.det()
        if d.is_zero():
            raise SingularGauge('matrix has identically zero determinant')
        adj = self.adjugate()
        if d.is_monomial():
            return adj * (d ** -1)
        return RationalMatrix(adj, d)

    def __str__(self):
        return '\n'.join('[' + ', '.join(str(e) for e in row) + ']' for row in self.entries)

    def __repr__(self):
        return 'MatrixLaurentPoly(n={})'.format(self.n)


class RationalMatrix(object):
    """
    numerator(z) / denominator(z) with a scalar Laurent denominator.
    """

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator, denominator=None):
        if denominator is None:
            denominator = LaurentPoly.constant(1)
        denominator = _as_poly(denominator)
        if denominator.is_zero():
            raise ZeroDivisionError('RationalMatrix with zero denominator')
        object.__setattr__(self, 'numerator', numerator)
        object.__setattr__(self, 'denominator', denominator)

    def __setattr__(self, name, value):
        raise AttributeError('RationalMatrix is immutable')

    @property
    def n(self):
        return self.numerator.n

    @property
    def high(self):
        return self.numerator.high - self.denominator.high

    def is_exact(self):
        return self.numerator.is_exact() and self.denominator.is_exact()

    def to_big(self):
        return RationalMatrix(self.numerator.to_big(), self.denominator.to_big())

    def evaluate(self, z):
        d = self.denominator.evaluate(z)
        value = self.numerator.evaluate(z)
        if isinstance(value, list):
            return [[e / d for e in row] for row in value]
        return value / d

    __call__ = evaluate

    def simplify(self, tol=0):
        """MatrixLaurentPoly when the denominator divides every entry (remainders up to `tol`)."""
        if self.denominator.is_monomial():
            return self.numerator * (self.denominator ** -1)
        rows = []
        for row in self.numerator.entries:
            new_row = []
            for e in row:
                quotient = e.exact_quotient(self.denominator, tol)
                if quotient is None:
                    return self
                new_row.append(quotient)
            rows.append(new_row)
        return MatrixLaurentPoly(rows)

    def expansion_at_infinity(self, order):
        """
        Coefficients C_0..C_order with
        M(z) = z**high * (C_0 + C_1/z + ... + C_order/z**order + ...).
        """
        return expansion_at_infinity(self, order)

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            return RationalMatrix(self.numerator * other.numerator,
                                  self.denominator * other.denominator)
        if isinstance(other, MatrixLaurentPoly):
            return RationalMatrix(self.numerator * other, self.denominator)
        return RationalMatrix(self.numerator * other, self.denominator)

    def __rmul__(self, other):
        if isinstance(other, MatrixLaurentPoly):
            return RationalMatrix(other * self.numerator, self.denominator)
        return RationalMatrix(self.numerator * other, self.denominator)

    def __repr__(self):
        return 'RationalMatrix(n={})'.format(self.n)


def as_rational(m):
    if isinstance(m, RationalMatrix):
        return m
    return RationalMatrix(m)


def expansion_at_infinity(m, order, top=None):
    """
    Expansion of a MatrixLaurentPoly or RationalMatrix in powers of 1/z,
    normalized by z**top (default: the nominal top degree).
    """
    m = as_rational(m)
    num, den = m.numerator, m.denominator
    n = num.n
    if top is None:
        top = m.high
    dh = den.high
    d = [den.coefficient(dh - i) for i in range(order + 1)]
    nh = top + dh
    result = []
    for j in range(order + 1):
        c = num.coefficient(nh - j)
        for i in range(1, min(j, len(d) - 1) + 1):
            if d[i]:
                prev = result[j - i]
                c = [[c[a][b] - d[i] * prev[a][b] for b in range(n)] for a in range(n)]
        result.append([[x / d[0] for x in row] for row in c])
    return result


def poly_det(m):
    """
    Determinant of a MatrixLaurentPoly as a LaurentPoly.
    """
    if not isinstance(m, MatrixLaurentPoly):
        m = MatrixLaurentPoly(m)
    return _as_poly(determinant(m.rows()))


# scalar matrices

def identity(n, exact_entries=True):
    one, zero = (ExactComplex(1), ExactComplex(0)) if exact_entries else (mp.mpc(1), mp.mpc(0))
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(row) for row in zip(*a)]


def _row_echelon(a, tol):
    """Numeric reduced row echelon form with partial pivoting; returns (rref, pivots)."""
    a = [list(row) for row in a]
    rows, cols = len(a), len(a[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        pivot = max(range(r, rows), key=lambda i: abs(a[i][c]))
        if abs(a[pivot][c]) <= tol:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        lead = a[r][c]
        a[r] = [x / lead for x in a[r]]
        for i in range(rows):
            if i != r and not is_zero(a[i][c]):
                factor = a[i][c]
                a[i] = [x - factor * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def _all_exact(a):
    return all(is_exact(x) for row in a for x in row)


def kernel_basis(a, tol=0):
    """
    Basis of the right kernel {v : a v = 0}; each vector is scaled so
    that its first nonzero entry is 1.
    """
    if _all_exact(a):
        matrix, _ = _sympy_rows(a)
        basis = [[exact_from_sympy(x) for x in v]
                 for v in matrix.nullspace(iszerofunc=_sympy_is_zero)]
        return [[x / next(y for y in v if y != 0) for x in v] for v in basis]
    cols = len(a[0])
    rref, pivots = _row_echelon(a, tol)
    one, zero = mp.mpc(1), mp.mpc(0)
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        v = [zero] * cols
        v[free] = one
        for r, p in enumerate(pivots):
            v[p] = -rref[r][free]
        first = next(x for x in v if not is_zero(x, tol))
        basis.append([x / first for x in v])
    return basis


def null_vectors(m, side='left', tol=0):
    """All kernel basis vectors with their supports (exact or numeric)."""
    if side == 'left':
        m = transpose(m)
    return [KernelVector(v, [i for i, x in enumerate(v) if not is_zero(x, tol)])
            for v in kernel_basis(m, tol)]


def exact_kernel_vector(m):
    """
    Nonzero left null vector v (v.m = 0) of a square exact matrix, or
    None when m is invertible.

    Returns
    -------
    KernelVector or None
        The vector, first nonzero entry 1, and the increasing indices
        of its nonzero entries.
    """
    vectors = null_vectors([[ExactComplex.coerce(x) for x in row] for row in m], 'left')
    return vectors[0] if vectors else None


def _exact_square(a):
    """Sympy matrix of an exact square matrix; ZeroDivisionError when singular."""
    matrix, _ = _sympy_rows(a)
    if _sympy_is_zero(matrix.det(method='berkowitz')):
        raise ZeroDivisionError('singular matrix')
    return matrix


def solve(a, b, tol=0):
    """Solve a x = b for a square scalar matrix and a vector b."""
    n = len(a)
    if _all_exact(a) and all(is_exact(x) for x in b):
        matrix = _exact_square(a)
        x = matrix.LUsolve(sympy.Matrix([exact_to_sympy(y) for y in b]))
        return [exact_from_sympy(x[i]) for i in range(n)]
    augmented = [list(a[i]) + [b[i]] for i in range(n)]
    rref, pivots = _row_echelon(augmented, tol)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError('singular linear system')
    return [rref[i][n] for i in range(n)]


def matinv(a, tol=0):
    n = len(a)
    if _all_exact(a):
        inverse = _exact_square(a).inv(method='LU', iszerofunc=_sympy_is_zero)
        return [[exact_from_sympy(inverse[i, j]) for j in range(n)] for i in range(n)]
    eye = identity(n, False)
    augmented = [list(a[i]) + eye[i] for i in range(n)]
    rref, pivots = _row_echelon(augmented, tol)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError('singular matrix')
    return [row[n:] for row in rref]


def max_norm(a):
    return max((magnitude(x) for row in a for x in row), default=mp.mpf(0))


def to_mp_matrix(a):
    return mp.matrix([[to_big(x) for x in row] for row in a])


def from_mp_matrix(m):
    return [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]
