# -*- coding: utf-8 -*-
"""
Weierstrass sigma function on the lattice Z + Z omega', with
omega' = 2 pi i / ln q, built from the Jacobi theta function of mpmath.

Conventions: sigma(t + 1) = -exp(eta (t + 1/2)) sigma(t),
sigma(t + omega') = -exp(eta' (t + omega'/2)) sigma(t) and
eta omega' - eta' = 2 pi i.
"""

import logging

from mpmath import mp

from .exceptions import DomainError, PrecisionExhausted
from .scalar import to_big

logger = logging.getLogger(__name__)


class PeriodLattice(object):
    """
    Period lattice of a q-difference system with |q| > 1.

    Attributes
    ----------
    q, log_q : mpc
        The ratio and its principal logarithm.
    omega, omega_prime : mpc
        The periods 1 and 2 pi i / ln q (Im omega_prime > 0).
    nome : mpc
        exp(i pi omega_prime).
    eta, eta_prime : mpc
        Quasi-period constants.
    """

    def __init__(self, q):
        self.q = to_big(q)
        if not abs(self.q) > 1:
            raise DomainError('the period lattice needs |q| > 1, got {}'.format(mp.nstr(self.q, 10)))
        self.log_q = mp.log(self.q)
        self.omega = mp.mpc(1)
        self.omega_prime = 2j * mp.pi / self.log_q
        self.nome = mp.exp(1j * mp.pi * self.omega_prime)
        self.theta_prime = mp.jtheta(1, 0, self.nome, 1)
        third = mp.jtheta(1, 0, self.nome, 3)
        self.eta = -(mp.pi ** 2 / 3) * third / self.theta_prime
        self.eta_prime = self.eta * self.omega_prime - 2j * mp.pi
        residual = self.legendre_residual()
        if residual > mp.mpf(2) ** (-mp.prec // 2):
            raise PrecisionExhausted('Legendre relation residual {}'.format(mp.nstr(residual, 5)))

    def legendre_residual(self):
        return abs(self.eta * self.omega_prime - self.eta_prime - 2j * mp.pi)

    def reduce(self, t, origin=0):
        """
        Representative of t in the fundamental parallelogram
        origin + [0, 1) + [0, 1) omega', with the integer shifts used.

        Returns
        -------
        (mpc, int, int)
            t - a - b omega', a, b.
        """
        delta = to_big(t) - to_big(origin)
        b = int(mp.floor(delta.imag / self.omega_prime.imag))
        rest = delta - b * self.omega_prime
        a = int(mp.floor(rest.real))
        return to_big(t) - a - b * self.omega_prime, a, b

    def coordinates(self, t, origin=0):
        """Real (x, y) with t - origin = x + y omega'."""
        delta = to_big(t) - to_big(origin)
        y = delta.imag / self.omega_prime.imag
        return (delta - y * self.omega_prime).real, y

    def to_json(self):
        def pair(x):
            return {'re': mp.nstr(x.real, 20), 'im': mp.nstr(x.imag, 20)}

        return {'omega': pair(self.omega), 'omega_prime': pair(self.omega_prime),
                'eta': pair(self.eta), 'eta_prime': pair(self.eta_prime),
                'legendre_residual': mp.nstr(self.legendre_residual(), 5)}

    def __repr__(self):
        return 'PeriodLattice(q={})'.format(mp.nstr(self.q, 10))


def lattice_constants(q, precision=128):
    with mp.workprec(precision):
        return PeriodLattice(q)


def sigma_eval(t, lattice):
    """sigma(t) = (1/pi) exp(eta t**2 / 2) theta_1(pi t) / theta_1'(0)."""
    t = to_big(t)
    return (mp.exp(lattice.eta * t * t / 2) * mp.jtheta(1, mp.pi * t, lattice.nome)
            / (mp.pi * lattice.theta_prime))


def sigma_derivative(t, lattice):
    t = to_big(t)
    theta = mp.jtheta(1, mp.pi * t, lattice.nome)
    dtheta = mp.pi * mp.jtheta(1, mp.pi * t, lattice.nome, 1)
    return (mp.exp(lattice.eta * t * t / 2) * (lattice.eta * t * theta + dtheta)
            / (mp.pi * lattice.theta_prime))


def quasi_periodicity_residual(lattice, points):
    """
    Largest relative defect of both quasi-periodicity relations. Points on
    the lattice, where sigma vanishes to round-off, are skipped.
    """
    worst = mp.mpf(0)
    floor = mp.mpf(2) ** (-mp.prec // 2)
    for t in points:
        t = to_big(t)
        value = sigma_eval(t, lattice)
        if abs(value) <= floor * max(1, abs(sigma_derivative(t, lattice))):
            continue
        shifted = sigma_eval(t + 1, lattice)
        expected = -mp.exp(lattice.eta * (t + mp.mpf(1) / 2)) * value
        worst = max(worst, abs(shifted - expected) / abs(expected))
        w = lattice.omega_prime
        shifted = sigma_eval(t + w, lattice)
        expected = -mp.exp(lattice.eta_prime * (t + w / 2)) * value
        worst = max(worst, abs(shifted - expected) / abs(expected))
    return worst
