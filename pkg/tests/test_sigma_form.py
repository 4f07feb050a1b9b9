# -*- coding: utf-8 -*-

import pytest
from mpmath import mp

from pydiffsys.elliptic import PeriodLattice
from pydiffsys.exceptions import MultipleZeroDetected
from pydiffsys.laurent import MatrixLaurentPoly
from pydiffsys.qdifference import (QDifferenceSystem, QMonodromyReport, monodromy_q,
                                   parallelogram_grid)
from pydiffsys.sigma_form import (fit_sigma_form, lattice_integers, locate_zeros, model,
                                  winding_numbers)
from pydiffsys.scalar import working_precision
from pydiffsys.utils import SystemReader


def planted_report(lattice, mu, gamma, zeros, sigma):
    """A 1 x 1 monodromy report whose entry is a known sigma product."""
    def evaluator(t):
        return mp.matrix([[model(lattice, mu, gamma, zeros, t)]])

    points = parallelogram_grid(lattice, 4)
    values = [evaluator(t) for t in points]
    return QMonodromyReport(points, values, mp.mpf(0), mp.mpf(0), [sigma], [mp.mpc(0)], mu,
                            lattice.q, lattice, evaluator, mp.mpc(0), 128)


def test_planted_simple_zero():
    with working_precision(128):
        lattice = PeriodLattice(2)
        a = mp.mpf('0.4') + mp.mpf('0.3') * lattice.omega_prime
        s = a + mp.pi * 1j / lattice.log_q
        gamma = lattice.eta * s - lattice.eta_prime / 2
        report = planted_report(lattice, 1, gamma, [a], s)
        fit = fit_sigma_form(report, strict=True)
        assert report.fit is fit
        entry = fit.entries[0, 0]
        assert abs(entry.zeros[0] - a) < 1e-15
        assert (entry.u, entry.v) == (0, 0)
        assert abs(entry.c - 1) < 1e-12
        assert fit.residual < 1e-12
        assert fit.lattice_residual < 1e-12
        assert len(fit.det_zeros) == 1
        assert abs(fit.det_zeros[0] - a) < 1e-15
        data = fit.to_json()
        assert data['zero_counts'] == {'1,1': 1}
        assert data['zero_entries'] == []


def test_lattice_integers_of_shifted_zero():
    with working_precision(128):
        lattice = PeriodLattice(2)
        a = mp.mpf('0.4') + mp.mpf('0.3') * lattice.omega_prime
        s = a + mp.pi * 1j / lattice.log_q
        u, v, residual = lattice_integers(lattice, 1, s, 0, [a + 2 + lattice.omega_prime])
        assert (u, v) == (-1, 2)
        assert residual < 1e-30


def test_double_zero_is_rejected():
    with working_precision(128):
        lattice = PeriodLattice(2)
        a = mp.mpf('0.4') + mp.mpf('0.3') * lattice.omega_prime
        report = planted_report(lattice, 2, mp.mpc(0), [a, a], mp.mpc(0))
        with pytest.raises(MultipleZeroDetected):
            fit_sigma_form(report)


def test_winding_numbers():
    with working_precision(128):
        corners = [mp.mpc(-1, -1), mp.mpc(1, -1), mp.mpc(1, 1), mp.mpc(-1, 1), mp.mpc(-1, -1)]
        counts = winding_numbers(lambda t: t, {'cube': lambda x: x ** 3,
                                               'shifted': lambda x: x - 3}, corners, 8)
        assert counts == {'cube': 3, 'shifted': 0}
        assert winding_numbers(lambda t: t, {'edge': lambda x: x - 1}, corners, 8) is None


def test_diagonal_system_fit():
    system = QDifferenceSystem(MatrixLaurentPoly([[2, 0], [0, 3]]), 2)
    report = monodromy_q(system, precision=96, order=5, samples=2)
    fit = fit_sigma_form(report)
    assert sorted(fit.zero_entries) == [(0, 1), (1, 0)]
    assert sorted(fit.entries) == [(0, 0), (1, 1)]
    with working_precision(96):
        for entry in fit.entries.values():
            assert entry.zeros == []
            assert abs(entry.c - 1) < 1e-20
    assert fit.residual < 1e-20


def test_scalar_system_fit():
    system = SystemReader().read_file('tests/q_scalar.json')
    report = monodromy_q(system, precision=128, order=30, samples=2)
    fit = fit_sigma_form(report, tol=1e-6)
    assert fit.residual < 1e-6
    assert fit.lattice_residual < 1e-6
    zero = fit.entries[0, 0].zeros[0]
    with working_precision(128):
        x, y = report.lattice.coordinates(zero)
        assert abs(x - mp.nint(x)) < 1e-6
        assert abs(y - mp.nint(y)) < 1e-6


def test_locate_zeros_recovers_planted_zeros():
    with working_precision(128):
        lattice = PeriodLattice(2)
        w = lattice.omega_prime
        planted = [mp.mpf('0.4') + mp.mpf('0.3') * w, mp.mpf('0.15') + mp.mpf('0.8') * w]
        origin = mp.mpc('-0.013', '-0.021')
        zeros = locate_zeros(lambda t: model(lattice, 2, mp.mpc(0), planted, t), 2, lattice,
                             origin, 4, mp.mpf(2) ** -42)
        assert len(zeros) == 2
        for a in planted:
            assert min(abs(z - a) for z in zeros) < 1e-8
