# -*- coding: utf-8 -*-

from collections import namedtuple

import numpy as np
from mpmath import mp

from pydiffsys.monodromy import monodromy_equivalent, write_monodromy_csv
from pydiffsys.scalar import working_precision

Report = namedtuple('Report', ['points', 'values'])


def samples():
    points = [mp.mpc('0.1', '0.2'), mp.mpc('0.4', '-0.3'), mp.mpc('0.7', '0.5')]
    return [mp.matrix([[1 + t, t * t], [2, 3 - t]]) for t in points]


def test_diagonal_freedom():
    with working_precision(96):
        left, right = mp.diag([2, 3j]), mp.diag([5, -7])
        values = samples()
        scaled = [left * v * right for v in values]
        same, residual = monodromy_equivalent(values, scaled)
        assert same
        assert residual < 1e-20


def test_detects_a_changed_sample():
    with working_precision(96):
        values = samples()
        changed = [v.copy() for v in values]
        changed[1][0, 0] *= 2
        same, residual = monodromy_equivalent(values, changed)
        assert not same
        assert residual > 0.1


def test_write_csv(tmp_path):
    path = str(tmp_path / 'grid.csv')
    with working_precision(96):
        report = Report([mp.mpc(0, 0), mp.mpc('0.5', '0.25')],
                        [mp.matrix([[1, -1], [1j, 0]]), mp.matrix([[2, 0], [0, 1]])])
        write_monodromy_csv(report, path)
    with open(path) as f:
        header = f.readline().strip().split(',')
    assert header[:4] == ['t_re', 't_im', 'abs_p11', 'arg_p11']
    assert len(header) == 10
    grid = np.loadtxt(path, delimiter=',', skiprows=1)
    assert grid.shape == (2, 10)
    assert grid[1, 0] == 0.5
    assert grid[1, 1] == 0.25
    assert abs(grid[0, 4] - 1) < 1e-12
    assert abs(grid[0, 5] - np.pi) < 1e-12
    assert abs(grid[0, 7] - np.pi / 2) < 1e-12
    assert grid[0, 9] == 0.0
