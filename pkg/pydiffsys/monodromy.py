# -*- coding: utf-8 -*-
"""
Helpers shared by the sampled monodromy reports of both system kinds.
"""

import numpy as np
from mpmath import mp


def monodromy_equivalent(values_a, values_b, tol=1e-8):
    """
    Decide whether two sampled monodromy matrices agree up to the
    normalization freedom of canonical solutions, P' = L P R with
    constant diagonal L and R.

    Parameters
    ----------
    values_a, values_b : list of mpmath matrices
        Samples at the same points.

    Returns
    -------
    (bool, mpf)
        The verdict and the largest relative discrepancy found.
    """
    n = values_a[0].rows
    ratios = {}
    residual = mp.mpf(0)
    for i in range(n):
        for j in range(n):
            scale = max(max(abs(v[i, j]) for v in values_a), max(abs(v[i, j]) for v in values_b))
            if scale < tol:
                continue
            pairs = [(a[i, j], b[i, j]) for a, b in zip(values_a, values_b)
                     if abs(a[i, j]) > tol * scale]
            if not pairs:
                return False, mp.inf
            ratio = pairs[0][1] / pairs[0][0]
            for a, b in pairs:
                residual = max(residual, abs(b - ratio * a) / scale)
            ratios[i, j] = ratio
    # rank one structure of the ratio matrix
    for (i, j), rij in ratios.items():
        for (k, l), rkl in ratios.items():
            if (i, l) in ratios and (k, j) in ratios:
                cross = abs(rij * rkl - ratios[i, l] * ratios[k, j])
                residual = max(residual, cross / max(abs(rij * rkl), 1))
    return residual < tol, residual


def monodromy_grid(points, values):
    """Rows t_re, t_im, then |p_ij| and arg p_ij for each entry."""
    n = values[0].rows
    rows = []
    for t, value in zip(points, values):
        t = mp.mpc(t)
        row = [float(t.real), float(t.imag)]
        for i in range(n):
            for j in range(n):
                row.append(float(abs(value[i, j])))
                row.append(float(mp.arg(value[i, j])) if value[i, j] != 0 else 0.0)
        rows.append(row)
    header = ['t_re', 't_im']
    for i in range(n):
        for j in range(n):
            header += ['abs_p{}{}'.format(i + 1, j + 1), 'arg_p{}{}'.format(i + 1, j + 1)]
    return header, np.array(rows, dtype=np.float64)


def write_monodromy_csv(report, path):
    header, grid = monodromy_grid(report.points, report.values)
    np.savetxt(path, grid, delimiter=',', header=','.join(header), comments='')
