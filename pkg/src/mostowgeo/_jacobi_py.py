"""Cyclic Jacobi sweeps for complex Hermitian matrices, numpy fallback.

Mirrors the compiled kernel in ``_jacobi.pyx`` rotation for rotation so
that both backends walk the same deterministic path.
"""

import math

import numpy as np


def jacobi_sweeps(a, q, tol, max_sweeps):
    """Run cyclic Jacobi rotations in place.

    ``a`` is overwritten with a near-diagonal matrix, ``q`` (identity on
    entry) accumulates the rotations so that ``a_in = q a_out q^H``.
    Returns the number of sweeps used, or -1 when the off-diagonal mass
    did not drop below ``tol * ||a_in||_F`` within ``max_sweeps``.
    """
    n = a.shape[0]
    fro = np.linalg.norm(a)
    if fro == 0.0 or n < 2:
        return 0
    thresh = tol * fro
    tiny = 1e-300
    for sweep in range(1, max_sweeps + 1):
        if _off_norm(a) <= thresh:
            return sweep - 1
        for p in range(n - 1):
            for r_idx in range(p + 1, n):
                apq = a[p, r_idx]
                r = abs(apq)
                if r <= tiny:
                    continue
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, a[p, p].real - a[r_idx, r_idx].real)
                c = math.cos(theta)
                s = math.sin(theta)
                pc = np.conj(phase)
                # A <- J^H A J with J = [[c, -s], [s*conj(phase), c*conj(phase)]]
                col_p = a[:, p].copy()
                col_q = a[:, r_idx].copy()
                a[:, p] = c * col_p + s * pc * col_q
                a[:, r_idx] = -s * col_p + c * pc * col_q
                row_p = a[p, :].copy()
                row_q = a[r_idx, :].copy()
                a[p, :] = c * row_p + s * phase * row_q
                a[r_idx, :] = -s * row_p + c * phase * row_q
                a[p, r_idx] = 0.0
                a[r_idx, p] = 0.0
                a[p, p] = a[p, p].real
                a[r_idx, r_idx] = a[r_idx, r_idx].real
                qcol_p = q[:, p].copy()
                qcol_q = q[:, r_idx].copy()
                q[:, p] = c * qcol_p + s * pc * qcol_q
                q[:, r_idx] = -s * qcol_p + c * pc * qcol_q
        if _off_norm(a) <= thresh:
            return sweep
    return -1


def _off_norm(a):
    return np.linalg.norm(a - np.diag(np.diagonal(a)))
