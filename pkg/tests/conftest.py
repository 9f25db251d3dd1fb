"""Shared helpers for the test suite."""

import numpy as np


def rng(seed):
    return np.random.default_rng(seed)


def random_hermitian(r, n, scale=1.0):
    m = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    return scale * 0.5 * (m + m.conj().T)


def random_pd(r, n, scale=0.7):
    from mostowgeo import expm

    return expm(random_hermitian(r, n, scale))


def random_unitary(r, n):
    m = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
    q, rr = np.linalg.qr(m)
    return q * (np.diagonal(rr) / np.abs(np.diagonal(rr)))


def random_su_algebra(r, n, scale=1.0):
    h = random_hermitian(r, n, scale)
    h = h - np.trace(h) / n * np.eye(n)
    k = 1j * h
    return 0.5 * (k - k.conj().T)


def random_sl(r, n):
    while True:
        g = r.standard_normal((n, n)) + 1j * r.standard_normal((n, n))
        d = np.linalg.det(g)
        if abs(d) > 1e-6:
            return g * d ** (-1.0 / n)
