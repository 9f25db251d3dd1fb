"""Functions of the adjoint operator ad(X) and the differential of exp.

For Hermitian X with eigendecomposition X = Q diag(lam) Q*, a scalar
function f of ad(X) acts on Y as Q (F . (Q* Y Q)) Q* where
F_ij = f(lam_i - lam_j) and ``.`` is the entrywise product.  Every f used
here is analytic with a removable singularity at 0, whose limit value is
supplied explicitly and substituted whenever an eigenvalue gap falls
below ``GAP_TOL``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .linalg import eig_hermitian, expm, herm, hermitian, same_shape

GAP_TOL = 1e-8


@dataclass(frozen=True)
class AdFunction:
    """Scalar analytic function with its explicit value at 0."""

    name: str
    f: callable
    f0: float


def _tau_scalar(t):
    return np.sinh(0.5 * t) / (0.5 * t)


def _tau_inv_scalar(t):
    return (0.5 * t) / np.sinh(0.5 * t)


def _coth_scalar(t):
    return t * np.cosh(0.5 * t) / np.sinh(0.5 * t)


TAU = AdFunction("sinh_half_over_half", _tau_scalar, 1.0)
TAU_INV = AdFunction("half_over_sinh_half", _tau_inv_scalar, 1.0)
GAMMA_COTH = AdFunction("t_coth_half", _coth_scalar, 2.0)
AD_IDENTITY = AdFunction("identity", lambda t: t, 0.0)


def gap_multipliers(eigenvalues, fn):
    """Entrywise multiplier matrix F_ij = fn.f(lam_i - lam_j)."""
    lam = np.asarray(eigenvalues, dtype=float)
    gaps = lam[:, None] - lam[None, :]
    small = np.abs(gaps) < GAP_TOL
    safe = np.where(small, 1.0, gaps)
    return np.where(small, fn.f0, fn.f(safe))


def apply_ad_function(x, fn, y):
    """Apply fn(ad(X)) to Y; linear in Y, spectral in X."""
    x = hermitian(x)
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != x.shape:
        raise ShapeError(f"dimension mismatch: {x.shape} vs {y.shape}")
    dec = eig_hermitian(x)
    mult = gap_multipliers(dec.eigenvalues, fn)
    yt = dec.basis.conj().T @ y @ dec.basis
    return dec.basis @ (mult * yt) @ dec.basis.conj().T


def dexp(x, y):
    """Directional derivative of the matrix exponential at Hermitian X
    along Hermitian Y: exp(X/2) tau_X(Y) exp(X/2)."""
    x = hermitian(x)
    y = hermitian(y)
    same_shape(x, y)
    half = expm(0.5 * x)
    return half @ apply_ad_function(x, TAU, y) @ half


def dexp_inv(x, z):
    """Inverse of dexp(X, .): recovers Y from Z = dexp(X, Y)."""
    x = hermitian(x)
    z = np.asarray(z, dtype=np.complex128)
    same_shape(x, z)
    half_inv = expm(-0.5 * x)
    return apply_ad_function(x, TAU_INV, half_inv @ z @ half_inv)


def gamma_coth(x, y):
    """ad(X) coth(ad(X)/2) applied to Y; satisfies
    dexp(X, gamma_coth(X, Y)) = Y exp(X) + exp(X) Y."""
    x = hermitian(x)
    y = hermitian(y)
    same_shape(x, y)
    return herm(apply_ad_function(x, GAMMA_COTH, y))
