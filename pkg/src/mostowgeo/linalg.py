"""Dense complex-matrix substrate: validated constructors, the Hermitian
eigensolver, and spectral matrix functions.

All operations are pure and deterministic: eigenvalues come out sorted
ascending and every eigenvector is normalized so that its
largest-magnitude entry is real and positive.
"""

from dataclasses import dataclass

import numpy as np

from .backend import jacobi_sweeps
from .errors import DomainError, NumericalFailure, ShapeError, ValidationError

HERMITICITY_TOL = 1e-10
PD_TOL = 1e-12
UNITARITY_TOL = 1e-10
EIG_TOL = 1e-12
MAX_SWEEPS = 100


def as_matrix(m):
    """Coerce to a finite square complex128 array."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.view(np.float64))):
        raise ValidationError("matrix has non-finite entries")
    return a


def same_shape(a, b):
    if a.shape != b.shape:
        raise ShapeError(f"dimension mismatch: {a.shape} vs {b.shape}")


def herm(a):
    """Hermitian part (A + A*)/2."""
    return 0.5 * (a + a.conj().T)


def skew(a):
    """Skew-Hermitian part (A - A*)/2."""
    return 0.5 * (a - a.conj().T)


def hermitian(m, tol=HERMITICITY_TOL):
    """Validate Hermiticity to relative tolerance, then symmetrize exactly."""
    a = as_matrix(m)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a - a.conj().T) > tol * max(scale, 1.0):
        raise ValidationError("matrix is not Hermitian within tolerance")
    return herm(a)


def skew_hermitian(m, tol=HERMITICITY_TOL):
    a = as_matrix(m)
    scale = np.linalg.norm(a)
    if np.linalg.norm(a + a.conj().T) > tol * max(scale, 1.0):
        raise ValidationError("matrix is not skew-Hermitian within tolerance")
    return skew(a)


def check_unitary(m, tol=UNITARITY_TOL):
    a = as_matrix(m)
    n = a.shape[0]
    if np.linalg.norm(a.conj().T @ a - np.eye(n)) > tol:
        raise ValidationError("matrix is not unitary within tolerance")
    return a


def hs_inner(a, b):
    """Hilbert-Schmidt inner product Tr A*B."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    same_shape(a, b)
    return complex(np.sum(np.conj(a) * b))


def re_inner(a, b):
    """Real part of the HS inner product (the real scalar product on
    Hermitian or skew-Hermitian matrices)."""
    return hs_inner(a, b).real


def frob(a):
    return float(np.linalg.norm(a))


def commutator(a, b):
    return a @ b - b @ a


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix: ``h = basis diag(eigenvalues) basis^H``."""

    eigenvalues: np.ndarray
    basis: np.ndarray


def eig_hermitian(h, tol=EIG_TOL, max_sweeps=MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi.

    Eigenvalues ascending; each eigenvector's largest-magnitude entry is
    made real positive, so the output is a deterministic function of the
    input.
    """
    h = hermitian(h)
    n = h.shape[0]
    a = np.array(h, dtype=np.complex128, order="C")
    q = np.eye(n, dtype=np.complex128, order="C")
    # Drive the off-diagonal mass two decades below the certified residual
    # bound; convergence is quadratic so the extra sweeps are cheap.
    sweeps = jacobi_sweeps(a, q, 0.01 * tol, max_sweeps)
    if sweeps < 0:
        raise NumericalFailure(f"Jacobi eigensolver: no convergence in {max_sweeps} sweeps")
    vals = np.diagonal(a).real.copy()
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    q = q[:, order]
    for j in range(n):
        k = int(np.argmax(np.abs(q[:, j])))
        piv = q[k, j]
        mag = abs(piv)
        if mag > 0.0:
            q[:, j] *= np.conj(piv) / mag
    resid = np.linalg.norm((q * vals) @ q.conj().T - h)
    if resid > tol * max(np.linalg.norm(h), 1.0):
        raise NumericalFailure(f"eigendecomposition residual {resid:.3e} too large")
    return EigenDecomposition(eigenvalues=vals, basis=q)


def matrix_function(h, f, positive_domain=False, pd_tol=PD_TOL):
    """Apply a real scalar function spectrally: ``Q diag(f(lam)) Q*``."""
    dec = eig_hermitian(h)
    if positive_domain and np.min(dec.eigenvalues) <= pd_tol:
        raise DomainError(
            f"spectral function needs a positive spectrum, min eigenvalue "
            f"{np.min(dec.eigenvalues):.3e}"
        )
    fvals = np.asarray([float(f(v)) for v in dec.eigenvalues])
    return herm((dec.basis * fvals) @ dec.basis.conj().T)


def expm(h):
    """Matrix exponential of a Hermitian matrix (a PD matrix)."""
    return matrix_function(h, np.exp)


def logm(p):
    """Matrix logarithm of a PD matrix."""
    return matrix_function(p, np.log, positive_domain=True)


def sqrtm(p):
    return matrix_function(p, np.sqrt, positive_domain=True)


def inv_sqrtm(p):
    return matrix_function(p, lambda v: 1.0 / np.sqrt(v), positive_domain=True)


def check_pd(m, tol=PD_TOL):
    """Validate positive-definiteness; returns the symmetrized matrix."""
    p = hermitian(m)
    vals = eig_hermitian(p).eigenvalues
    if np.min(vals) <= tol:
        raise DomainError(f"matrix is not positive-definite (min eigenvalue {np.min(vals):.3e})")
    return p


def invert(m, rel_tol=1e-13):
    """Inverse with an explicit singularity check."""
    from .errors import SingularError

    a = as_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= rel_tol * s[0]:
        raise SingularError("matrix is numerically singular")
    return np.linalg.inv(a)
