"""Retraction of complex (affine) adjoint orbits of su(n) onto compact
orbits via the group-level Mostow factorization, the sinh separation
defect, and the moment-map value on coadjoint orbits.

Conventions: g = su(n) is the space of traceless skew-Hermitian
matrices; i.g is the traceless Hermitian space.  The Killing form is
replaced throughout by Re Tr(A*B), to which it is proportional on
su(n).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import NotInSubspaceError, ValidationError
from .linalg import (
    commutator,
    eig_hermitian,
    expm,
    frob,
    herm,
    re_inner,
    skew,
    skew_hermitian,
)
from .mostow import group_decompose
from .subspaces import SubspaceBasis

EIGEN_GAP_TOL = 1e-8
DET_TOL = 1e-8
MEMBER_TOL = 1e-8


@dataclass(frozen=True)
class OrbitFrame:
    """Base point x of a compact adjoint orbit with its isotropy split
    su(n) = k_x + m_x; ``derivation`` holds D for affine orbits (the
    frame is then built from D and x is D itself)."""

    n: int
    x: np.ndarray
    isotropy: np.ndarray  # (k, n, n) skew-Hermitian, orthonormal
    moving: np.ndarray  # (m, n, n) skew-Hermitian, orthonormal
    derivation: Optional[np.ndarray] = None

    def isotropy_hermitian(self):
        """i k_x as a SubspaceBasis of Hermitian matrices (the E of the
        Mostow factorization)."""
        return SubspaceBasis(self.n, 1j * self.isotropy)

    def project_moving(self, a):
        """Orthogonal projection of a skew-Hermitian matrix onto m_x."""
        if self.moving.shape[0] == 0:
            return np.zeros((self.n, self.n), dtype=np.complex128)
        flat = self.moving.reshape(self.moving.shape[0], -1)
        coeff = np.real(flat.conj() @ np.asarray(a, dtype=np.complex128).reshape(-1))
        return np.tensordot(coeff, self.moving, axes=1)

    def project_isotropy(self, a):
        if self.isotropy.shape[0] == 0:
            return np.zeros((self.n, self.n), dtype=np.complex128)
        flat = self.isotropy.reshape(self.isotropy.shape[0], -1)
        coeff = np.real(flat.conj() @ np.asarray(a, dtype=np.complex128).reshape(-1))
        return np.tensordot(coeff, self.isotropy, axes=1)


@dataclass(frozen=True)
class RetractionResult:
    """Compact-orbit point z, the normal direction a in m_z with
    y = Ad(exp(i a))(z), and the compact factor u."""

    z: np.ndarray
    a: np.ndarray
    u: np.ndarray


def _check_su(x, what="matrix"):
    x = skew_hermitian(x)
    if abs(np.trace(x)) > 1e-10 * (1.0 + frob(x)):
        raise ValidationError(f"{what} must be traceless")
    return x


def isotropy_split(x, derivation=None):
    """Split su(n) into the centralizer k_x of x and its orthogonal m_x.

    Built structurally from the eigenvalue gaps of x: in an eigenbasis
    of x, k_x consists of the (traceless) skew-Hermitian matrices
    supported on equal-eigenvalue blocks, m_x of those coupling
    distinct eigenvalues.
    """
    x = _check_su(x, "base point")
    n = x.shape[0]
    dec = eig_hermitian(herm(1j * x))
    lam, q = dec.eigenvalues, dec.basis

    blocks = []
    start = 0
    for i in range(1, n + 1):
        if i == n or lam[i] - lam[start] > EIGEN_GAP_TOL:
            blocks.append(list(range(start, i)))
            start = i
    block_of = np.empty(n, dtype=int)
    for bi, blk in enumerate(blocks):
        for i in blk:
            block_of[i] = bi

    s = 1.0 / np.sqrt(2.0)
    iso, mov = [], []
    # Traceless imaginary diagonals always centralize x in its eigenbasis.
    for i in range(n - 1):
        d = np.zeros((n, n), dtype=np.complex128)
        d[i, i] = 1j
        d[i + 1, i + 1] = -1j
        iso.append(d / np.sqrt(2.0))
    for i in range(n):
        for j in range(i + 1, n):
            re_gen = np.zeros((n, n), dtype=np.complex128)
            re_gen[i, j] = s
            re_gen[j, i] = -s
            im_gen = np.zeros((n, n), dtype=np.complex128)
            im_gen[i, j] = 1j * s
            im_gen[j, i] = 1j * s
            target = iso if block_of[i] == block_of[j] else mov
            target.append(re_gen)
            target.append(im_gen)

    def conjugate_back(mats):
        if not mats:
            return np.zeros((0, n, n), dtype=np.complex128)
        out = np.stack([skew(q @ m @ q.conj().T) for m in mats])
        return out

    iso_mats = _real_orthonormalize(conjugate_back(iso))
    mov_mats = conjugate_back(mov)
    assert iso_mats.shape[0] + mov_mats.shape[0] == n * n - 1
    return OrbitFrame(n=n, x=x, isotropy=iso_mats, moving=mov_mats, derivation=derivation)


def _real_orthonormalize(mats):
    """Gram-Schmidt over the real trace form; the diagonal generators
    are not mutually orthogonal, the rest already are."""
    kept = []
    for m in mats:
        v = m.copy()
        for _ in range(2):
            for b in kept:
                v = v - re_inner(b, v) * b
        nv = frob(v)
        if nv > 1e-12:
            kept.append(v / nv)
    n = mats.shape[1]
    if not kept:
        return np.zeros((0, n, n), dtype=np.complex128)
    return np.stack(kept)


def frame_from_derivation(d):
    """Frame for the affine orbit of 0: k is the centralizer of D."""
    d = _check_su(d, "derivation")
    return isotropy_split(d, derivation=d)


def _decompose_group_element(g, frame, tol, max_iter):
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (frame.n, frame.n):
        raise ValidationError(f"group element must be {frame.n} x {frame.n}")
    if abs(np.linalg.det(g) - 1.0) > DET_TOL:
        raise ValidationError("group element must have determinant 1")
    factors = group_decompose(g, frame.isotropy_hermitian(), tol=tol, max_iter=max_iter)
    from .linalg import logm

    b = skew(-1j * logm(factors.f))  # f = exp(i b) with b in m_x
    return factors.k, b


def orbit_retract(g, frame, tol=1e-9, max_iter=500):
    """Write Ad(g)(x) uniquely as Ad(exp(i a))(z) with z = u x u^-1 on
    the compact orbit and a in m_z, via g = u exp(i b) exp(i c)."""
    u, b = _decompose_group_element(g, frame, tol, max_iter)
    z = skew(u @ frame.x @ u.conj().T)
    a = skew(u @ b @ u.conj().T)
    return RetractionResult(z=z, a=a, u=u)


def affine_orbit_retract(g, frame, tol=1e-9, max_iter=500):
    """Affine-orbit analogue: the action is g . y = g y g^-1 + g D g^-1 - D
    and the base point is 0, so z = u D u^-1 - D."""
    if frame.derivation is None:
        raise ValidationError("frame carries no derivation")
    d = frame.derivation
    u, b = _decompose_group_element(g, frame, tol, max_iter)
    z = skew(u @ d @ u.conj().T) - d
    a = skew(u @ b @ u.conj().T)
    return RetractionResult(z=z, a=a, u=u)


def adjoint_action(g, y):
    """Ad(g)(y) = g y g^-1."""
    return g @ y @ np.linalg.inv(g)


def affine_action(g, y, d):
    """g y g^-1 + g D g^-1 - D."""
    g_inv = np.linalg.inv(g)
    return g @ y @ g_inv + g @ d @ g_inv - d


def separation_defect(frame, z, a, member_tol=MEMBER_TOL):
    """||sinh(i ad a)(z)||: the norm of the component of
    Ad(exp(i a))(z) outside the compact algebra.  Strictly positive for
    nonzero a in m_z; zero only at a = 0.
    """
    z = _check_su(z, "orbit point")
    a = skew_hermitian(a)
    frame_z = isotropy_split(z)
    if frob(a - frame_z.project_moving(a)) > member_tol * (1.0 + frob(a)):
        raise NotInSubspaceError("direction is not in m_z")
    w = adjoint_action(expm_i(a), z)
    return frob(herm(w))


def expm_i(a):
    """exp(i a), computed spectrally from the Hermitian matrix i a."""
    return expm(herm(1j * a))


def moment_map_value(retraction, kappa=1.0):
    """Moment-map value -i [z / kappa, y] at y = Ad(exp(i a))(z);
    vanishes exactly on the compact orbit (a = 0)."""
    if kappa <= 0:
        raise ValidationError("kappa must be positive")
    z = retraction.z
    y = adjoint_action(expm_i(retraction.a), z)
    return -1j * commutator(z / kappa, y)
