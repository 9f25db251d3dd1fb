"""Closed real-linear subspaces of Hermitian matrices, their orthogonal
complements, the triple-closure test [X,[X,Y]] in E, and the coth ODE
flow that witnesses closure of exp E under e.f.e.

Subspaces are stored as explicit orthonormal bases with respect to the
real trace form Re Tr(A*B), so projections and membership checks reduce
to Gram arithmetic.
"""

from dataclasses import dataclass, field

import numpy as np

from .adcalc import gamma_coth
from .errors import EmptySubspaceError, NotInSubspaceError, NumericalFailure, ShapeError
from .linalg import commutator, frob, herm, hermitian, logm, re_inner

ORTHO_TOL = 1e-10
DROP_TOL = 1e-10
TRIPLE_TOL = 1e-8
ODE_TOL = 1e-8
MEMBER_TOL = 1e-8


@dataclass(frozen=True)
class SubspaceBasis:
    """Orthonormal real basis of a subspace of n x n Hermitian matrices.

    ``basis`` has shape (k, n, n); k may be zero (the trivial subspace).
    """

    n: int
    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 3 or b.shape[1:] != (self.n, self.n):
            raise ShapeError(f"basis stack must have shape (k, {self.n}, {self.n})")
        k = b.shape[0]
        flat = b.reshape(k, self.n * self.n)
        gram = np.real(flat.conj() @ flat.T)
        if k and np.max(np.abs(gram - np.eye(k))) > ORTHO_TOL:
            raise ShapeError("basis is not orthonormal for the real trace form")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self):
        return self.basis.shape[0]

    def coords(self, x):
        """Real coordinates of the E-component of a Hermitian matrix."""
        x = hermitian(x)
        if x.shape != (self.n, self.n):
            raise ShapeError(f"expected a {self.n} x {self.n} matrix")
        if self.dim == 0:
            return np.zeros(0)
        flat = self.basis.reshape(self.dim, -1)
        return np.real(flat.conj() @ x.reshape(-1))

    def combine(self, coeffs):
        """Hermitian matrix with the given real coordinates."""
        coeffs = np.asarray(coeffs, dtype=float)
        if coeffs.shape != (self.dim,):
            raise ShapeError(f"expected {self.dim} coefficients")
        if self.dim == 0:
            return np.zeros((self.n, self.n), dtype=np.complex128)
        return np.tensordot(coeffs, self.basis, axes=1)

    def project(self, x):
        """Orthogonal projection onto the subspace."""
        return self.combine(self.coords(x))

    def residual(self, x):
        """Norm of the component of x orthogonal to the subspace."""
        return frob(hermitian(x) - self.project(x))

    def contains(self, x, tol=MEMBER_TOL):
        return self.residual(x) <= tol * (1.0 + frob(x))

    @classmethod
    def trivial(cls, n):
        return cls(n, np.zeros((0, n, n), dtype=np.complex128))

    @classmethod
    def full_hermitian(cls, n):
        return cls(n, hermitian_standard_basis(n))

    @classmethod
    def diagonal(cls, n):
        b = np.zeros((n, n, n), dtype=np.complex128)
        for i in range(n):
            b[i, i, i] = 1.0
        return cls(n, b)

    @classmethod
    def traceless(cls, n):
        full = hermitian_standard_basis(n)
        ident = np.eye(n, dtype=np.complex128) / np.sqrt(n)
        kept = [m - re_inner(ident, m) * ident for m in full]
        return orthonormalize(kept)


def hermitian_standard_basis(n):
    """The n^2 orthonormal Hermitian matrices: E_ii, symmetric and
    antisymmetric-imaginary off-diagonal pairs."""
    out = []
    for i in range(n):
        m = np.zeros((n, n), dtype=np.complex128)
        m[i, i] = 1.0
        out.append(m)
    s = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n), dtype=np.complex128)
            m[i, j] = s
            m[j, i] = s
            out.append(m)
            m = np.zeros((n, n), dtype=np.complex128)
            m[i, j] = 1j * s
            m[j, i] = -1j * s
            out.append(m)
    return np.stack(out)


def orthonormalize(spanning, drop_tol=DROP_TOL):
    """Orthonormal basis of the real span of Hermitian matrices.

    Modified Gram-Schmidt with a second reorthogonalization pass;
    vectors whose residual drops below ``drop_tol`` (relative to their
    norm) are discarded.
    """
    mats = [hermitian(m) for m in spanning]
    if not mats:
        raise EmptySubspaceError("empty spanning set")
    n = mats[0].shape[0]
    kept = []
    for m in mats:
        if m.shape != (n, n):
            raise ShapeError("spanning matrices have mixed dimensions")
        scale = max(frob(m), 1.0)
        v = m.copy()
        for _ in range(2):
            for b in kept:
                v = v - re_inner(b, v) * b
        nv = frob(v)
        if nv > drop_tol * scale:
            kept.append(v / nv)
    if not kept:
        raise EmptySubspaceError("spanning set reduces to the zero subspace")
    return SubspaceBasis(n, np.stack(kept))


def complement(e):
    """Orthogonal complement of E inside the n^2-dimensional real space
    of Hermitian matrices."""
    full = hermitian_standard_basis(e.n)
    kept = []
    for m in full:
        v = m - e.project(m)
        for b in kept:
            v = v - re_inner(b, v) * b
        nv = frob(v)
        if nv > DROP_TOL:
            kept.append(v / nv)
    if not kept:
        return SubspaceBasis.trivial(e.n)
    f = SubspaceBasis(e.n, np.stack(kept))
    assert e.dim + f.dim == e.n**2
    return f


def triple_closure_defect(e):
    """Max norm of the out-of-E component of [X, [X, Y]] over basis
    vectors Y and X in {b_i} and {b_i + b_j}.

    [X,[X,Y]] is quadratic in X, so polarized pairs b_i + b_j together
    with the b_i determine the full bilinear map; the defect vanishes
    iff E is a Lie triple system.
    """
    if e.dim == 0:
        return 0.0
    xs = list(e.basis)
    for i in range(e.dim):
        for j in range(i + 1, e.dim):
            xs.append(e.basis[i] + e.basis[j])
    worst = 0.0
    for x in xs:
        for y in e.basis:
            d = commutator(x, commutator(x, y))
            worst = max(worst, e.residual(d))
    return worst


def _rk4(x0, y, n_steps):
    """Classical RK4 for dX/dt = ad(X) coth(ad(X)/2)(Y) on [0, 1]."""
    h = 1.0 / n_steps
    x = x0
    traj = [x0]
    for _ in range(n_steps):
        k1 = gamma_coth(x, y)
        k2 = gamma_coth(x + 0.5 * h * k1, y)
        k3 = gamma_coth(x + 0.5 * h * k2, y)
        k4 = gamma_coth(x + h * k3, y)
        x = herm(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
        traj.append(x)
    return x, traj


def efe_flow(e, y, f, ode_tol=ODE_TOL, base_steps=64, max_doublings=5):
    """Integrate the closure ODE dX/dt = ad(X) coth(ad(X)/2)(Y) from
    X(0) = log f and return X(1) = log(exp(Y) f exp(Y)).

    Requires a triple-closed E with Y in E and log f in E; every
    accepted state is checked to stay in E within ``ode_tol``, which is
    the numerical witness that exp E is closed under e.f.e.  Step count
    starts at ``base_steps`` and doubles until the step-doubling error
    estimate drops below ``ode_tol``.
    """
    y = hermitian(y)
    log_f = logm(f)
    if triple_closure_defect(e) > TRIPLE_TOL:
        raise NotInSubspaceError("subspace is not triple-closed")
    if not e.contains(y):
        raise NotInSubspaceError("Y is not in the subspace")
    if not e.contains(log_f):
        raise NotInSubspaceError("log f is not in the subspace")

    n_steps = base_steps
    x_coarse, _ = _rk4(log_f, y, n_steps)
    for _ in range(max_doublings):
        n_steps *= 2
        x_fine, traj = _rk4(log_f, y, n_steps)
        if frob(x_fine - x_coarse) <= ode_tol:
            for state in traj:
                if e.residual(state) > ode_tol * (1.0 + frob(state)):
                    raise NumericalFailure("ODE state drifted out of the subspace")
            return x_fine
        x_coarse = x_fine
    raise NumericalFailure("closure ODE: step-doubling did not reach tolerance")
