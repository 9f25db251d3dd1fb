"""Orthogonal projection onto exp E and the Mostow factorizations
A = e f e (positive-definite level) and x = k f e (group level).

The projection minimizes Phi(Y) = dist(exp Y, p)^2 over Y in E in the
flat chart given by the global exp diffeomorphism.  Convergence is
certified by the orthogonality postcondition (the geodesic from the
foot to p is normal to E), not by the descent history.
"""

from dataclasses import dataclass

import numpy as np

from .adcalc import TAU, apply_ad_function
from .errors import NonConvergenceError, NotInSubspaceError
from .linalg import (
    check_pd,
    check_unitary,
    expm,
    frob,
    herm,
    inv_sqrtm,
    invert,
    logm,
    sqrtm,
)
from .subspaces import TRIPLE_TOL, triple_closure_defect

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 500
ARMIJO_C = 1e-4
NEWTON_SWITCH = 1e-3
GD_BUDGET = 60
FD_EPS = 1e-6


@dataclass(frozen=True)
class ProjectionResult:
    """Foot of the orthogonal projection onto exp E."""

    foot: np.ndarray
    log_foot: np.ndarray
    distance: float
    iterations: int
    grad_norm: float
    converged: bool


@dataclass(frozen=True)
class MostowFactors:
    """Group-level factors x = k f e with k unitary, log f in E-perp,
    log e in E."""

    k: np.ndarray
    f: np.ndarray
    e: np.ndarray


def _phi_and_grad(e_basis, coeffs, p_inv_sqrt):
    """Squared distance Phi(Y) = ||log M||^2 with M = p^-1/2 exp(Y) p^-1/2,
    and its gradient coordinates in E.

    dPhi[H] = 2 Tr(M^-1 log M . p^-1/2 dexp(Y, H) p^-1/2); pulling the
    congruences through and using self-adjointness of tau_Y gives the
    gradient 2 tau_Y(S) with
    S = herm(exp(Y/2) p^-1/2 M^-1 log M p^-1/2 exp(Y/2)).
    """
    y = e_basis.combine(coeffs)
    m = herm(p_inv_sqrt @ expm(y) @ p_inv_sqrt)
    log_m = logm(m)
    phi = frob(log_m) ** 2
    half = expm(0.5 * y)
    inner = np.linalg.solve(m, log_m)
    s = herm(half @ p_inv_sqrt @ inner @ p_inv_sqrt @ half)
    grad_mat = 2.0 * apply_ad_function(y, TAU, s)
    return phi, e_basis.coords(grad_mat)


def project_to_exp_subspace(p, e_basis, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Orthogonal projection of a PD matrix onto exp E.

    Gradient descent with Armijo backtracking from Y0 = proj_E(log p);
    stops when the gradient norm falls below ``tol``.  On max_iter
    exhaustion the best iterate is still returned, flagged via
    ``converged=False``.
    """
    p = check_pd(p)
    if triple_closure_defect(e_basis) > TRIPLE_TOL:
        raise NotInSubspaceError("subspace is not triple-closed")
    p_inv_sqrt = inv_sqrtm(p)

    if e_basis.dim == 0:
        log_p = logm(p)
        return ProjectionResult(
            foot=np.eye(e_basis.n, dtype=np.complex128),
            log_foot=np.zeros((e_basis.n, e_basis.n), dtype=np.complex128),
            distance=frob(log_p),
            iterations=0,
            grad_norm=0.0,
            converged=True,
        )

    coeffs = e_basis.coords(logm(p))
    phi, grad = _phi_and_grad(e_basis, coeffs, p_inv_sqrt)
    gnorm = float(np.linalg.norm(grad))
    iterations = 0
    step = 1.0
    # Phase 1: Armijo gradient descent.  The sufficient-decrease test
    # compares Phi values, so it cannot certify progress once the
    # decrements fall below rounding noise in Phi; hand off to Newton
    # well before that point.  Phi is geodesically convex and the foot
    # is unique, so the gradient system has a single zero and Newton
    # cannot be drawn to a spurious critical point.
    while iterations < min(max_iter, GD_BUDGET) and gnorm > NEWTON_SWITCH:
        iterations += 1
        step = min(2.0 * step, 1.0)
        while True:
            trial = coeffs - step * grad
            phi_trial, grad_trial = _phi_and_grad(e_basis, trial, p_inv_sqrt)
            if phi_trial <= phi - ARMIJO_C * step * gnorm**2:
                break
            step *= 0.5
            if step < 1e-18:
                break
        if step < 1e-18:
            break
        coeffs, phi, grad = trial, phi_trial, grad_trial
        gnorm = float(np.linalg.norm(grad))

    # Phase 2: damped Newton on the gradient system, judged by gradient
    # norm decrease (well conditioned down to machine precision).
    k = e_basis.dim
    while iterations < max_iter and gnorm > tol:
        iterations += 1
        hess = np.empty((k, k))
        eps = FD_EPS * max(1.0, float(np.linalg.norm(coeffs)))
        for j in range(k):
            bump = np.zeros(k)
            bump[j] = eps
            _, g_plus = _phi_and_grad(e_basis, coeffs + bump, p_inv_sqrt)
            _, g_minus = _phi_and_grad(e_basis, coeffs - bump, p_inv_sqrt)
            hess[:, j] = (g_plus - g_minus) / (2.0 * eps)
        hess = 0.5 * (hess + hess.T)
        try:
            direction = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            direction = -grad
        if not np.all(np.isfinite(direction)) or float(direction @ grad) >= 0.0:
            direction = -grad
        damp = 1.0
        improved = False
        while damp >= 1e-12:
            trial = coeffs + damp * direction
            phi_trial, grad_trial = _phi_and_grad(e_basis, trial, p_inv_sqrt)
            g_trial = float(np.linalg.norm(grad_trial))
            if g_trial < gnorm:
                coeffs, phi, grad, gnorm = trial, phi_trial, grad_trial, g_trial
                improved = True
                break
            damp *= 0.5
        if not improved:
            break
    log_foot = e_basis.combine(coeffs)
    return ProjectionResult(
        foot=expm(log_foot),
        log_foot=log_foot,
        distance=float(np.sqrt(max(phi, 0.0))),
        iterations=iterations,
        grad_norm=gnorm,
        converged=gnorm <= tol,
    )


def orthogonality_defect(p, e_basis, result):
    """Max |<log(q^-1/2 p q^-1/2), b>| over the E-basis transported to
    the foot q: the certificate that the connecting geodesic is normal
    to exp E."""
    q_inv_sqrt = inv_sqrtm(result.foot)
    v = logm(herm(q_inv_sqrt @ p @ q_inv_sqrt))
    if e_basis.dim == 0:
        return 0.0
    return float(np.max(np.abs(e_basis.coords(v))))


def projection_contraction_check(p1, p2, e_basis, **opts):
    """Pair (dist(p1, p2), dist(pi(p1), pi(p2))); the projection never
    increases distance."""
    from .manifold import dist

    r1 = project_to_exp_subspace(p1, e_basis, **opts)
    r2 = project_to_exp_subspace(p2, e_basis, **opts)
    return dist(p1, p2), dist(r1.foot, r2.foot)


def mostow_split(a, e_basis, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Unique factors A = e f e with log e in E, log f in E-perp:
    e = sqrt(pi(A)), f = e^-1 A e^-1."""
    a = check_pd(a)
    result = project_to_exp_subspace(a, e_basis, tol=tol, max_iter=max_iter)
    if not result.converged:
        raise NonConvergenceError("projection did not converge", result=result)
    e = sqrtm(result.foot)
    e_inv = inv_sqrtm(result.foot)
    f = check_pd(e_inv @ a @ e_inv)
    return e, f


def group_decompose(x, e_basis, tol=DEFAULT_TOL, max_iter=DEFAULT_MAX_ITER):
    """Factor an invertible x as k f e with k unitary, f in exp(E-perp),
    e in exp E; with E = {0} this is the classical polar decomposition."""
    x = np.asarray(x, dtype=np.complex128)
    invert(x)  # raises SingularError
    a = herm(x.conj().T @ x)
    e, f_sq = mostow_split(a, e_basis, tol=tol, max_iter=max_iter)
    f = sqrtm(f_sq)
    k = x @ invert(e) @ invert(f)
    k = check_unitary(k, tol=1e-8)
    return MostowFactors(k=k, f=f, e=e)


def factor_membership_residuals(factors, e_basis):
    """Out-of-subspace norms (component of log e outside E, component of
    log f inside E); both vanish for exact factors since E-perp is the
    orthogonal complement."""
    log_e = logm(factors.e)
    log_f = logm(factors.f)
    return e_basis.residual(log_e), frob(e_basis.project(log_f))
