"""The manifold of positive-definite Hermitian matrices with the
affine-invariant metric g_p(U, V) = Tr(p^-1 U p^-1 V): group action,
symmetries, geodesics, distance, curvature, and the comparison
properties of non-positive curvature.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegeneratePlaneError, ShapeError
from .linalg import (
    check_pd,
    commutator,
    eig_hermitian,
    expm,
    frob,
    hermitian,
    herm,
    hs_inner,
    inv_sqrtm,
    invert,
    logm,
    re_inner,
    same_shape,
    sqrtm,
)

LIN_INDEP_TOL = 1e-10
VERTEX_SEP_TOL = 1e-10


def metric_at(p, u, v):
    """Riemannian inner product of tangent vectors u, v at p."""
    p = check_pd(p)
    u = hermitian(u)
    v = hermitian(v)
    same_shape(p, u)
    same_shape(p, v)
    pu = np.linalg.solve(p, u)
    pv = np.linalg.solve(p, v)
    return float(np.trace(pu @ pv).real)


def act(x, p):
    """Isometric group action x . p = x* p x of an invertible x."""
    p = check_pd(p)
    x = np.asarray(x, dtype=np.complex128)
    same_shape(x, p)
    invert(x)  # raises SingularError
    return herm(x.conj().T @ p @ x)


def point_symmetry(p, x):
    """Geodesic symmetry s_p(x) = p x^-1 p."""
    p = check_pd(p)
    x = check_pd(x)
    same_shape(p, x)
    return herm(p @ invert(x) @ p)


def rel_log(p, q):
    """log(p^-1/2 q p^-1/2), the velocity of the unit-time geodesic p -> q."""
    p = check_pd(p)
    q = check_pd(q)
    same_shape(p, q)
    w = inv_sqrtm(p)
    return logm(herm(w @ q @ w))


def geodesic_eval(p, q, t):
    """Point at parameter t of the unique geodesic with gamma(0)=p, gamma(1)=q:
    p^1/2 exp(t log(p^-1/2 q p^-1/2)) p^1/2."""
    v = rel_log(p, q)
    r = sqrtm(p)
    return herm(r @ expm(t * v) @ r)


def dist(p, q):
    """Geodesic distance: sqrt(sum log(mu_i)^2) over the spectrum of
    p^-1/2 q p^-1/2."""
    p = check_pd(p)
    q = check_pd(q)
    same_shape(p, q)
    if np.array_equal(p, q):
        return 0.0
    w = inv_sqrtm(p)
    mu = eig_hermitian(herm(w @ q @ w)).eigenvalues
    return float(math.sqrt(np.sum(np.log(mu) ** 2)))


@dataclass(frozen=True)
class Geodesic:
    """Constant-speed geodesic from start to end (t in R allowed)."""

    start: np.ndarray
    end: np.ndarray
    velocity: np.ndarray

    def __call__(self, t):
        r = sqrtm(self.start)
        return herm(r @ expm(t * self.velocity) @ r)


def geodesic_between(p, q):
    p = check_pd(p)
    q = check_pd(q)
    return Geodesic(start=p, end=q, velocity=rel_log(p, q))


def sectional_curvature_at_identity(x, y):
    """Sectional curvature at the identity of the plane spanned by
    Hermitian x, y: g([[x,y],x],y) / (g(x,x)g(y,y) - g(x,y)^2), which is
    -||[x,y]||_F^2 over the Gram determinant."""
    x = hermitian(x)
    y = hermitian(y)
    same_shape(x, y)
    gxx = re_inner(x, x)
    gyy = re_inner(y, y)
    gxy = re_inner(x, y)
    denom = gxx * gyy - gxy**2
    if denom <= LIN_INDEP_TOL:
        raise DegeneratePlaneError("plane is degenerate (near-dependent pair)")
    return float(-frob(commutator(x, y)) ** 2 / denom)


class TriangleDefect(NamedTuple):
    defect: float
    angle_defined: bool


def al_kashi_defect(a_pt, b_pt, c_pt):
    """Law-of-cosines defect c^2 - a^2 - b^2 + 2ab cos(angle at C); the
    angle at C is the Euclidean angle between the logs of the two sides.

    Non-negative (up to roundoff) in this non-positively curved space.
    When A or B coincides with C the angle is undefined: the cos term is
    zeroed and the result flagged.
    """
    c_len = dist(a_pt, b_pt)
    a_len = dist(b_pt, c_pt)
    b_len = dist(a_pt, c_pt)
    if a_len < VERTEX_SEP_TOL or b_len < VERTEX_SEP_TOL:
        return TriangleDefect(c_len**2 - a_len**2 - b_len**2, False)
    la = rel_log(c_pt, a_pt)
    lb = rel_log(c_pt, b_pt)
    cos_angle = re_inner(la, lb) / (frob(la) * frob(lb))
    cos_angle = min(1.0, max(-1.0, cos_angle))
    return TriangleDefect(
        c_len**2 - a_len**2 - b_len**2 + 2.0 * a_len * b_len * cos_angle, True
    )


def geodesic_gap_profile(g1, g2, samples):
    """Distances between two geodesics at evenly spaced parameters; the
    profile is convex for constant-speed geodesics."""
    if samples < 3:
        raise ShapeError("need at least 3 samples")
    if g1.start.shape != g2.start.shape:
        raise ShapeError("geodesics live in different dimensions")
    ts = [i / (samples - 1) for i in range(samples)]
    return [dist(g1(t), g2(t)) for t in ts]
