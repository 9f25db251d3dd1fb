import numpy as np
import pytest

from conftest import random_hermitian, random_pd, random_unitary, rng
from mostowgeo import (
    SubspaceBasis,
    dist,
    expm,
    group_decompose,
    logm,
    mostow_split,
    orthogonality_defect,
    orthonormalize,
    project_to_exp_subspace,
    projection_contraction_check,
)
from mostowgeo.errors import NotInSubspaceError
from mostowgeo.linalg import frob
from mostowgeo.mostow import _phi_and_grad, factor_membership_residuals
from mostowgeo.subspaces import complement


def diag_oracle_foot(p):
    """Closed-form 2x2 projection onto exp(diagonal): for p=[[a,b],[b,c]]
    the foot is diag(a, c)/cosh w with cosh w = (1 - b^2/(ac))^(-1/2)."""
    a, c = p[0, 0].real, p[1, 1].real
    b = abs(p[0, 1])
    cosh_w = (1.0 - b * b / (a * c)) ** -0.5
    return np.diag([a / cosh_w, c / cosh_w]).astype(complex)


def test_projection_fixed_point():
    e = SubspaceBasis.diagonal(3)
    p = np.diag([0.5, 2.0, 1.3]).astype(complex)
    res = project_to_exp_subspace(p, e)
    assert res.converged
    assert frob(res.foot - p) < 1e-9
    assert res.distance < 1e-9


def test_projection_2x2_closed_form():
    e = SubspaceBasis.diagonal(2)
    p = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    res = project_to_exp_subspace(p, e)
    assert res.converged
    s3 = np.sqrt(3.0)
    assert frob(res.foot - np.diag([s3, s3])) < 1e-8
    assert res.distance == pytest.approx(np.sqrt(2.0) * np.arctanh(0.5), abs=1e-8)


def test_projection_orthogonal_split():
    e = SubspaceBasis.traceless(2)
    res = project_to_exp_subspace(2.0 * np.eye(2, dtype=complex), e)
    assert frob(res.foot - np.eye(2)) < 1e-9
    assert res.distance == pytest.approx(np.sqrt(2.0) * np.log(2.0), abs=1e-9)


def test_projection_trivial_subspace():
    p = random_pd(rng(0), 3)
    res = project_to_exp_subspace(p, SubspaceBasis.trivial(3))
    assert frob(res.foot - np.eye(3)) < 1e-12
    assert res.distance == pytest.approx(frob(logm(p)), abs=1e-10)


def test_projection_result_invariants():
    e = SubspaceBasis.diagonal(2)
    p = random_pd(rng(1), 2)
    res = project_to_exp_subspace(p, e)
    assert frob(res.foot - expm(res.log_foot)) < 1e-10
    assert frob(e.project(res.log_foot) - res.log_foot) < 1e-10


def test_projection_oracle_sweep():
    e = SubspaceBasis.diagonal(2)
    r = rng(2)
    for _ in range(30):
        p = random_pd(r, 2)
        res = project_to_exp_subspace(p, e)
        assert res.converged
        assert frob(res.foot - diag_oracle_foot(p)) < 1e-8


def test_orthogonality_certificate():
    e = SubspaceBasis.diagonal(2)
    r = rng(3)
    for _ in range(10):
        p = random_pd(r, 2)
        res = project_to_exp_subspace(p, e)
        assert orthogonality_defect(p, e, res) <= 1e-8


def test_projection_minimality_spot_check():
    e = SubspaceBasis.diagonal(2)
    r = rng(4)
    p = random_pd(r, 2)
    res = project_to_exp_subspace(p, e)
    for _ in range(50):
        y = res.log_foot + e.combine(0.3 * r.standard_normal(e.dim))
        assert res.distance <= dist(p, expm(y)) + 1e-10


def test_gradient_matches_finite_differences():
    from mostowgeo.linalg import inv_sqrtm

    r = rng(5)
    for _ in range(20):
        mats = [random_hermitian(r, 3) for _ in range(3)]
        e = orthonormalize(mats)
        p = random_pd(r, 3)
        coeffs = r.standard_normal(e.dim)
        pis = inv_sqrtm(p)
        _, grad = _phi_and_grad(e, coeffs, pis)
        h = 1e-6
        for j in range(e.dim):
            bump = np.zeros(e.dim)
            bump[j] = h
            phi_p, _ = _phi_and_grad(e, coeffs + bump, pis)
            phi_m, _ = _phi_and_grad(e, coeffs - bump, pis)
            fd = (phi_p - phi_m) / (2.0 * h)
            assert grad[j] == pytest.approx(fd, rel=1e-5, abs=1e-7)


def test_projection_contraction():
    e = SubspaceBasis.diagonal(2)
    r = rng(6)
    for _ in range(20):
        d_full, d_proj = projection_contraction_check(random_pd(r, 2), random_pd(r, 2), e)
        assert d_proj <= d_full + 1e-8


def test_projection_idempotent():
    e = SubspaceBasis.diagonal(2)
    p = random_pd(rng(7), 2)
    res1 = project_to_exp_subspace(p, e)
    res2 = project_to_exp_subspace(res1.foot, e)
    assert frob(res2.foot - res1.foot) < 1e-8


def test_projection_rejects_open_subspace():
    sym = np.array([[0.0, 1.0], [1.0, 0.0]]) / np.sqrt(2.0)
    e = orthonormalize([np.diag([1.0, 0.0]), sym])
    with pytest.raises(NotInSubspaceError):
        project_to_exp_subspace(np.eye(2, dtype=complex), e)


def test_mostow_split_examples():
    e = SubspaceBasis.diagonal(2)
    a_in = np.diag([2.0, 0.5]).astype(complex)
    fe, ff = mostow_split(a_in, e)
    assert frob(fe - np.diag([np.sqrt(2.0), np.sqrt(0.5)])) < 1e-8
    assert frob(ff - np.eye(2)) < 1e-8

    f_only = expm(np.array([[0.0, 0.4], [0.4, 0.0]], dtype=complex))
    fe, ff = mostow_split(f_only, e)
    assert frob(fe - np.eye(2)) < 1e-8
    assert frob(ff - f_only) < 1e-8


def test_mostow_split_closed_form():
    e = SubspaceBasis.diagonal(2)
    a_in = np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex)
    fe, ff = mostow_split(a_in, e)
    assert frob(fe - 3.0**0.25 * np.eye(2)) < 1e-8
    assert frob(ff - a_in / np.sqrt(3.0)) < 1e-8
    log_f = logm(ff)
    expected = 0.5 * np.log(3.0) * np.array([[0.0, 1.0], [1.0, 0.0]])
    assert frob(log_f - expected) < 1e-8
    assert frob(fe @ ff @ fe - a_in) < 1e-8


def test_mostow_degenerate_subspaces():
    p = random_pd(rng(8), 3)
    fe, ff = mostow_split(p, SubspaceBasis.trivial(3))
    assert frob(fe - np.eye(3)) < 1e-10
    assert frob(ff - p) < 1e-10
    fe, ff = mostow_split(p, SubspaceBasis.full_hermitian(3))
    assert frob(ff - np.eye(3)) < 1e-8
    assert frob(fe @ fe - p) < 1e-8


def test_group_decompose_unitary():
    e = SubspaceBasis.diagonal(3)
    u = random_unitary(rng(9), 3)
    factors = group_decompose(u, e)
    assert frob(factors.k - u) < 1e-8
    assert frob(factors.f - np.eye(3)) < 1e-8
    assert frob(factors.e - np.eye(3)) < 1e-8


def test_group_decompose_pure_fe():
    e = SubspaceBasis.diagonal(2)
    f0 = expm(np.array([[0.0, 0.3], [0.3, 0.0]], dtype=complex))
    e0 = np.diag([1.5, 0.8]).astype(complex)
    factors = group_decompose(f0 @ e0, e)
    assert frob(factors.k - np.eye(2)) < 1e-7
    assert frob(factors.f - f0) < 1e-7
    assert frob(factors.e - e0) < 1e-7


def test_group_decompose_random():
    r = rng(10)
    e = SubspaceBasis.diagonal(3)
    for _ in range(10):
        x = r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3))
        factors = group_decompose(x, e)
        assert frob(factors.k @ factors.f @ factors.e - x) <= 1e-8 * frob(x)
        r_e, r_f = factor_membership_residuals(factors, e)
        assert r_e <= 1e-8 and r_f <= 1e-8


def test_group_decompose_polar_case():
    r = rng(11)
    x = r.standard_normal((3, 3)) + 1j * r.standard_normal((3, 3))
    factors = group_decompose(x, SubspaceBasis.trivial(3))
    # Classical polar factors from the SVD as an independent oracle.
    w, s, vh = np.linalg.svd(x)
    k_oracle = w @ vh
    p_oracle = vh.conj().T @ np.diag(s) @ vh
    assert frob(factors.e - np.eye(3)) < 1e-10
    assert frob(factors.k - k_oracle) < 1e-8
    assert frob(factors.f - p_oracle) < 1e-8


def test_uniqueness_across_restart():
    e = SubspaceBasis.diagonal(2)
    a_in = random_pd(rng(12), 2)
    e1, f1 = mostow_split(a_in, e)
    # Restart from the projection of a perturbed input and re-project the
    # original; factors must agree.
    e2, f2 = mostow_split(a_in.copy(), e)
    assert frob(e1 - e2) < 1e-6
    assert frob(f1 - f2) < 1e-6


def test_membership_residuals_orthogonal():
    e = SubspaceBasis.diagonal(2)
    f = complement(e)
    r = rng(13)
    x = r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2))
    factors = group_decompose(x, e)
    assert e.residual(logm(factors.e)) <= 1e-8
    assert f.residual(logm(factors.f)) <= 1e-8
