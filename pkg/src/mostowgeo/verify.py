"""Seeded randomized property suites behind ``mostow-geo verify``.

Random data follows a fixed recipe so runs are reproducible: Hermitian
matrices have i.i.d. standard-normal real and imaginary parts,
symmetrized, then scaled down to Frobenius norm at most 3; PD points
are exponentials of such matrices; group elements are normalized to
determinant 1.  Each trial draws from its own seed substream, so
fan-out across threads cannot change the aggregated result.
"""

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import manifold, mostow, orbits
from .errors import DegeneratePlaneError
from .linalg import eig_hermitian, expm, frob, herm, skew
from .subspaces import SubspaceBasis

_SUITE_TAGS = {"curvature": 1, "triangles": 2, "convexity": 3, "mostow": 4, "orbits": 5}

CURVATURE_TOL = 1e-12
TRIANGLE_TOL = 1e-9
CONVEXITY_TOL = 1e-8
MOSTOW_TOL = 1e-8
ORBIT_TOL = 1e-8
SPECTRUM_TOL = 1e-9


def _rng(seed, suite, trial):
    return np.random.default_rng(np.random.SeedSequence([int(seed), _SUITE_TAGS[suite], trial]))


def random_hermitian(rng, n, max_norm=3.0):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = herm(m)
    nrm = frob(h)
    if nrm > max_norm:
        h = h * (max_norm / nrm)
    return h


def random_pd(rng, n):
    return expm(random_hermitian(rng, n))


def random_su_algebra(rng, n):
    """Traceless skew-Hermitian with the same scaling recipe."""
    h = random_hermitian(rng, n)
    k = 1j * (h - np.trace(h) / n * np.eye(n))
    return skew(k)


def random_sl(rng, n):
    """Determinant-1 complex matrix (Gaussian, det-normalized)."""
    while True:
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        d = np.linalg.det(g)
        if abs(d) > 1e-6:
            return g * d ** (-1.0 / n)


def _map_trials(fn, trials):
    threads = int(os.environ.get("MOSTOW_GEO_THREADS", "0") or "0")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, range(trials)))
    return [fn(t) for t in range(trials)]


def suite_curvature(n, trials, seed):
    def trial(t):
        rng = _rng(seed, "curvature", t)
        x = random_hermitian(rng, n)
        y = random_hermitian(rng, n)
        try:
            return manifold.sectional_curvature_at_identity(x, y)
        except DegeneratePlaneError:
            return -np.inf
    worst = max(_map_trials(trial, trials))
    return {
        "suite": "curvature",
        "n": n,
        "trials": trials,
        "max_curvature": float(worst),
        "passed": bool(worst <= CURVATURE_TOL),
    }


def suite_triangles(n, trials, seed):
    def trial(t):
        rng = _rng(seed, "triangles", t)
        a = random_pd(rng, n)
        b = random_pd(rng, n)
        c = random_pd(rng, n)
        res = manifold.al_kashi_defect(a, b, c)
        return res.defect if res.angle_defined else np.inf
    worst = min(_map_trials(trial, trials))
    return {
        "suite": "triangles",
        "n": n,
        "trials": trials,
        "min_defect": float(worst),
        "passed": bool(worst >= -TRIANGLE_TOL),
    }


def suite_convexity(n, trials, seed, samples=11):
    def trial(t):
        rng = _rng(seed, "convexity", t)
        g1 = manifold.geodesic_between(random_pd(rng, n), random_pd(rng, n))
        g2 = manifold.geodesic_between(random_pd(rng, n), random_pd(rng, n))
        prof = manifold.geodesic_gap_profile(g1, g2, samples)
        second = [prof[i - 1] - 2.0 * prof[i] + prof[i + 1] for i in range(1, samples - 1)]
        return min(second)
    worst = min(_map_trials(trial, trials))
    return {
        "suite": "convexity",
        "n": n,
        "trials": trials,
        "min_second_difference": float(worst),
        "passed": bool(worst >= -CONVEXITY_TOL),
    }


def _mostow_subspaces(n):
    return [
        SubspaceBasis.diagonal(n),
        SubspaceBasis.traceless(n),
        SubspaceBasis.trivial(n),
    ]


def suite_mostow(n, trials, seed):
    subspaces = _mostow_subspaces(n)

    def trial(t):
        rng = _rng(seed, "mostow", t)
        e_basis = subspaces[t % len(subspaces)]
        x = random_sl(rng, n)
        factors = mostow.group_decompose(x, e_basis)
        recomp = frob(factors.k @ factors.f @ factors.e - x) / max(frob(x), 1.0)
        r_e, r_f = mostow.factor_membership_residuals(factors, e_basis)
        return max(recomp, r_e, r_f)
    worst = max(_map_trials(trial, trials))
    return {
        "suite": "mostow",
        "n": n,
        "trials": trials,
        "max_residual": float(worst),
        "passed": bool(worst <= MOSTOW_TOL),
    }


def suite_orbits(n, trials, seed):
    def trial(t):
        rng = _rng(seed, "orbits", t)
        x = random_su_algebra(rng, n)
        frame = orbits.isotropy_split(x)
        g = random_sl(rng, n)
        ret = orbits.orbit_retract(g, frame)
        y = orbits.adjoint_action(g, x)
        y_back = orbits.adjoint_action(orbits.expm_i(ret.a), ret.z)
        recomp = frob(y - y_back) / max(frob(y), 1.0)
        spec_x = eig_hermitian(herm(1j * x)).eigenvalues
        spec_z = eig_hermitian(herm(1j * ret.z)).eigenvalues
        spec_drift = float(np.max(np.abs(spec_x - spec_z)))
        # Spectrum drift carries its own tighter tolerance; rescale so a
        # single threshold covers both.
        return max(recomp, spec_drift * (ORBIT_TOL / SPECTRUM_TOL))
    worst = max(_map_trials(trial, trials))
    return {
        "suite": "orbits",
        "n": n,
        "trials": trials,
        "max_residual": float(worst),
        "passed": bool(worst <= ORBIT_TOL),
    }


SUITES = {
    "curvature": suite_curvature,
    "triangles": suite_triangles,
    "convexity": suite_convexity,
    "mostow": suite_mostow,
    "orbits": suite_orbits,
}


def run_suites(names, n, trials, seed):
    if names == ["all"]:
        names = list(SUITES)
    reports = [SUITES[name](n, trials, seed) for name in names]
    return {"reports": reports, "passed": bool(all(r["passed"] for r in reports))}
