"""Batch command-line front end.

Subcommands: decompose, project, geodesic, dist, orbit-retract, verify.
All I/O is JSON (see io module for the formats).  Exit codes: 0 success,
1 validation or invariant failure, 2 non-convergence, 3 I/O or parse
error.  Errors go to stderr as a machine-readable JSON object.
"""

import argparse
import json
import sys

from . import io, manifold, mostow, orbits, verify
from .errors import MostowGeoError, NonConvergenceError, NumericalFailure, ValidationError
from .linalg import frob
from .subspaces import orthonormalize

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NO_CONVERGENCE = 2
EXIT_IO = 3


def _load_subspace_basis(path):
    mats = io.load_subspace(path)
    if not mats:
        raise ValidationError("subspace file is empty")
    return orthonormalize(mats)


def _cmd_decompose(args):
    x = io.load_matrix(args.matrix)
    e_basis = _load_subspace_basis(args.subspace)
    factors = mostow.group_decompose(x, e_basis, tol=args.tol, max_iter=args.max_iter)
    r_e, r_f = mostow.factor_membership_residuals(factors, e_basis)
    return {
        "k": io.matrix_to_obj(factors.k),
        "f": io.matrix_to_obj(factors.f),
        "e": io.matrix_to_obj(factors.e),
        "residuals": {
            "recomposition": frob(factors.k @ factors.f @ factors.e - x) / max(frob(x), 1.0),
            "log_e_outside_E": r_e,
            "log_f_inside_E": r_f,
        },
    }


def _cmd_project(args):
    p = io.load_matrix(args.matrix)
    e_basis = _load_subspace_basis(args.subspace)
    result = mostow.project_to_exp_subspace(p, e_basis, tol=args.tol, max_iter=args.max_iter)
    out = {
        "foot": io.matrix_to_obj(result.foot),
        "log_foot": io.matrix_to_obj(result.log_foot),
        "distance": result.distance,
        "iterations": result.iterations,
        "grad_norm": result.grad_norm,
        "converged": result.converged,
        "orthogonality_defect": mostow.orthogonality_defect(p, e_basis, result),
    }
    if not result.converged:
        raise NonConvergenceError("projection did not converge", result=out)
    return out


def _cmd_geodesic(args):
    p = io.load_matrix(getattr(args, "from"))
    q = io.load_matrix(args.to)
    return io.matrix_to_obj(manifold.geodesic_eval(p, q, args.t))


def _cmd_dist(args):
    p = io.load_matrix(getattr(args, "from"))
    q = io.load_matrix(args.to)
    return manifold.dist(p, q)


def _cmd_orbit_retract(args):
    g = io.load_matrix(args.group)
    base, derivation = io.load_frame(args.frame)
    if args.derivation is not None:
        derivation = io.load_matrix(args.derivation)
    if derivation is not None:
        frame = orbits.frame_from_derivation(derivation)
        ret = orbits.affine_orbit_retract(g, frame, tol=args.tol, max_iter=args.max_iter)
        y = orbits.affine_action(g, base * 0.0, derivation)
        y_back = orbits.affine_action(orbits.expm_i(ret.a), ret.z, derivation)
    else:
        frame = orbits.isotropy_split(base)
        ret = orbits.orbit_retract(g, frame, tol=args.tol, max_iter=args.max_iter)
        y = orbits.adjoint_action(g, base)
        y_back = orbits.adjoint_action(orbits.expm_i(ret.a), ret.z)
    return {
        "z": io.matrix_to_obj(ret.z),
        "a": io.matrix_to_obj(ret.a),
        "u": io.matrix_to_obj(ret.u),
        "recomposition_residual": frob(y - y_back) / max(frob(y), 1.0),
    }


def _cmd_verify(args):
    report = verify.run_suites([args.suite], args.n, args.trials, args.seed)
    if not report["passed"]:
        raise ValidationError("verification suite failed: " + io.dumps(report))
    return report


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mostow-geo",
        description="Riemannian geometry of PD matrices and Mostow decomposition",
    )
    parser.add_argument("--output", default=None, help="write result JSON here (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_opts(p):
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--max-iter", type=int, default=500)

    p = sub.add_parser("decompose", help="Mostow factorization x = k f e")
    p.add_argument("--matrix", required=True)
    p.add_argument("--subspace", required=True)
    add_opts(p)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("project", help="orthogonal projection onto exp E")
    p.add_argument("--matrix", required=True)
    p.add_argument("--subspace", required=True)
    add_opts(p)
    p.set_defaults(fn=_cmd_project)

    p = sub.add_parser("geodesic", help="evaluate the geodesic between two PD points")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.add_argument("--t", type=float, default=0.5)
    p.set_defaults(fn=_cmd_geodesic)

    p = sub.add_parser("dist", help="geodesic distance between two PD points")
    p.add_argument("--from", required=True)
    p.add_argument("--to", required=True)
    p.set_defaults(fn=_cmd_dist)

    p = sub.add_parser("orbit-retract", help="retract a complex orbit point onto the compact orbit")
    p.add_argument("--group", required=True)
    p.add_argument("--frame", required=True)
    p.add_argument("--derivation", default=None)
    add_opts(p)
    p.set_defaults(fn=_cmd_orbit_retract)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=["curvature", "triangles", "convexity", "mostow", "orbits", "all"],
    )
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_verify)
    return parser


def _emit_error(exc, code):
    sys.stderr.write(io.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
    return code


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_IO if exc.code else EXIT_OK
    try:
        result = args.fn(args)
    except NonConvergenceError as exc:
        return _emit_error(exc, EXIT_NO_CONVERGENCE)
    except NumericalFailure as exc:
        return _emit_error(exc, EXIT_NO_CONVERGENCE)
    except (OSError, json.JSONDecodeError) as exc:
        return _emit_error(exc, EXIT_IO)
    except MostowGeoError as exc:
        return _emit_error(exc, EXIT_INVALID)
    if isinstance(result, float):
        text = format(result, ".17g")
    else:
        text = io.dumps(result)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return EXIT_OK


def main():
    raise SystemExit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
