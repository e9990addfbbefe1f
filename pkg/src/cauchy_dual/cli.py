"""Command-line interface. Every subcommand writes one JSON document to stdout.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import models, registry
from .blocks import check_block_operator
from .classify import classify
from .dual import ROUTES, dual
from .errors import CauchyDualError
from .io import block_from_json, kernel_spec_from_json, load_json, load_matrix, matrix_to_json
from .linalg import DEFAULT_CONFIG, ToleranceConfig, fro, rel_residual, svd
from .pinv import penrose_residuals, pinv, polar

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_TOL_FLAGS = ("rank_safety", "identity_tol", "subspace_tol", "orth_tol", "recon_tol")


def _default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _emit(doc, pretty: bool):
    json.dump(doc, sys.stdout, indent=2 if pretty else None, sort_keys=pretty, default=_default)
    sys.stdout.write("\n")


def _size_pairs(items) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"--size expects key=value, got {item!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise ValueError(f"--size {key} must be an integer, got {value!r}") from None
    return out


def _config(args) -> ToleranceConfig:
    overrides = {k: getattr(args, k) for k in _TOL_FLAGS if getattr(args, k, None) is not None}
    return ToleranceConfig(**{**DEFAULT_CONFIG.as_dict(), **overrides})


# -- subcommands ----------------------------------------------------------------


def cmd_pinv(args, cfg):
    A = load_matrix(args.matrix)
    X = pinv(A, cfg)
    return {
        "pinv": matrix_to_json(X),
        "numerical_rank": svd(A, cfg).numerical_rank,
        "penrose": penrose_residuals(A, X).__dict__,
    }, EXIT_OK


def cmd_dual(args, cfg):
    comp = dual(load_matrix(args.matrix), args.route, cfg)
    return {
        "route": comp.route,
        "dual": matrix_to_json(comp.dual),
        "cross_route_residual": comp.cross_route_residual,
        "route_residuals": comp.route_residuals,
        "certificates": comp.certificates,
        "failed_routes": comp.failed_routes,
    }, EXIT_OK


def cmd_classify(args, cfg):
    A = load_matrix(args.matrix)
    return {"shape": list(A.shape), **classify(A, cfg).as_dict()}, EXIT_OK


def cmd_polar(args, cfg):
    A = load_matrix(args.matrix)
    pd = polar(A, cfg)
    return {
        "U": matrix_to_json(pd.U_T),
        "abs": matrix_to_json(pd.absT),
        "initial_projector": matrix_to_json(pd.initial_projector.matrix),
        "final_projector": matrix_to_json(pd.final_projector.matrix),
        "residuals": pd.residuals(A),
    }, EXIT_OK


def cmd_verify(args, cfg):
    rep = registry.run_theorem(args.theorem, args.trials, args.seed, _size_pairs(args.size), cfg, args.jobs)
    return rep.as_dict(), EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify_all(args, cfg):
    reports = registry.run_all(args.trials, args.seed, cfg, _size_pairs(args.size), args.jobs)
    ok = all(r.passed for r in reports)
    doc = {
        "passed": ok,
        "theorems": len(reports),
        "failed": [r.theorem_id for r in reports if not r.passed],
        "wall_time": sum(r.wall_time for r in reports),
        "reports": [r.as_dict() for r in reports],
    }
    return doc, EXIT_OK if ok else EXIT_FAIL


def cmd_search(args, cfg):
    doc = registry.search_counterexample(
        args.property,
        args.trials,
        args.seed,
        _size_pairs(args.size),
        args.restrict,
        cfg,
        dim=args.dim,
        rank=args.rank,
        threshold=args.threshold,
    )
    return doc, EXIT_OK


def cmd_example_shift(args, cfg):
    S = models.weighted_shift(args.n)
    expected = models.shift_dual_closed_form(args.n)
    pattern = expected != 0
    comp = dual(S.matrix, "adjoint_pinv", cfg)
    W = comp.dual
    return {
        "N": args.n,
        "dual": matrix_to_json(W),
        "pattern_max_error": float(np.max(np.abs(W[pattern] - expected[pattern]))),
        "off_pattern_max": float(np.max(np.abs(W[~pattern]))),
        "cross_route_residual": comp.cross_route_residual,
        "square_norm": fro(S.matrix @ S.matrix),
        "dual_square_norm": fro(W @ W),
    }, EXIT_OK


def cmd_example_kernel(args, cfg):
    spec = kernel_spec_from_json(load_json(args.spec), str(args.spec))
    A, dec = models.nystrom(spec, cfg)
    doc = {
        "kernel": spec.kernel,
        "interval": [spec.a, spec.b],
        "m": spec.m,
        "rule": spec.rule,
        "eigenvalues": dec.eigenvalues[: args.top].tolist(),
    }
    if spec.kernel == "min" and (spec.a, spec.b) == (0.0, 1.0):
        exact = models.min_kernel_eigenvalues(np.arange(1, min(args.top, spec.m) + 1))
        doc["analytic_eigenvalues"] = exact.tolist()
        doc["relative_errors"] = (np.abs(dec.eigenvalues[: exact.size] - exact) / exact).tolist()
    if args.dual_shift is not None:
        k = args.dual_shift
        F = models.spectral_dual_shift(dec, k, cfg)
        lk = float(dec.eigenvalues[k - 1])
        dense = dual(A - lk * np.eye(spec.m), "adjoint_pinv", cfg).dual
        doc["dual_shift"] = {"k": k, "lambda_k": lk, "spectral_vs_dense": rel_residual(F, dense)}
        if args.emit_matrix:
            doc["dual_shift"]["matrix"] = matrix_to_json(F)
    return doc, EXIT_OK


def cmd_block(args, cfg):
    rep = check_block_operator(block_from_json(load_json(args.instance), str(args.instance)), cfg)
    return rep.as_dict(), EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # options shared by the root parser and every subcommand; SUPPRESS keeps a
    # subcommand default from clobbering a value given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent and sort JSON keys")
    for name in _TOL_FLAGS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=float, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="cauchy-dual", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(fn=fn)
        return sp

    for name, fn in (("pinv", cmd_pinv), ("classify", cmd_classify), ("polar", cmd_polar)):
        add(name, fn).add_argument("matrix", help="matrix JSON file")
    sp = add("dual", cmd_dual)
    sp.add_argument("matrix")
    sp.add_argument("--route", choices=ROUTES, default="adjoint_pinv")

    def campaign(sp, trials):
        sp.add_argument("--trials", type=int, default=trials)
        sp.add_argument("--seed", type=int, default=None, help=f"default: ${registry.SEED_ENV} or 0")
        sp.add_argument("--size", action="append", metavar="KEY=VALUE", help=f"keys: {', '.join(registry.DEFAULT_SIZE)}")

    sp = add("verify", cmd_verify)
    sp.add_argument("--theorem", required=True)
    campaign(sp, registry.DEFAULT_TRIALS)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("verify-all", cmd_verify_all)
    campaign(sp, registry.DEFAULT_TRIALS)
    sp.add_argument("--jobs", type=int, default=1)

    sp = add("search", cmd_search)
    sp.add_argument("--property", required=True, choices=registry.SEARCH_PROPERTIES)
    sp.add_argument("--restrict", choices=("normal_ep", "range_matched"), default=None)
    campaign(sp, 1000)
    sp.add_argument("--dim", type=int, default=None)
    sp.add_argument("--rank", type=int, default=None)
    sp.add_argument("--threshold", type=float, default=0.1)

    ex = add("example", None).add_subparsers(dest="example", required=True)
    sp = ex.add_parser("shift", parents=[common])
    sp.set_defaults(fn=cmd_example_shift)
    sp.add_argument("--n", type=int, default=50)
    sp = ex.add_parser("kernel", parents=[common])
    sp.set_defaults(fn=cmd_example_kernel)
    sp.add_argument("--spec", required=True)
    sp.add_argument("--dual-shift", type=int, default=None)
    sp.add_argument("--top", type=int, default=10, help="number of eigenvalues to print")
    sp.add_argument("--emit-matrix", action="store_true")

    sp = add("block", cmd_block)
    sp.add_argument("instance", help="block instance JSON file")
    return p


def _error(kind: str, message: str) -> int:
    json.dump({"error": kind, "message": message}, sys.stderr)
    sys.stderr.write("\n")
    return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        cfg = _config(args)
        doc, code = args.fn(args, cfg)
    except OSError as exc:
        return _error("io", str(exc))
    except registry.UnknownTheoremError as exc:
        return _error("usage", str(exc))
    except (CauchyDualError, ValueError) as exc:
        return _error(type(exc).__name__, str(exc))
    try:
        _emit(doc, getattr(args, "pretty", False))
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at interpreter exit
        sys.stdout = open(os.devnull, "w")
    return code


if __name__ == "__main__":
    sys.exit(main())
