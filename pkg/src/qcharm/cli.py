"""Command-line surface: curve constants, explicit bounds, scenario
verification, and the scenario catalog.

Exit codes: 0 all checks pass; 1 an inequality check failed; 2
configuration error; 3 numerical non-convergence or NaN in a report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import report as report_mod
from .bounds import BoundInputs, lipschitz_bound, mori_constant
from .curves import (
    arc_length_reparametrize,
    build_curve,
    circle,
    compute_curve_constants,
    ellipse,
)
from .errors import QcharmError, RefinementError
from .poisson import QuadratureSpec
from .scenarios import VerifyConfig, make_scenario, scenario_catalog, verify

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _write_report(payload: dict, kind: str, out: str | None, fmt: str, csv_rows=None) -> int:
    try:
        if fmt == "json":
            text = report_mod.dumps(payload)
        else:
            text = report_mod.dumps_csv(csv_rows if csv_rows is not None else [payload])
    except report_mod.NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if fmt == "json":
        report_mod.validate_report(report_mod.sanitize(payload), kind)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _curve_from_args(args) -> tuple:
    if args.curve == "circle":
        gen = circle(args.radius)
        desc = {"kind": "circle", "radius": args.radius}
    elif args.curve == "ellipse":
        gen = ellipse(args.a, args.b)
        desc = {"kind": "ellipse", "a": args.a, "b": args.b}
    elif args.curve == "csv":
        if not args.samples:
            raise QcharmError("--curve csv requires --samples PATH")
        data = np.loadtxt(args.samples, delimiter=",")
        if data.ndim != 2 or data.shape[1] < 3:
            raise QcharmError("sample CSV needs columns t, x_1, ..., x_n")
        gen = (data[:, 0], data[:, 1:])
        desc = {"kind": "csv", "path": args.samples, "rows": int(data.shape[0])}
    else:
        raise QcharmError(f"unknown curve {args.curve!r}")
    return gen, desc


def cmd_constants(args) -> int:
    gen, desc = _curve_from_args(args)
    curve = build_curve(gen, args.nodes)
    arc = arc_length_reparametrize(curve)
    constants = compute_curve_constants(arc, mu=args.mu, refine=args.refine)
    payload = {
        "schema_version": report_mod.SCHEMA_VERSION,
        "command": "constants",
        "curve": desc | {"nodes": args.nodes, "dimension": curve.dim},
        "constants": {
            "length": constants.length,
            "chord_arc": constants.chord_arc,
            "holder_constant": constants.holder_constant,
            "holder_exponent": constants.holder_exponent,
            "max_curvature": constants.max_curvature,
            "refinement_depth": constants.refinement_depth,
            "converged": constants.converged,
        },
    }
    flat = {k: v for k, v in payload["constants"].items() if k != "converged"}
    flags = {f"converged_{k}": v for k, v in constants.converged.items()}
    rows = [payload["curve"] | flat | flags]
    code = _write_report(payload, "constants", args.out, args.format, rows)
    if code:
        return code
    return EXIT_OK if constants.all_converged() else EXIT_NUMERIC


def cmd_bound(args) -> int:
    inputs = BoundInputs(
        K=args.K,
        mu=args.mu,
        upsilon=args.upsilon,
        lam=args.lam,
        c_gamma=args.c_gamma,
        length=args.length,
        area=args.area,
    )
    result = lipschitz_bound(inputs)
    growth = mori_constant(inputs.K, inputs.lam, inputs.upsilon, inputs.effective_area, variant=args.variant)
    checks = [
        {
            "name": "alpha_in_range",
            "lhs": result.alpha,
            "rhs": 1.0,
            "margin": 1.0 - result.alpha,
            "passed": 0.0 < result.alpha <= 1.0,
        },
        {
            "name": "bound_positive",
            "lhs": 0.0,
            "rhs": result.log_value if math.isfinite(result.log_value) else None,
            "margin": None if not math.isfinite(result.log_value) else result.log_value,
            "passed": inputs.c_gamma == 0.0 or result.log_value > float("-inf"),
        },
    ]
    payload = {
        "schema_version": report_mod.SCHEMA_VERSION,
        "command": "bound",
        "inputs": {
            "K": inputs.K,
            "mu": inputs.mu,
            "upsilon": inputs.upsilon,
            "lambda": inputs.lam,
            "c_gamma": inputs.c_gamma,
            "length": inputs.length,
            "area": inputs.effective_area,
        },
        "alpha": result.alpha,
        "mori_constant": growth,
        "mori_variant": args.variant,
        "log_L": result.log_value if inputs.c_gamma > 0 else None,
        "L": result.value,
        "checks": checks,
    }
    rows = [payload["inputs"] | {"alpha": result.alpha, "mori_constant": growth, "log_L": payload["log_L"], "L": result.value}]
    code = _write_report(payload, "bound", args.out, args.format, rows)
    if code:
        return code
    return EXIT_OK if all(c["passed"] for c in checks) else EXIT_VIOLATION


def _scenario_from_args(args):
    kwargs = {}
    if args.scenario == "affine":
        kwargs["c"] = args.c
    elif args.scenario == "conformal_poly":
        kwargs["eps"] = args.epsilon
        kwargs["m"] = args.order
    elif args.scenario == "harmonic_graph":
        kwargs["eps"] = args.epsilon
        kwargs["m"] = args.order
    elif args.scenario == "fourier":
        if not args.coeffs:
            raise QcharmError("fourier scenario requires --coeffs FILE.json")
        spec = json.loads(Path(args.coeffs).read_text())
        kwargs["cos_coeffs"] = spec["cos_coeffs"]
        kwargs["sin_coeffs"] = spec["sin_coeffs"]
    return make_scenario(args.scenario, node_count=args.nodes, **kwargs)


def cmd_verify(args) -> int:
    scenario = _scenario_from_args(args)
    config = VerifyConfig(
        node_count=args.nodes,
        mu=args.mu,
        quad=QuadratureSpec(m=args.quad_nodes, delta=args.delta),
        refine=args.refine,
        tol=args.tol,
        upsilon=args.upsilon,
        workers=args.workers,
    )
    rep = verify(scenario, config)
    checks = [
        {"name": r.name, "lhs": r.lhs, "rhs": r.rhs, "margin": r.margin, "passed": r.passed} for r in rep.checks
    ]
    payload = {
        "schema_version": report_mod.SCHEMA_VERSION,
        "command": "verify",
        "scenario": rep.scenario,
        "params": rep.params,
        "constants": {
            "length": rep.length,
            "chord_arc": rep.constants.chord_arc,
            "holder_constant": rep.constants.holder_constant,
            "holder_exponent": rep.constants.holder_exponent,
            "max_curvature": rep.constants.max_curvature,
            "converged": rep.constants.converged,
        },
        "area": rep.area,
        "upsilon": rep.upsilon,
        "dilatation": {"exact": rep.k_exact, "estimate": rep.k_estimate},
        "sup_gradient": {
            "raw": rep.sup_grad_raw,
            "extrapolated": rep.sup_grad_extrapolated,
            "exact": rep.sup_grad_exact,
        },
        "alpha": rep.alpha,
        "mori_constant": rep.mori_growth,
        "log_L": rep.bound.log_value,
        "L": rep.bound.value,
        "quadrature": {"m": rep.quad_m, "delta": rep.quad_delta},
        "checks": checks,
        "worst_margin": rep.worst_margin,
        "all_passed": rep.all_passed,
    }
    code = _write_report(payload, "verify", args.out, args.format, checks)
    if code:
        return code
    return EXIT_OK if rep.all_passed else EXIT_VIOLATION


def cmd_scenarios(args) -> int:
    payload = {
        "schema_version": report_mod.SCHEMA_VERSION,
        "command": "scenarios",
        "catalog": scenario_catalog(),
    }
    return _write_report(payload, "scenarios", args.out, args.format, payload["catalog"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcharm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="report path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--config", default=None, help="JSON config file with the same field names")

    p = sub.add_parser("constants", help="geometric constants of a curve")
    p.add_argument("--curve", choices=("circle", "ellipse", "csv"), default="circle")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.2)
    p.add_argument("--b", type=float, default=0.8)
    p.add_argument("--samples", default=None, help="CSV with columns t, x_1..x_n")
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--refine", type=int, default=40)
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("bound", help="explicit gradient bound from constants")
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--upsilon", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--c-gamma", dest="c_gamma", type=float, required=True)
    p.add_argument("--length", type=float, required=True)
    p.add_argument("--area", type=float, default=None)
    p.add_argument("--variant", choices=("statement", "proof"), default="statement")
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run the inequality suite on a scenario")
    p.add_argument("--scenario", choices=("identity", "affine", "conformal_poly", "harmonic_graph", "fourier"), required=True)
    p.add_argument("--c", type=float, default=0.2, help="affine coefficient")
    p.add_argument("--epsilon", type=float, default=0.3)
    p.add_argument("--order", type=int, default=2, help="harmonic order m")
    p.add_argument("--coeffs", default=None, help="JSON file with cos_coeffs/sin_coeffs")
    p.add_argument("--nodes", type=int, default=512)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--quad-nodes", dest="quad_nodes", type=int, default=256)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--refine", type=int, default=40)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--upsilon", type=float, default=None)
    p.add_argument("--workers", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scenarios", help="list the scenario catalog")
    common(p)
    p.set_defaults(func=cmd_scenarios)

    return parser


def _apply_config_file(parser, argv):
    """--config FILE supplies defaults under the same names; flags win."""
    if "--config" not in argv:
        return argv
    idx = argv.index("--config")
    try:
        path = argv[idx + 1]
    except IndexError:
        raise QcharmError("--config needs a path")
    try:
        overrides = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise QcharmError(f"unreadable config {path!r}: {exc}")
    if not isinstance(overrides, dict):
        raise QcharmError("config file must hold a JSON object")
    out = list(argv)
    for key, value in overrides.items():
        flag = "--" + key.replace("_", "-")
        if flag in argv:
            continue  # explicit flags win
        if isinstance(value, bool):
            raise QcharmError(f"boolean config key {key!r} is not a CLI flag")
        out.extend([flag, str(value)])
    return out


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config_file(parser, argv)
        args = parser.parse_args(argv)
    except QcharmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except report_mod.NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except RefinementError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except QcharmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
