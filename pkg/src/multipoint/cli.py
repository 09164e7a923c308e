"""Command-line interface.

Subcommands: decompose, realize, lci-solve, and verify
{cuntz, resolvent, kernel, roundtrip}. Inputs and outputs use the JSON
payloads from the serialize module. Exit codes: 0 success, 2 unparseable
input, 3 violated precondition (poles, degeneracy), 4 tolerance failure.
Reports repeat the tolerances they were checked against, and fixed seeds
make reruns byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import serialize
from .decompose import decompose_polynomial, decompose_rational
from .errors import PreconditionError, ToleranceError
from .kernels import default_grid, factor_kernel, psd_check, verify_kernel_identity
from .lci import lci_particular, lci_solve, verify_lci
from .operators import verify_cuntz, verify_resolvent_identity
from .poly import Polynomial
from .realization import is_nilpotent, realize
from .suites import run_all

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_TOLERANCE = 4

# Module defaults surfaced as flags.
DEFAULT_TOLS = {
    "decompose_polynomial": 1e-8,
    "decompose_rational": 1e-7,
    "realize": 1e-7,
    "lci": 1e-9,
    "cuntz": 1e-10,
    "resolvent": 1e-7,
    "kernel": 1e-9,
}


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _manifest(command: str, inputs: dict, tolerances: dict, seed) -> dict:
    return {
        "command": command,
        "inputs": {k: _digest(v) for k, v in inputs.items() if v},
        "tolerances": tolerances,
        "seed": seed,
    }


def _emit(args, lines: list[str], manifest: dict, payload: dict) -> None:
    for line in lines:
        print(line)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize.dumps({"manifest": manifest, "report": payload}))


def _load(path: str):
    try:
        return serialize.load_path(path)
    except (OSError, json.JSONDecodeError) as exc:
        raise serialize.FormatError(f"cannot read {path}: {exc}") from exc


def cmd_decompose(args) -> int:
    f = serialize.function_from_json(_load(args.f))
    nodes = serialize.nodes_from_json(_load(args.nodes))
    if isinstance(f, Polynomial):
        tol = args.tol if args.tol is not None else DEFAULT_TOLS["decompose_polynomial"]
        d = decompose_polynomial(f, nodes)
    else:
        tol = args.tol if args.tol is not None else DEFAULT_TOLS["decompose_rational"]
        d = decompose_rational(f, nodes)
    manifest = _manifest("decompose", {"f": args.f, "nodes": args.nodes},
                         {"reconstruction": tol}, args.seed)
    payload = {
        "decomposition": serialize.decomposition_to_json(d),
        "residual": d.residual,
        "tolerance": tol,
    }
    ok = d.residual <= tol
    lines = [
        f"decomposition kind: {d.kind}",
        f"components: {nodes.total_degree}",
        f"reconstruction residual: {d.residual:.6e} (tolerance {tol:.1e})",
        "status: " + ("ok" if ok else "tolerance exceeded"),
    ]
    if d.kind == "polynomial":
        for j, comp in enumerate(d.components):
            lines.insert(2 + j, f"  F[{j}] = {comp}")
    _emit(args, lines, manifest, payload)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_realize(args) -> int:
    f = serialize.function_from_json(_load(args.f))
    nodes = serialize.nodes_from_json(_load(args.nodes))
    tol = args.tol if args.tol is not None else DEFAULT_TOLS["realize"]
    real = realize(f, nodes)
    manifest = _manifest("realize", {"f": args.f, "nodes": args.nodes},
                         {"fidelity": tol}, args.seed)
    nil = is_nilpotent(real)
    payload = {
        "realization": serialize.realization_to_json(real),
        "fidelity_residual": real.fidelity_residual,
        "nilpotent": nil,
        "tolerance": tol,
    }
    ok = real.fidelity_residual <= tol
    lines = [
        f"state dimension m = {real.state_dim}",
        f"value shape: {real.r} x {real.s}",
        f"nilpotent: {'yes' if nil else 'no'}",
        f"fidelity residual: {real.fidelity_residual:.6e} (tolerance {tol:.1e})",
        "status: " + ("ok" if ok else "tolerance exceeded"),
    ]
    _emit(args, lines, manifest, payload)
    return EXIT_OK if ok else EXIT_TOLERANCE


def cmd_lci_solve(args) -> int:
    prob = serialize.problem_from_json(_load(args.problem))
    tol = args.tol if args.tol is not None else DEFAULT_TOLS["lci"]
    inputs = {"problem": args.problem}
    if args.g:
        inputs["g"] = args.g
        parameter = serialize.parameter_from_json(_load(args.g))
        solution = lci_solve(prob, parameter)
        residual = verify_lci(solution, prob)
        if solution.is_polynomial():
            expanded = solution.to_polynomial()
            payload_solution = serialize.poly_to_json(expanded)
        else:
            expanded = solution.to_rational()
            payload_solution = serialize.rational_to_json(expanded)
        label = "solution"
    else:
        expanded = lci_particular(prob)
        residual = verify_lci(expanded, prob)
        payload_solution = serialize.poly_to_json(expanded)
        label = "particular solution"
    manifest = _manifest("lci-solve", inputs, {"constraint": tol}, args.seed)
    payload = {
        "solution": payload_solution,
        "constraint_residual": residual,
        "tolerance": tol,
    }
    ok = residual <= tol
    lines = [
        f"{label}: {expanded}",
        f"constraint residual: {residual:.6e} (tolerance {tol:.1e})",
        "status: " + ("ok" if ok else "tolerance exceeded"),
    ]
    _emit(args, lines, manifest, payload)
    return EXIT_OK if ok else EXIT_TOLERANCE


def _report_payload(reports) -> list[dict]:
    return [
        {
            "name": r.name,
            "max_residual": r.max_residual,
            "samples": r.samples,
            "tolerance": r.tolerance,
            "passed": r.passed,
        }
        for r in reports
    ]


def cmd_verify_cuntz(args) -> int:
    nodes = serialize.nodes_from_json(_load(args.nodes))
    tol = args.tol if args.tol is not None else DEFAULT_TOLS["cuntz"]
    report = verify_cuntz(nodes, args.maxdeg, tol=tol)
    manifest = _manifest("verify cuntz", {"nodes": args.nodes},
                         {"cuntz": tol}, args.seed)
    _emit(args, [report.line()], manifest, {"reports": _report_payload([report])})
    return EXIT_OK if report.passed else EXIT_TOLERANCE


def cmd_verify_resolvent(args) -> int:
    nodes = serialize.nodes_from_json(_load(args.nodes))
    f = serialize.function_from_json(_load(args.f))
    tol = args.tol if args.tol is not None else DEFAULT_TOLS["resolvent"]
    report = verify_resolvent_identity(f, args.alpha, args.beta, nodes,
                                       samples=args.samples, tol=tol,
                                       seed=args.seed or 0)
    manifest = _manifest("verify resolvent", {"nodes": args.nodes, "f": args.f},
                         {"resolvent": tol}, args.seed)
    _emit(args, [report.line()], manifest, {"reports": _report_payload([report])})
    return EXIT_OK if report.passed else EXIT_TOLERANCE


def cmd_verify_kernel(args) -> int:
    kernel = serialize.kernel_from_json(_load(args.kernel))
    nodes = serialize.nodes_from_json(_load(args.nodes))
    tol = args.tol if args.tol is not None else DEFAULT_TOLS["kernel"]
    factor = factor_kernel(kernel, nodes)
    grid = default_grid(nodes)
    reports = [
        verify_kernel_identity(kernel, factor, grid, tol=tol),
        psd_check(factor, grid, tol=tol),
    ]
    manifest = _manifest("verify kernel", {"kernel": args.kernel, "nodes": args.nodes},
                         {"kernel": tol}, args.seed)
    _emit(args, [r.line() for r in reports], manifest,
          {"reports": _report_payload(reports)})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_TOLERANCE


def cmd_verify_roundtrip(args) -> int:
    seed = args.seed or 0
    reports = run_all(seed)
    manifest = _manifest("verify roundtrip", {}, {r.name: r.tolerance for r in reports},
                         seed)
    _emit(args, [r.line() for r in reports], manifest,
          {"reports": _report_payload(reports)})
    return EXIT_OK if all(r.passed for r in reports) else EXIT_TOLERANCE


def _add_common(sub, *, seed_default=None):
    sub.add_argument("--tol", type=float, default=None,
                     help="override the module's default tolerance")
    sub.add_argument("--seed", type=int, default=seed_default,
                     help="seed for randomized checks")
    sub.add_argument("--out", default=None,
                     help="write a structured JSON report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multipoint",
        description="Decompose analytic functions over a node set, realize "
                    "rational matrices, solve linear combination interpolation, "
                    "and run the verification suites.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("decompose", help="decompose a function over a node set")
    p.add_argument("--f", required=True, help="function JSON (polynomial or rational)")
    p.add_argument("--nodes", required=True, help="node set JSON")
    _add_common(p)
    p.set_defaults(handler=cmd_decompose)

    p = subs.add_parser("realize", help="build the state-space realization")
    p.add_argument("--f", required=True, help="rational function/matrix JSON")
    p.add_argument("--nodes", required=True, help="node set JSON")
    _add_common(p)
    p.set_defaults(handler=cmd_realize)

    p = subs.add_parser("lci-solve", help="solve a linear combination interpolation problem")
    p.add_argument("--problem", required=True, help="problem JSON (nodes, a, c)")
    p.add_argument("--g", default=None, help="free parameter JSON (list of components)")
    _add_common(p)
    p.set_defaults(handler=cmd_lci_solve)

    v = subs.add_parser("verify", help="run a verification suite")
    vsubs = v.add_subparsers(dest="suite", required=True)

    p = vsubs.add_parser("cuntz", help="composition/extraction operator relations")
    p.add_argument("--nodes", required=True)
    p.add_argument("--maxdeg", type=int, default=12)
    _add_common(p)
    p.set_defaults(handler=cmd_verify_cuntz)

    p = vsubs.add_parser("resolvent", help="resolvent identity on a rational function")
    p.add_argument("--nodes", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--alpha", type=complex, required=True)
    p.add_argument("--beta", type=complex, required=True)
    p.add_argument("--samples", type=int, default=20)
    _add_common(p, seed_default=0)
    p.set_defaults(handler=cmd_verify_resolvent)

    p = vsubs.add_parser("kernel", help="kernel factorization identity and positivity")
    p.add_argument("--kernel", required=True)
    p.add_argument("--nodes", required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_verify_kernel)

    p = vsubs.add_parser("roundtrip", help="all randomized property suites")
    _add_common(p, seed_default=0)
    p.set_defaults(handler=cmd_verify_roundtrip)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except serialize.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ToleranceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
