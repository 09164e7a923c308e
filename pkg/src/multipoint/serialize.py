"""JSON serialization for every value the CLI reads or writes.

Complex numbers are [re, im] pairs; polynomials are {"coeffs": [...]}
ascending; matrices carry "rows"/"cols"/"entries" row-major; node sets
are lists of {"w": [re, im], "mu": k}. Rational functions add "num" and
"den" (matrices: "nums" row-major over one "den").
"""

from __future__ import annotations

import json

import numpy as np

from .decompose import Decomposition
from .lci import LCIProblem
from .kernels import FiniteRankKernel
from .nodes import NodeSet
from .poly import Polynomial
from .rational import RationalFunction, RationalMatrix
from .realization import Realization


class FormatError(ValueError):
    """Input JSON does not match any expected payload shape."""


def _pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _unpair(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise FormatError(f"expected [re, im], got {v!r}")


def poly_to_json(p: Polynomial) -> dict:
    return {"coeffs": [_pair(c) for c in p.coeffs]}


def poly_from_json(obj) -> Polynomial:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise FormatError("polynomial payload needs a 'coeffs' field")
    return Polynomial([_unpair(c) for c in obj["coeffs"]])


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.atleast_2d(np.asarray(m, dtype=complex))
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "entries": [_pair(c) for c in m.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = [_unpair(c) for c in obj["entries"]]
    except (KeyError, TypeError) as exc:
        raise FormatError("matrix payload needs 'rows', 'cols', 'entries'") from exc
    if len(entries) != rows * cols:
        raise FormatError("matrix entry count does not match rows*cols")
    return np.array(entries, dtype=complex).reshape(rows, cols)


def nodes_to_json(nodes: NodeSet) -> list:
    return [{"w": _pair(w), "mu": mu} for w, mu in nodes.entries]


def nodes_from_json(obj) -> NodeSet:
    if not isinstance(obj, list):
        raise FormatError("node set payload must be a list of {'w', 'mu'}")
    try:
        return NodeSet(tuple((_unpair(e["w"]), int(e.get("mu", 1))) for e in obj))
    except (KeyError, TypeError) as exc:
        raise FormatError("node entries need 'w': [re, im] and integer 'mu'") from exc


def rational_to_json(f: RationalFunction) -> dict:
    return {"num": poly_to_json(f.num), "den": poly_to_json(f.den)}


def rational_matrix_to_json(f: RationalMatrix) -> dict:
    r, s = f.shape
    return {
        "rows": r,
        "cols": s,
        "nums": [poly_to_json(f.nums[i, j]) for i in range(r) for j in range(s)],
        "den": poly_to_json(f.den),
    }


def function_from_json(obj):
    """Polynomial, RationalFunction, or RationalMatrix, by payload shape."""
    if not isinstance(obj, dict):
        raise FormatError("function payload must be an object")
    if "coeffs" in obj:
        return poly_from_json(obj)
    if "num" in obj:
        den = poly_from_json(obj["den"]) if "den" in obj else Polynomial.one()
        return RationalFunction(poly_from_json(obj["num"]), den)
    if "nums" in obj:
        try:
            rows, cols = int(obj["rows"]), int(obj["cols"])
            polys = [poly_from_json(p) for p in obj["nums"]]
        except (KeyError, TypeError) as exc:
            raise FormatError("rational matrix needs 'rows', 'cols', 'nums', 'den'") from exc
        if len(polys) != rows * cols:
            raise FormatError("numerator count does not match rows*cols")
        nums = np.empty((rows, cols), dtype=object)
        for i in range(rows):
            for j in range(cols):
                nums[i, j] = polys[i * cols + j]
        den = poly_from_json(obj["den"]) if "den" in obj else Polynomial.one()
        return RationalMatrix(nums, den)
    raise FormatError("function payload needs 'coeffs', 'num'/'den', or 'nums'")


def realization_to_json(real: Realization) -> dict:
    return {
        "nodes": nodes_to_json(real.nodes),
        "r": real.r,
        "s": real.s,
        "m": real.state_dim,
        "A": matrix_to_json(real.A),
        "B": matrix_to_json(real.B.reshape(real.state_dim, real.s)),
        "C": matrix_to_json(real.C),
    }


def realization_from_json(obj) -> Realization:
    try:
        nodes = nodes_from_json(obj["nodes"])
        r, s, m = int(obj["r"]), int(obj["s"]), int(obj["m"])
        A = matrix_from_json(obj["A"]).reshape(m, m)
        B = matrix_from_json(obj["B"]).reshape(m, s)
        C = matrix_from_json(obj["C"]).reshape(r * nodes.total_degree, m)
    except (KeyError, TypeError) as exc:
        raise FormatError("realization payload needs nodes, r, s, m, A, B, C") from exc
    return Realization(nodes, A, B, C, r, s)


def decomposition_to_json(d: Decomposition) -> dict:
    out = {"nodes": nodes_to_json(d.nodes), "kind": d.kind}
    if d.kind == "polynomial":
        out["F"] = [poly_to_json(c) for c in d.components]
    else:
        out["F"] = realization_to_json(d.realization)
    return out


def decomposition_from_json(obj) -> Decomposition:
    try:
        nodes = nodes_from_json(obj["nodes"])
        kind = obj["kind"]
        payload = obj["F"]
    except (KeyError, TypeError) as exc:
        raise FormatError("decomposition payload needs 'nodes', 'kind', 'F'") from exc
    if kind == "polynomial":
        comps = tuple(poly_from_json(p) for p in payload)
        if len(comps) != nodes.total_degree:
            raise FormatError("component count does not match the node set")
        return Decomposition(nodes, "polynomial", (1, 1), components=comps)
    if kind == "rational":
        real = realization_from_json(payload)
        return Decomposition(nodes, "rational", (real.r, real.s), realization=real)
    raise FormatError(f"unknown decomposition kind {kind!r}")


def problem_to_json(prob: LCIProblem) -> dict:
    return {
        "nodes": nodes_to_json(prob.nodes),
        "a": [_pair(v) for v in prob.a],
        "c": _pair(prob.c),
    }


def problem_from_json(obj) -> LCIProblem:
    try:
        nodes = nodes_from_json(obj["nodes"])
        a = [_unpair(v) for v in obj["a"]]
        c = _unpair(obj["c"])
    except (KeyError, TypeError) as exc:
        raise FormatError("problem payload needs 'nodes', 'a', 'c'") from exc
    return LCIProblem(nodes, a, c)


def kernel_to_json(kernel: FiniteRankKernel) -> dict:
    return {"C": [poly_to_json(p) for p in kernel.factors]}


def kernel_from_json(obj) -> FiniteRankKernel:
    try:
        return FiniteRankKernel([poly_from_json(p) for p in obj["C"]])
    except (KeyError, TypeError) as exc:
        raise FormatError("kernel payload needs a 'C' list of polynomials") from exc


def parameter_from_json(obj) -> list:
    """Free-parameter vector for the interpolation family: a list of functions."""
    if isinstance(obj, dict) and "components" in obj:
        obj = obj["components"]
    if not isinstance(obj, list):
        raise FormatError("parameter payload must be a list of polynomials/rationals")
    return [function_from_json(p) for p in obj]


def dumps(obj) -> str:
    """Deterministic JSON rendering (sorted keys, fixed separators)."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_path(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
